// Copyright 2026 The tcsfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcsfid/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcsfid/closed_form.hpp"
#include "tcsfid/fock_oracle.hpp"
#include "tcsfid/optimizer.hpp"
#include "tcsfid/report.hpp"

namespace tcsfid::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kJsonSchema = 1;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv };

std::vector<std::string> split(std::string_view text, char separator) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(separator, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

int parse_int(const std::string& text, const char* flag) {
    const double value = parse_double(text);
    if (value != std::floor(value) || value < 1 || value > 1e6) {
        throw UsageError(std::string(flag) + " expects a positive integer");
    }
    return static_cast<int>(value);
}

// --nX / --temp-ratioX / --alphaX for one state.
struct StateFlags {
    explicit StateFlags(std::string suffix_) : suffix(std::move(suffix_)) {}

    std::string suffix;
    std::string n;
    std::string temp_ratio;
    std::string alpha = "0,0";
    CLI::Option* n_opt = nullptr;
    CLI::Option* ratio_opt = nullptr;

    void attach(CLI::App* cmd) {
        n_opt = cmd->add_option("--n" + suffix, n, "mean occupancy");
        ratio_opt = cmd->add_option("--temp-ratio" + suffix, temp_ratio,
                                    "hbar*omega/(k_B*T); --n" + suffix + " wins if both given");
        cmd->add_option("--alpha" + suffix, alpha, "displacement as re,im")->capture_default_str();
    }

    bool given() const { return n_opt->count() > 0 || ratio_opt->count() > 0; }

    double mean_occupancy(std::ostream& err) const {
        if (n_opt->count() > 0) {
            if (ratio_opt->count() > 0) {
                err << "warning: --n" << suffix << " takes precedence over --temp-ratio" << suffix
                    << "\n";
            }
            return parse_double(n);
        }
        if (ratio_opt->count() > 0) {
            return mean_occupancy_from_ratio(parse_double(temp_ratio));
        }
        throw UsageError("one of --n" + suffix + " or --temp-ratio" + suffix + " is required");
    }

    DisplacedThermalState resolve(std::ostream& err) const {
        return {mean_occupancy(err), parse_complex(alpha)};
    }
};

struct OptimizerFlags {
    std::string method = "newton";
    std::string max_iters = "200";
    std::string initial_beta = "0,0";

    void attach(CLI::App* cmd) {
        cmd->add_option("--method", method, "newton or nelder-mead")->capture_default_str();
        cmd->add_option("--max-iters", max_iters, "optimizer iteration limit")
            ->capture_default_str();
        cmd->add_option("--initial-beta", initial_beta, "optimizer start as re,im")
            ->capture_default_str();
    }

    OptimizerConfig config() const {
        OptimizerConfig config;
        config.method = parse_optimizer_method(method);
        config.max_iters = parse_int(max_iters, "--max-iters");
        config.initial_beta = parse_complex(initial_beta);
        return config;
    }
};

struct FormatFlags {
    bool json = false;
    bool csv = false;

    void attach(CLI::App* cmd) {
        auto* j = cmd->add_flag("--json", json, "JSON output");
        cmd->add_flag("--csv", csv, "CSV output")->excludes(j);
    }

    Format resolve(Format fallback) const {
        if (json) return Format::kJson;
        if (csv) return Format::kCsv;
        return fallback;
    }
};

Json state_json(const DisplacedThermalState& s) {
    Json j;
    j["n"] = s.mean_occupancy();
    j["alpha"] = complex_to_json(s.displacement());
    return j;
}

Json header(std::string_view command) {
    Json j;
    j["schema"] = kJsonSchema;
    j["command"] = command;
    return j;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string optional_complex_csv(const std::optional<Complex>& z) {
    return z ? format_complex(*z) : std::string(",");
}

bool report_converged(const FidelityReport& report) {
    const auto it = report.diagnostics.find("converged");
    return it == report.diagnostics.end() || it->second == 1.0;
}

// ---------------------------------------------------------------------------
// fidelity

struct FidelityCommand {
    StateFlags s1{"1"};
    StateFlags s2{"2"};
    OptimizerFlags optimizer;
    FormatFlags format;
    std::string route = "closed-form";
    bool all = false;
    std::string cutoff = std::to_string(fock::kDefaultCutoff);
    std::string tol = "1e-6";
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("fidelity", "fidelity of two displaced thermal states");
        s1.attach(cmd);
        s2.attach(cmd);
        optimizer.attach(cmd);
        format.attach(cmd);
        auto* r = cmd->add_option("--route", route,
                                  "closed-form, gaussian-overlap, oracle or purification-optimized")
                      ->capture_default_str();
        cmd->add_flag("--all-routes", all, "evaluate every route and their discrepancy")
            ->excludes(r);
        cmd->add_option("--cutoff", cutoff, "Fock cutoff for the oracle route")
            ->capture_default_str();
        cmd->add_option("--tol", tol, "cross-route discrepancy tolerance")->capture_default_str();
    }

    int run(std::ostream& out, std::ostream& err) const {
        const DisplacedThermalState a = s1.resolve(err);
        const DisplacedThermalState b = s2.resolve(err);
        RouteOptions options;
        options.cutoff = parse_int(cutoff, "--cutoff");
        options.optimizer = optimizer.config();
        const double tolerance = parse_double(tol);

        std::vector<FidelityReport> reports;
        if (all) {
            for (Route r : all_routes()) {
                reports.push_back(compute_route(r, a, b, options));
            }
        } else {
            reports.push_back(compute_route(parse_route(route), a, b, options));
        }

        const bool converged = std::all_of(reports.begin(), reports.end(), report_converged);
        const double discrepancy = max_pairwise_discrepancy(reports);
        const bool within = !all || discrepancy <= tolerance;
        const char* status = !converged ? "not_converged" : within ? "ok" : "tolerance_exceeded";

        if (format.resolve(Format::kJson) == Format::kCsv) {
            out << "route,fidelity,bures_distance,re_beta_star,im_beta_star,cutoff\n";
            for (const auto& r : reports) {
                out << route_name(r.route) << ',' << format_double(r.fidelity) << ','
                    << format_double(r.bures_distance) << ',' << optional_complex_csv(r.beta_star)
                    << ',' << (r.cutoff ? std::to_string(*r.cutoff) : "") << '\n';
            }
            if (all) {
                out << "# max_pairwise_discrepancy=" << format_double(discrepancy) << '\n';
            }
            out << "# status=" << status << '\n';
        } else {
            Json j = header("fidelity");
            j["state1"] = state_json(a);
            j["state2"] = state_json(b);
            if (all) {
                j["reports"] = Json::array();
                for (const auto& r : reports) {
                    j["reports"].push_back(to_json(r));
                }
                j["max_pairwise_discrepancy"] = discrepancy;
                j["tolerance"] = tolerance;
            } else {
                j.update(to_json(reports.front()));
            }
            j["status"] = status;
            write_json(out, j);
        }
        return converged && within ? kSuccess : kNumericalFailure;
    }
};

// ---------------------------------------------------------------------------
// optimize

struct OptimizeCommand {
    StateFlags s1{"1"};
    StateFlags s2{"2"};
    OptimizerFlags optimizer;
    FormatFlags format;
    std::string tol = "1e-8";
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("optimize", "maximize the purification overlap over beta");
        s1.attach(cmd);
        s2.attach(cmd);
        optimizer.attach(cmd);
        format.attach(cmd);
        cmd->add_option("--tol", tol, "step tolerance on beta")->capture_default_str();
    }

    int run(std::ostream& out, std::ostream& err) const {
        const DisplacedThermalState a = s1.resolve(err);
        const DisplacedThermalState b = s2.resolve(err);
        RouteOptions options;
        options.optimizer = optimizer.config();
        options.optimizer.beta_tol = parse_double(tol);

        const FidelityReport report = compute_route(Route::kPurificationOptimized, a, b, options);
        const Complex analytic = optimal_beta(a, b);
        const bool converged = report_converged(report);
        const char* status = converged ? "ok" : "not_converged";

        if (format.resolve(Format::kJson) == Format::kCsv) {
            out << "route,fidelity,bures_distance,re_beta_star,im_beta_star,re_analytic_beta,"
                   "im_analytic_beta,beta_deviation,iterations,converged\n";
            out << route_name(report.route) << ',' << format_double(report.fidelity) << ','
                << format_double(report.bures_distance) << ','
                << optional_complex_csv(report.beta_star) << ',' << format_complex(analytic) << ','
                << format_double(report.diagnostics.at("beta_deviation")) << ','
                << format_double(report.diagnostics.at("iterations")) << ','
                << format_double(report.diagnostics.at("converged")) << '\n';
            out << "# status=" << status << '\n';
        } else {
            Json j = header("optimize");
            j["state1"] = state_json(a);
            j["state2"] = state_json(b);
            j.update(to_json(report));
            j["analytic_beta"] = complex_to_json(analytic);
            j["beta_deviation"] = report.diagnostics.at("beta_deviation");
            j["closed_form_fidelity"] = tcs_fidelity(a, b).value();
            j["method"] = to_string(options.optimizer.method);
            j["purifications"] = {
                {"reference",
                 to_json(purification_gaussian_form({a.thermal(), a.displacement(), Complex{}}))},
                {"optimal",
                 to_json(purification_gaussian_form({b.thermal(), b.displacement(), *report.beta_star}))},
            };
            j["status"] = status;
            write_json(out, j);
        }
        return converged ? kSuccess : kNumericalFailure;
    }
};

// ---------------------------------------------------------------------------
// bures

struct BuresCommand {
    StateFlags s1{"1"};
    StateFlags s2{"2"};
    FormatFlags format;
    std::string fidelity;
    CLI::Option* fidelity_opt = nullptr;
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("bures", "Bures distance from a fidelity or from two states");
        fidelity_opt = cmd->add_option("--fidelity", fidelity, "fidelity in (0, 1]");
        s1.attach(cmd);
        s2.attach(cmd);
        format.attach(cmd);
    }

    int run(std::ostream& out, std::ostream& err) const {
        double f = 0.0;
        if (fidelity_opt->count() > 0) {
            if (s1.given() || s2.given()) {
                throw UsageError("--fidelity cannot be combined with state flags");
            }
            f = parse_double(fidelity);
        } else {
            f = tcs_fidelity(s1.resolve(err), s2.resolve(err)).value();
        }
        const double distance = bures_distance(f);
        if (format.resolve(Format::kJson) == Format::kCsv) {
            out << "fidelity,bures_distance\n"
                << format_double(f) << ',' << format_double(distance) << '\n';
        } else {
            Json j = header("bures");
            j["fidelity"] = f;
            j["bures_distance"] = distance;
            write_json(out, j);
        }
        return kSuccess;
    }
};

// ---------------------------------------------------------------------------
// cf-grid

struct GridAxis {
    double min;
    double max;
    int count;

    double at(int i) const {
        return count == 1 ? min : min + (max - min) * static_cast<double>(i) / (count - 1);
    }
};

GridAxis parse_axis(const std::string& text, const char* flag) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw UsageError(std::string(flag) + " expects MIN,MAX,COUNT");
    }
    GridAxis axis{parse_double(parts[0]), parse_double(parts[1]), parse_int(parts[2], flag)};
    if (axis.min > axis.max || (axis.count == 1 && axis.min != axis.max)) {
        throw UsageError(std::string(flag) + " has an empty or inconsistent range");
    }
    return axis;
}

struct CfGridCommand {
    StateFlags state{""};
    std::string beta = "0,0";
    std::string l1 = "0,0,1";
    std::string l2 = "0,0,1";
    std::string oracle_check;
    CLI::Option* oracle_opt = nullptr;
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("cf-grid", "characteristic function of a purification on a grid");
        state.attach(cmd);
        cmd->add_option("--beta", beta, "mode-2 displacement as re,im")->capture_default_str();
        cmd->add_option("--l1", l1, "MIN,MAX,COUNT for Re and Im of lambda1")
            ->capture_default_str();
        cmd->add_option("--l2", l2, "MIN,MAX,COUNT for Re and Im of lambda2")
            ->capture_default_str();
        oracle_opt = cmd->add_option("--oracle-check", oracle_check,
                                     "compare with the truncated Fock purification at cutoff N");
        cmd->add_flag("--csv", "CSV output (the only format)");
    }

    int run(std::ostream& out, std::ostream& err) const {
        const DisplacedThermalState mode1 = state.resolve(err);
        const PurificationSpec spec(mode1.thermal(), mode1.displacement(), parse_complex(beta));
        const GridAxis a1 = parse_axis(l1, "--l1");
        const GridAxis a2 = parse_axis(l2, "--l2");

        std::optional<fock::TwoModeVector> vector;
        if (oracle_opt->count() > 0) {
            vector = fock::schmidt_purification(mode1, spec.beta(),
                                                parse_int(oracle_check, "--oracle-check"));
        }

        out << "re_l1,im_l1,re_l2,im_l2,re_chi,im_chi";
        if (vector) {
            out << ",re_chi_oracle,im_chi_oracle,abs_deviation";
        }
        out << '\n';

        double worst = 0.0;
        for (int i = 0; i < a1.count; ++i) {
            for (int j = 0; j < a1.count; ++j) {
                const Complex lambda1(a1.at(i), a1.at(j));
                for (int k = 0; k < a2.count; ++k) {
                    for (int l = 0; l < a2.count; ++l) {
                        const Complex lambda2(a2.at(k), a2.at(l));
                        const Complex chi = purification_cf(spec, lambda1, lambda2);
                        out << format_complex(lambda1) << ',' << format_complex(lambda2) << ','
                            << format_complex(chi);
                        if (vector) {
                            const Complex oracle =
                                fock::cf_of_two_mode_vector(*vector, lambda1, lambda2);
                            const double deviation = std::abs(oracle - chi);
                            worst = std::max(worst, deviation);
                            out << ',' << format_complex(oracle) << ',' << format_double(deviation);
                        }
                        out << '\n';
                    }
                }
            }
        }
        if (vector) {
            out << "# max_abs_deviation=" << format_double(worst) << '\n';
        }
        return kSuccess;
    }
};

// ---------------------------------------------------------------------------
// sweep

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    for (const auto& part : split(text, ',')) {
        values.push_back(parse_double(part));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> values;
    for (const auto& part : split(text, ';')) {
        values.push_back(parse_complex(part));
    }
    const auto less = [](Complex x, Complex y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    };
    std::sort(values.begin(), values.end(), less);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

struct SweepCommand {
    std::string n1 = "0";
    std::string n2 = "0";
    std::string alpha1 = "0,0";
    std::string alpha2 = "0,0";
    std::string routes = "closed-form";
    std::string cutoff = std::to_string(fock::kDefaultCutoff);
    std::string tol = "1e-6";
    OptimizerFlags optimizer;
    FormatFlags format;
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("sweep", "fidelity over a parameter grid");
        cmd->add_option("--n1", n1, "comma-separated occupancies")->capture_default_str();
        cmd->add_option("--n2", n2, "comma-separated occupancies")->capture_default_str();
        cmd->add_option("--alpha1", alpha1, "semicolon-separated re,im displacements")
            ->capture_default_str();
        cmd->add_option("--alpha2", alpha2, "semicolon-separated re,im displacements")
            ->capture_default_str();
        cmd->add_option("--routes", routes, "comma-separated routes, or 'all'")
            ->capture_default_str();
        cmd->add_option("--cutoff", cutoff, "Fock cutoff for the oracle route")
            ->capture_default_str();
        cmd->add_option("--tol", tol, "tolerance on the discrepancy against the closed form")
            ->capture_default_str();
        optimizer.attach(cmd);
        format.attach(cmd);
    }

    std::vector<Route> route_list() const {
        if (routes == "all") {
            return all_routes();
        }
        std::vector<Route> out;
        for (const auto& name : split(routes, ',')) {
            out.push_back(parse_route(name));
        }
        const auto by_name = [](Route x, Route y) { return route_name(x) < route_name(y); };
        std::sort(out.begin(), out.end(), by_name);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    int run(std::ostream& out, std::ostream& /*err*/) const {
        const auto n1s = parse_double_list(n1);
        const auto n2s = parse_double_list(n2);
        const auto a1s = parse_complex_list(alpha1);
        const auto a2s = parse_complex_list(alpha2);
        const auto route_set = route_list();
        RouteOptions options;
        options.cutoff = parse_int(cutoff, "--cutoff");
        options.optimizer = optimizer.config();
        const double tolerance = parse_double(tol);
        const Format fmt = format.resolve(Format::kCsv);

        Json rows = Json::array();
        if (fmt == Format::kCsv) {
            out << "n1,re_alpha1,im_alpha1,n2,re_alpha2,im_alpha2,route,fidelity,bures_distance,"
                   "discrepancy\n";
        }
        double worst = 0.0;
        bool converged = true;
        for (double n1v : n1s) {
            for (Complex a1v : a1s) {
                for (double n2v : n2s) {
                    for (Complex a2v : a2s) {
                        const DisplacedThermalState a(n1v, a1v);
                        const DisplacedThermalState b(n2v, a2v);
                        const double reference = tcs_fidelity(a, b).value();
                        for (Route r : route_set) {
                            const FidelityReport report = compute_route(r, a, b, options);
                            const double discrepancy = std::abs(report.fidelity - reference);
                            worst = std::max(worst, discrepancy);
                            converged = converged && report_converged(report);
                            if (fmt == Format::kCsv) {
                                out << format_double(n1v) << ',' << format_complex(a1v) << ','
                                    << format_double(n2v) << ',' << format_complex(a2v) << ','
                                    << route_name(r) << ',' << format_double(report.fidelity)
                                    << ',' << format_double(report.bures_distance) << ','
                                    << format_double(discrepancy) << '\n';
                            } else {
                                Json row;
                                row["n1"] = n1v;
                                row["alpha1"] = complex_to_json(a1v);
                                row["n2"] = n2v;
                                row["alpha2"] = complex_to_json(a2v);
                                row["route"] = route_name(r);
                                row["fidelity"] = report.fidelity;
                                row["bures_distance"] = report.bures_distance;
                                row["discrepancy"] = discrepancy;
                                rows.push_back(row);
                            }
                        }
                    }
                }
            }
        }
        const bool within = worst <= tolerance;
        const char* status = !converged ? "not_converged" : within ? "ok" : "tolerance_exceeded";
        if (fmt == Format::kCsv) {
            out << "# max_discrepancy=" << format_double(worst) << '\n';
            out << "# status=" << status << '\n';
        } else {
            Json j = header("sweep");
            j["rows"] = rows;
            j["max_discrepancy"] = worst;
            j["tolerance"] = tolerance;
            j["status"] = status;
            write_json(out, j);
        }
        return converged && within ? kSuccess : kNumericalFailure;
    }
};

void write_failure(std::ostream& out, const std::string& command, const std::string& message) {
    Json j = header(command);
    j["status"] = "error";
    j["message"] = message;
    write_json(out, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fidelity of displaced thermal states", "tcsfid"};
    app.require_subcommand(1);

    FidelityCommand fidelity;
    OptimizeCommand optimize;
    CfGridCommand cf_grid;
    SweepCommand sweep;
    BuresCommand bures;
    fidelity.attach(app);
    optimize.attach(app);
    cf_grid.attach(app);
    sweep.attach(app);
    bures.attach(app);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("tcsfid");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsageError;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        if (chosen == fidelity.cmd) return fidelity.run(out, err);
        if (chosen == optimize.cmd) return optimize.run(out, err);
        if (chosen == cf_grid.cmd) return cf_grid.run(out, err);
        if (chosen == sweep.cmd) return sweep.run(out, err);
        if (chosen == bures.cmd) return bures.run(out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::range_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        // Numerical failures (underflow, failed factorizations) and trapped
        // report invariant violations.
        err << "error: " << e.what() << "\n";
        write_failure(out, name, e.what());
        return kNumericalFailure;
    }
    return kUsageError;
}

}  // namespace tcsfid::cli
