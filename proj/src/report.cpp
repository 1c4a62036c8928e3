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

#include "tcsfid/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "tcsfid/closed_form.hpp"
#include "tcsfid/gaussian_overlap.hpp"

namespace tcsfid {

namespace {

constexpr double kRoundOffAboveOne = 1e-12;
constexpr double kBuresConsistency = 1e-14;

struct RouteEntry {
    Route route;
    std::string_view name;
};

// Sorted by name.
// Adding +0 turns -0 into +0 so signed zeros never reach the output.
double unsigned_zero(double value) { return value + 0.0; }

constexpr std::array<RouteEntry, 4> kRoutes{{
    {Route::kClosedForm, "closed-form"},
    {Route::kGaussianOverlap, "gaussian-overlap"},
    {Route::kOracle, "oracle"},
    {Route::kPurificationOptimized, "purification-optimized"},
}};

}  // namespace

const std::vector<Route>& all_routes() {
    static const std::vector<Route> routes = [] {
        std::vector<Route> out;
        for (const auto& entry : kRoutes) {
            out.push_back(entry.route);
        }
        return out;
    }();
    return routes;
}

std::string_view route_name(Route route) {
    for (const auto& entry : kRoutes) {
        if (entry.route == route) {
            return entry.name;
        }
    }
    return "unknown";
}

Route parse_route(std::string_view name) {
    for (const auto& entry : kRoutes) {
        if (entry.name == name) {
            return entry.route;
        }
    }
    throw std::invalid_argument("unknown route: " + std::string(name));
}

FidelityReport make_report(Route route, double fidelity) {
    if (fidelity > 1.0 && fidelity <= 1.0 + kRoundOffAboveOne) {
        fidelity = 1.0;
    }
    if (!(fidelity > 0.0 && fidelity <= 1.0)) {
        throw std::logic_error(std::string(route_name(route)) +
                               " route produced a fidelity outside (0, 1]: " +
                               format_double(fidelity));
    }
    FidelityReport report{route, fidelity, bures_distance(fidelity), std::nullopt, std::nullopt, {}};
    const double expected = std::sqrt(2.0 * (1.0 - std::sqrt(fidelity)));
    if (std::abs(report.bures_distance - expected) > kBuresConsistency) {
        throw std::logic_error("Bures distance inconsistent with fidelity");
    }
    return report;
}

FidelityReport compute_route(Route route, const DisplacedThermalState& s1,
                             const DisplacedThermalState& s2, const RouteOptions& options) {
    switch (route) {
        case Route::kClosedForm:
            return make_report(route, tcs_fidelity(s1, s2).value());

        case Route::kGaussianOverlap: {
            const Complex beta = optimal_beta(s1, s2);
            const PurificationSpec reference(s1.thermal(), s1.displacement(), Complex{});
            const PurificationSpec optimal(s2.thermal(), s2.displacement(), beta);
            const OverlapResult overlap = pure_overlap(purification_gaussian_form(reference),
                                                       purification_gaussian_form(optimal));
            FidelityReport report = make_report(route, overlap.value);
            report.beta_star = beta;
            report.diagnostics["log_value"] = overlap.log_value;
            return report;
        }

        case Route::kOracle: {
            const int n = options.cutoff;
            const fock::UhlmannResult result = fock::uhlmann_fidelity_detailed(
                fock::displaced_thermal_matrix(s1, n), fock::displaced_thermal_matrix(s2, n));
            FidelityReport report = make_report(route, result.value);
            report.cutoff = n;
            report.diagnostics["tail"] = std::max(fock::truncation_tail(s1.mean_occupancy(), n),
                                                  fock::truncation_tail(s2.mean_occupancy(), n));
            report.diagnostics["clipped_eigenvalue"] = result.clipped_magnitude;
            return report;
        }

        case Route::kPurificationOptimized: {
            const OptimizationResult result = maximize_overlap(s1, s2, options.optimizer);
            FidelityReport report = make_report(route, result.value);
            report.beta_star = result.beta_star;
            report.diagnostics["converged"] = result.converged ? 1.0 : 0.0;
            report.diagnostics["iterations"] = result.iterations;
            report.diagnostics["gradient_norm"] = result.gradient_norm;
            report.diagnostics["beta_deviation"] = std::abs(result.beta_star - optimal_beta(s1, s2));
            return report;
        }
    }
    throw std::invalid_argument("unknown route");
}

double max_pairwise_discrepancy(const std::vector<FidelityReport>& reports) {
    double worst = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (std::size_t j = i + 1; j < reports.size(); ++j) {
            worst = std::max(worst, std::abs(reports[i].fidelity - reports[j].fidelity));
        }
    }
    return worst;
}

std::string format_double(double value) {
    if (value == 0.0) {
        return "0";
    }
    std::array<char, 64> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format double");
    }
    return std::string(buffer.data(), end);
}

std::string format_complex(Complex value) {
    return format_double(value.real()) + "," + format_double(value.imag());
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    // from_chars rejects a leading '+', which users will type.
    if (first != last && *first == '+') {
        ++first;
        if (first != last && *first == '-') {
            first = last;
        }
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

Complex parse_complex(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
        throw std::invalid_argument("complex values use the form re,im: '" + std::string(text) +
                                    "'");
    }
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

nlohmann::ordered_json complex_to_json(Complex value) {
    return {{"re", unsigned_zero(value.real())}, {"im", unsigned_zero(value.imag())}};
}

nlohmann::ordered_json to_json(const FidelityReport& report) {
    nlohmann::ordered_json out;
    out["route"] = route_name(report.route);
    out["fidelity"] = report.fidelity;
    out["bures_distance"] = report.bures_distance;
    out["beta_star"] = report.beta_star ? complex_to_json(*report.beta_star) : nlohmann::ordered_json();
    out["cutoff"] = report.cutoff ? nlohmann::ordered_json(*report.cutoff) : nlohmann::ordered_json();
    out["diagnostics"] = nlohmann::ordered_json::object();
    for (const auto& [label, value] : report.diagnostics) {
        out["diagnostics"][label] = value;
    }
    return out;
}

nlohmann::ordered_json to_json(const GaussianForm& form) {
    nlohmann::ordered_json cov = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < 4; ++j) {
            row.push_back(unsigned_zero(form.covariance(i, j)));
        }
        cov.push_back(row);
    }
    nlohmann::ordered_json disp = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        disp.push_back(unsigned_zero(form.displacement(i)));
    }
    return {{"cov", cov}, {"disp", disp}};
}

}  // namespace tcsfid
