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

#ifndef TCSFID_REPORT_HPP
#define TCSFID_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tcsfid/fock_oracle.hpp"
#include "tcsfid/optimizer.hpp"
#include "tcsfid/states.hpp"

namespace tcsfid {

/// Independent ways of computing the fidelity of two displaced thermal states.
enum class Route {
    // Closed-form product of thermal fidelity and displacement Gaussian.
    kClosedForm,
    // Overlap of the Gaussian forms of the reference and optimal purification.
    kGaussianOverlap,
    // Truncated Fock matrices through the Bures-Uhlmann trace formula.
    kOracle,
    // Numerical maximization of the purification overlap over beta.
    kPurificationOptimized,
};

/// All routes, ordered by name.
const std::vector<Route>& all_routes();

std::string_view route_name(Route route);

/// Throws std::invalid_argument for unknown names.
Route parse_route(std::string_view name);

struct FidelityReport {
    Route route;
    double fidelity;
    double bures_distance;
    std::optional<Complex> beta_star;
    std::optional<int> cutoff;
    std::map<std::string, double> diagnostics;
};

struct RouteOptions {
    int cutoff = fock::kDefaultCutoff;
    OptimizerConfig optimizer;
};

/// Builds a report and checks its invariants: 0 < fidelity <= 1 and
/// bures_distance consistent with fidelity. Values at most 1e-12 above 1
/// are round-off and are set to 1; anything else throws std::logic_error.
FidelityReport make_report(Route route, double fidelity);

/// Evaluates one route. The purification-optimized route records
/// diagnostics "converged" (0 or 1), "iterations", "gradient_norm" and
/// "beta_deviation"; the oracle route records "tail" and
/// "clipped_eigenvalue".
FidelityReport compute_route(Route route, const DisplacedThermalState& s1,
                             const DisplacedThermalState& s2, const RouteOptions& options = {});

/// Largest |F_i - F_j| over all pairs of reports.
double max_pairwise_discrepancy(const std::vector<FidelityReport>& reports);

/// Shortest decimal that round-trips to the same double; -0 prints as 0.
std::string format_double(double value);

/// "re,im" with format_double on each part.
std::string format_complex(Complex value);

/// Parses exactly "re,im" (no spaces). Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

/// Parses a full decimal number. Throws std::invalid_argument.
double parse_double(std::string_view text);

nlohmann::ordered_json complex_to_json(Complex value);
nlohmann::ordered_json to_json(const FidelityReport& report);

/// {"cov": [[...], ...], "disp": [...]} in row-major order.
nlohmann::ordered_json to_json(const GaussianForm& form);

}  // namespace tcsfid

#endif  // TCSFID_REPORT_HPP
