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

#ifndef TCSFID_OPTIMIZER_HPP
#define TCSFID_OPTIMIZER_HPP

#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "tcsfid/states.hpp"

namespace tcsfid {

enum class OptimizerMethod {
    // Newton iteration on finite-difference derivatives with backtracking.
    // Exact in one step on a concave quadratic; terminates by iteration 2.
    kNewton,
    // Derivative-free simplex search.
    kNelderMead,
};

std::string_view to_string(OptimizerMethod method);

/// Throws std::invalid_argument for names other than "newton" and "nelder-mead".
OptimizerMethod parse_optimizer_method(std::string_view name);

struct OptimizerConfig {
    OptimizerMethod method = OptimizerMethod::kNewton;
    double beta_tol = 1e-8;
    double value_tol = 1e-10;
    double gradient_tol = 1e-6;
    int max_iters = 200;
    Complex initial_beta{0.0, 0.0};
    // Central-difference steps. The Hessian of a quadratic is exact for any
    // step, so a wide one keeps round-off out of the Newton direction.
    double fd_step = 1e-4;
    double hessian_step = 1e-2;
    // Edge length of the starting simplex (Nelder-Mead only).
    double simplex_size = 1.0;

    /// Throws std::invalid_argument if any tolerance or size is not positive.
    void validate() const;
};

struct OptimizationResult {
    Complex beta_star;
    /// Overlap probability at beta_star (not its log).
    double value;
    double log_value;
    int iterations;
    bool converged;
    /// Central-difference gradient norm of the log objective at beta_star.
    double gradient_norm;
    OptimizerMethod method;
};

/// Log of the purification overlap between the reference purification of s1
/// (mode-2 displacement 0) and the purification of s2 with mode-2
/// displacement beta. A strictly concave quadratic in (Re beta, Im beta).
double objective(const DisplacedThermalState& s1, const DisplacedThermalState& s2, Complex beta);

/// Maximizes objective() over beta. Never throws on non-convergence; inspect
/// OptimizationResult::converged.
OptimizationResult maximize_overlap(const DisplacedThermalState& s1,
                                    const DisplacedThermalState& s2,
                                    const OptimizerConfig& config = {});

/// Central-difference gradient of f at x.
Eigen::Vector2d finite_difference_gradient(const std::function<double(const Eigen::Vector2d&)>& f,
                                           const Eigen::Vector2d& x, double step);

/// Generic two-dimensional maximizer behind maximize_overlap. The returned
/// value and log_value fields both hold f at the maximizer.
OptimizationResult maximize_2d(const std::function<double(const Eigen::Vector2d&)>& f,
                               const OptimizerConfig& config);

}  // namespace tcsfid

#endif  // TCSFID_OPTIMIZER_HPP
