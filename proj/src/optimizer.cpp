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

#include "tcsfid/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tcsfid/closed_form.hpp"

namespace tcsfid {

namespace {

using Objective = std::function<double(const Eigen::Vector2d&)>;

Eigen::Matrix2d finite_difference_hessian(const Objective& f, const Eigen::Vector2d& x,
                                          double fx, double h) {
    const Eigen::Vector2d e0(h, 0.0);
    const Eigen::Vector2d e1(0.0, h);
    Eigen::Matrix2d hess;
    hess(0, 0) = (f(x + e0) - 2.0 * fx + f(x - e0)) / (h * h);
    hess(1, 1) = (f(x + e1) - 2.0 * fx + f(x - e1)) / (h * h);
    hess(0, 1) = (f(x + e0 + e1) - f(x + e0 - e1) - f(x - e0 + e1) + f(x - e0 - e1)) / (4.0 * h * h);
    hess(1, 0) = hess(0, 1);
    return hess;
}

Complex to_complex(const Eigen::Vector2d& v) { return {v(0), v(1)}; }

OptimizationResult newton(const Objective& f, const OptimizerConfig& config) {
    Eigen::Vector2d x(config.initial_beta.real(), config.initial_beta.imag());
    double fx = f(x);
    double gradient_norm = finite_difference_gradient(f, x, config.fd_step).norm();
    bool converged = false;
    int iter = 0;

    while (iter < config.max_iters) {
        ++iter;
        const Eigen::Vector2d grad = finite_difference_gradient(f, x, config.fd_step);
        const Eigen::Matrix2d hess = finite_difference_hessian(f, x, fx, config.hessian_step);

        // Ascent direction: Newton if the Hessian is negative definite,
        // steepest ascent otherwise.
        Eigen::Vector2d direction = grad;
        const Eigen::LLT<Eigen::Matrix2d> llt(-hess);
        if (llt.info() == Eigen::Success) {
            direction = llt.solve(grad);
        }

        // Near the optimum the ascent is below round-off, so a step counts as
        // non-descending within a few ulps of f.
        const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(fx));
        double t = 1.0;
        Eigen::Vector2d trial = x + direction;
        double f_trial = f(trial);
        while (f_trial < fx - slack && t > 1e-12) {
            t *= 0.5;
            trial = x + t * direction;
            f_trial = f(trial);
        }
        if (f_trial < fx - slack) {
            // No ascent along this direction at any step size.
            break;
        }

        const double step = (trial - x).norm();
        const double change = std::abs(f_trial - fx);
        x = trial;
        fx = f_trial;
        gradient_norm = finite_difference_gradient(f, x, config.fd_step).norm();

        if (step <= config.beta_tol && change <= config.value_tol &&
            gradient_norm <= config.gradient_tol) {
            converged = true;
            break;
        }
    }
    return {to_complex(x), fx, fx, iter, converged, gradient_norm, OptimizerMethod::kNewton};
}

OptimizationResult nelder_mead(const Objective& f, const OptimizerConfig& config) {
    struct Vertex {
        Eigen::Vector2d x;
        double f;
    };
    const Eigen::Vector2d x0(config.initial_beta.real(), config.initial_beta.imag());
    const double h = config.simplex_size;
    std::array<Vertex, 3> simplex{{
        {x0, f(x0)},
        {x0 + Eigen::Vector2d(h, 0.0), 0.0},
        {x0 + Eigen::Vector2d(0.0, h), 0.0},
    }};
    simplex[1].f = f(simplex[1].x);
    simplex[2].f = f(simplex[2].x);

    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
    bool converged = false;
    int iter = 0;

    while (iter < config.max_iters) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        const double diameter = std::max((simplex[1].x - simplex[0].x).norm(),
                                         (simplex[2].x - simplex[0].x).norm());
        if (diameter <= config.beta_tol && simplex[0].f - simplex[2].f <= config.value_tol) {
            converged = true;
            break;
        }
        ++iter;

        Vertex& worst = simplex[2];
        const Eigen::Vector2d centroid = 0.5 * (simplex[0].x + simplex[1].x);
        const Eigen::Vector2d reflected = centroid + (centroid - worst.x);
        const double f_reflected = f(reflected);

        if (f_reflected > simplex[0].f) {
            const Eigen::Vector2d expanded = centroid + 2.0 * (centroid - worst.x);
            const double f_expanded = f(expanded);
            worst = f_expanded > f_reflected ? Vertex{expanded, f_expanded}
                                             : Vertex{reflected, f_reflected};
            continue;
        }
        if (f_reflected > simplex[1].f) {
            worst = {reflected, f_reflected};
            continue;
        }
        const bool outside = f_reflected > worst.f;
        const Eigen::Vector2d contracted = outside ? centroid + 0.5 * (reflected - centroid)
                                                   : centroid + 0.5 * (worst.x - centroid);
        const double f_contracted = f(contracted);
        if (outside ? f_contracted >= f_reflected : f_contracted > worst.f) {
            worst = {contracted, f_contracted};
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            simplex[i].x = simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x);
            simplex[i].f = f(simplex[i].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    const Vertex& best = simplex[0];
    const double gradient_norm = finite_difference_gradient(f, best.x, config.fd_step).norm();
    converged = converged && gradient_norm <= config.gradient_tol;
    return {to_complex(best.x), best.f, best.f, iter, converged, gradient_norm,
            OptimizerMethod::kNelderMead};
}

}  // namespace

std::string_view to_string(OptimizerMethod method) {
    switch (method) {
        case OptimizerMethod::kNewton:
            return "newton";
        case OptimizerMethod::kNelderMead:
            return "nelder-mead";
    }
    return "unknown";
}

OptimizerMethod parse_optimizer_method(std::string_view name) {
    if (name == "newton") {
        return OptimizerMethod::kNewton;
    }
    if (name == "nelder-mead") {
        return OptimizerMethod::kNelderMead;
    }
    throw std::invalid_argument("unknown optimizer method: " + std::string(name));
}

void OptimizerConfig::validate() const {
    if (!(beta_tol > 0.0) || !(value_tol > 0.0) || !(gradient_tol > 0.0) || !(fd_step > 0.0) || !(hessian_step > 0.0) ||
        !(simplex_size > 0.0)) {
        throw std::invalid_argument("optimizer tolerances and step sizes must be positive");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("max_iters must be at least 1");
    }
    if (!std::isfinite(initial_beta.real()) || !std::isfinite(initial_beta.imag())) {
        throw std::invalid_argument("initial beta must be finite");
    }
}

double objective(const DisplacedThermalState& s1, const DisplacedThermalState& s2, Complex beta) {
    const PurificationSpec reference(s1.thermal(), s1.displacement(), Complex{});
    const PurificationSpec trial(s2.thermal(), s2.displacement(), beta);
    return log_overlap_probability(reference, trial);
}

Eigen::Vector2d finite_difference_gradient(const Objective& f, const Eigen::Vector2d& x,
                                           double step) {
    const Eigen::Vector2d e0(step, 0.0);
    const Eigen::Vector2d e1(0.0, step);
    return {(f(x + e0) - f(x - e0)) / (2.0 * step), (f(x + e1) - f(x - e1)) / (2.0 * step)};
}

OptimizationResult maximize_2d(const Objective& f, const OptimizerConfig& config) {
    config.validate();
    switch (config.method) {
        case OptimizerMethod::kNewton:
            return newton(f, config);
        case OptimizerMethod::kNelderMead:
            return nelder_mead(f, config);
    }
    throw std::invalid_argument("unknown optimizer method");
}

OptimizationResult maximize_overlap(const DisplacedThermalState& s1,
                                    const DisplacedThermalState& s2,
                                    const OptimizerConfig& config) {
    const Objective f = [&](const Eigen::Vector2d& v) { return objective(s1, s2, to_complex(v)); };
    OptimizationResult result = maximize_2d(f, config);
    result.value = std::exp(result.log_value);
    return result;
}

}  // namespace tcsfid
