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

#include "tcsfid/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcsfid {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

}  // namespace

double mean_occupancy_from_ratio(double energy_ratio) {
    if (!(energy_ratio > 0.0)) {
        throw std::domain_error("energy ratio hbar*omega/(k_B*T) must be positive");
    }
    // expm1 keeps full precision in the high-temperature limit x -> 0; for
    // x -> inf it overflows to inf and the occupancy goes to 0.
    return 1.0 / std::expm1(energy_ratio);
}

double mean_occupancy_from_temperature(double temperature, double angular_frequency) {
    if (!(temperature > 0.0) || !(angular_frequency > 0.0)) {
        throw std::domain_error("temperature and angular frequency must be positive");
    }
    return mean_occupancy_from_ratio(angular_frequency / temperature);
}

ThermalParams::ThermalParams(double mean_occupancy) : mean_occupancy_(mean_occupancy) {
    if (!std::isfinite(mean_occupancy) || mean_occupancy < 0.0) {
        throw std::domain_error("mean occupancy must be finite and non-negative");
    }
    if (mean_occupancy > kMaxMeanOccupancy) {
        throw std::range_error("mean occupancy exceeds the supported maximum of 1e8");
    }
}

ThermalParams ThermalParams::from_temperature(double temperature, double angular_frequency) {
    ThermalParams params(mean_occupancy_from_temperature(temperature, angular_frequency));
    params.origin_ = ThermalOrigin{temperature, angular_frequency};
    return params;
}

ThermalParams ThermalParams::from_energy_ratio(double energy_ratio) {
    return ThermalParams(mean_occupancy_from_ratio(energy_ratio));
}

DisplacedThermalState::DisplacedThermalState(ThermalParams thermal, Complex displacement)
    : thermal_(thermal), displacement_(displacement) {
    require_finite(displacement, "displacement");
}

PurificationSpec::PurificationSpec(ThermalParams thermal, Complex alpha, Complex beta)
    : thermal_(thermal), alpha_(alpha), beta_(beta) {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
}

Eigen::Vector2d phase_space_argument(Complex lambda) {
    return {std::sqrt(2.0) * lambda.imag(), -std::sqrt(2.0) * lambda.real()};
}

Eigen::Vector2d quadrature_mean(Complex alpha) {
    return {std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()};
}

Complex purification_cf(const PurificationSpec& spec, Complex lambda1, Complex lambda2) {
    const double n = spec.mean_occupancy();
    const double c = std::sqrt(n * (n + 1.0));
    // l1 l2 + l1^* l2^* = 2 Re(l1 l2); l a^* - l^* a = 2i Im(l a^*).
    const double gaussian = -(n + 0.5) * (std::norm(lambda1) + std::norm(lambda2)) +
                            2.0 * c * (lambda1 * lambda2).real();
    const double phase = 2.0 * ((lambda1 * std::conj(spec.alpha())).imag() +
                                (lambda2 * std::conj(spec.beta())).imag());
    return std::polar(std::exp(gaussian), phase);
}

Complex tcs_cf(const DisplacedThermalState& state, Complex lambda) {
    const double n = state.mean_occupancy();
    const double phase = 2.0 * (lambda * std::conj(state.displacement())).imag();
    return std::polar(std::exp(-(n + 0.5) * std::norm(lambda)), phase);
}

GaussianForm purification_gaussian_form(const PurificationSpec& spec) {
    const double n = spec.mean_occupancy();
    const double a = n + 0.5;
    const double c = std::sqrt(n * (n + 1.0));

    GaussianForm form;
    form.covariance << a, 0, c, 0,
                       0, a, 0, -c,
                       c, 0, a, 0,
                       0, -c, 0, a;
    form.displacement << quadrature_mean(spec.alpha()), quadrature_mean(spec.beta());
    return form;
}

Complex gaussian_cf(const GaussianForm& form, Complex lambda1, Complex lambda2) {
    Eigen::Vector4d xi;
    xi << phase_space_argument(lambda1), phase_space_argument(lambda2);
    const double quadratic = xi.dot(form.covariance * xi);
    return std::polar(std::exp(-0.5 * quadratic), xi.dot(form.displacement));
}

WeylProduct weyl_compose(Complex alpha, Complex beta) {
    // alpha beta^* - alpha^* beta is purely imaginary: 2i Im(alpha beta^*).
    const double angle = (alpha * std::conj(beta)).imag();
    return {std::polar(1.0, angle), alpha + beta};
}

}  // namespace tcsfid
