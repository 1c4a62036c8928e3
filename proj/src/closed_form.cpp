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

#include "tcsfid/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcsfid {

namespace {

// 1 / [sqrt((n1+1)(n2+1)) - sqrt(n1 n2)]^2 multiplied through by the
// conjugate: [(n1+1)(n2+1) + n1 n2 + 2 sqrt(n1(n1+1) n2(n2+1))] / (n1+n2+1)^2.
// All terms are positive, and rational arguments such as (1, 0) come out exact.
// Each operation pairs n1 with n2 commutatively, so swapping them is bit-exact.
double thermal_overlap(double n1, double n2) {
    const double sum = n1 + n2 + 1.0;
    const double numerator =
        (n1 + 1.0) * (n2 + 1.0) + n1 * n2 + 2.0 * std::sqrt((n1 * (n1 + 1.0)) * (n2 * (n2 + 1.0)));
    return numerator / (sum * sum);
}

}  // namespace

FidelityValue::FidelityValue(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw std::domain_error("fidelity must lie in (0, 1]");
    }
}

FidelityValue thermal_fidelity(double n1, double n2) {
    // Validates both occupancies.
    ThermalParams{n1};
    ThermalParams{n2};
    if (n1 == n2) {
        return FidelityValue(1.0);
    }
    return FidelityValue(std::min(1.0, thermal_overlap(n1, n2)));
}

double log_tcs_fidelity(const DisplacedThermalState& s1, const DisplacedThermalState& s2) {
    const double n1 = s1.mean_occupancy();
    const double n2 = s2.mean_occupancy();
    const double log_thermal = std::log(thermal_fidelity(n1, n2).value());
    return log_thermal - std::norm(s1.displacement() - s2.displacement()) / (n1 + n2 + 1.0);
}

FidelityValue tcs_fidelity(const DisplacedThermalState& s1, const DisplacedThermalState& s2) {
    const double value = std::exp(log_tcs_fidelity(s1, s2));
    if (value == 0.0) {
        throw std::underflow_error("fidelity underflows double precision; use log_tcs_fidelity");
    }
    return FidelityValue(std::min(1.0, value));
}

double log_overlap_probability(const PurificationSpec& reference, const PurificationSpec& trial) {
    if (reference.beta() != Complex{}) {
        throw std::invalid_argument("reference purification must have zero mode-2 displacement");
    }
    const double n1 = reference.mean_occupancy();
    const double n2 = trial.mean_occupancy();
    const double r1 = std::sqrt(reference.thermal().ratio());
    const double r2 = std::sqrt(trial.thermal().ratio());
    const double r12 = r1 * r2;

    const Complex beta = trial.beta();
    const Complex delta = trial.alpha() - reference.alpha();

    const double damping = (1.0 + r12) / (1.0 - r12);
    const double coupling = (r1 + r2) / (1.0 - r12);

    return std::log(thermal_overlap(n1, n2)) - damping * (std::norm(beta) + std::norm(delta)) +
           coupling * 2.0 * (beta * delta).real();
}

double overlap_probability(const PurificationSpec& reference, const PurificationSpec& trial) {
    return std::exp(log_overlap_probability(reference, trial));
}

Complex optimal_beta(const DisplacedThermalState& s1, const DisplacedThermalState& s2) {
    const double r1 = std::sqrt(s1.ratio());
    const double r2 = std::sqrt(s2.ratio());
    const double gain = (r1 + r2) / (1.0 + r1 * r2);
    return gain * std::conj(s2.displacement() - s1.displacement());
}

double bures_distance(FidelityValue fidelity) {
    return std::sqrt(2.0 * (1.0 - std::sqrt(fidelity.value())));
}

double bures_distance(double fidelity) { return bures_distance(FidelityValue(fidelity)); }

}  // namespace tcsfid
