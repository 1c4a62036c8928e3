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

#ifndef TCSFID_CLOSED_FORM_HPP
#define TCSFID_CLOSED_FORM_HPP

#include "tcsfid/states.hpp"

namespace tcsfid {

/// Uhlmann transition probability, 0 < value <= 1. Stores the probability
/// itself, not its square root.
class FidelityValue {
  public:
    /// Throws std::domain_error unless 0 < value <= 1.
    explicit FidelityValue(double value);

    double value() const noexcept { return value_; }

  private:
    double value_;
};

/// Fidelity between thermal states of occupancies n1 and n2:
///   1 / [sqrt((n1+1)(n2+1)) - sqrt(n1 n2)]^2.
FidelityValue thermal_fidelity(double n1, double n2);

/// Natural log of tcs_fidelity(); finite even when the fidelity underflows.
double log_tcs_fidelity(const DisplacedThermalState& s1, const DisplacedThermalState& s2);

/// Fidelity between displaced thermal states:
///   thermal_fidelity(n1, n2) * exp(-|alpha1 - alpha2|^2 / (n1 + n2 + 1)).
/// Throws std::underflow_error if the value is not representable.
FidelityValue tcs_fidelity(const DisplacedThermalState& s1, const DisplacedThermalState& s2);

/// Log of the transition probability |<Phi_I|Phi_II>|^2 between a reference
/// purification (mode-2 displacement 0) and a trial purification with free
/// mode-2 displacement beta. With D = alpha2 - alpha1 and
/// r = sqrt(s1 s2),
///
///   log P = -2 log[sqrt((n1+1)(n2+1)) - sqrt(n1 n2)]
///           - (1 + r)/(1 - r) (|beta|^2 + |D|^2)
///           + (sqrt(s1) + sqrt(s2))/(1 - r) * 2 Re(beta D).
///
/// The last term is the real form of beta D + beta^* D^*.
/// Throws std::invalid_argument if reference.beta() != 0.
double log_overlap_probability(const PurificationSpec& reference, const PurificationSpec& trial);

double overlap_probability(const PurificationSpec& reference, const PurificationSpec& trial);

/// Mode-2 displacement maximizing overlap_probability:
///   (sqrt(s1) + sqrt(s2)) / (1 + sqrt(s1 s2)) * (alpha2 - alpha1)^*.
Complex optimal_beta(const DisplacedThermalState& s1, const DisplacedThermalState& s2);

/// Bures distance sqrt(2 (1 - sqrt(F))).
double bures_distance(FidelityValue fidelity);

/// Throws std::domain_error unless 0 < fidelity <= 1.
double bures_distance(double fidelity);

}  // namespace tcsfid

#endif  // TCSFID_CLOSED_FORM_HPP
