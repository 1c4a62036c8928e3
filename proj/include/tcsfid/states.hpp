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

#ifndef TCSFID_STATES_HPP
#define TCSFID_STATES_HPP

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace tcsfid {

using Complex = std::complex<double>;

/// Largest mean occupancy accepted anywhere in the library. Beyond this the
/// overlap exponents lose all double-precision accuracy as s -> 1.
inline constexpr double kMaxMeanOccupancy = 1e8;

/// Physical origin of a thermal mode, in units where hbar = k_B = 1.
struct ThermalOrigin {
    double temperature;
    double angular_frequency;
};

/// Bose-Einstein occupancy 1 / (exp(x) - 1) for the energy ratio
/// x = hbar*omega / (k_B*T). Throws std::domain_error unless x > 0.
double mean_occupancy_from_ratio(double energy_ratio);

/// Same as mean_occupancy_from_ratio(omega / T) with hbar = k_B = 1.
double mean_occupancy_from_temperature(double temperature, double angular_frequency);

/// Mean occupancy of a thermal mode, optionally remembering the
/// (T, omega) pair it was derived from.
class ThermalParams {
  public:
    /// Throws std::domain_error for negative or non-finite input and
    /// std::range_error above kMaxMeanOccupancy.
    explicit ThermalParams(double mean_occupancy);

    static ThermalParams from_temperature(double temperature, double angular_frequency);
    static ThermalParams from_energy_ratio(double energy_ratio);

    double mean_occupancy() const noexcept { return mean_occupancy_; }

    /// Geometric ratio s = n / (n + 1) of the thermal spectrum; 0 <= s < 1.
    double ratio() const noexcept { return mean_occupancy_ / (mean_occupancy_ + 1.0); }

    const std::optional<ThermalOrigin>& origin() const noexcept { return origin_; }

  private:
    double mean_occupancy_;
    std::optional<ThermalOrigin> origin_;
};

/// A thermal state displaced by the Weyl operator D(alpha).
class DisplacedThermalState {
  public:
    DisplacedThermalState(ThermalParams thermal, Complex displacement);
    DisplacedThermalState(double mean_occupancy, Complex displacement)
        : DisplacedThermalState(ThermalParams(mean_occupancy), displacement) {}

    const ThermalParams& thermal() const noexcept { return thermal_; }
    double mean_occupancy() const noexcept { return thermal_.mean_occupancy(); }
    double ratio() const noexcept { return thermal_.ratio(); }
    Complex displacement() const noexcept { return displacement_; }

  private:
    ThermalParams thermal_;
    Complex displacement_;
};

/// Two-mode Schmidt purification sum_n sqrt(eta_n) D(alpha)|n> (x) D(beta)|n>.
/// Mode 1 reduces to (thermal, alpha) and mode 2 to (thermal, beta).
class PurificationSpec {
  public:
    PurificationSpec(ThermalParams thermal, Complex alpha, Complex beta);
    PurificationSpec(double mean_occupancy, Complex alpha, Complex beta)
        : PurificationSpec(ThermalParams(mean_occupancy), alpha, beta) {}

    const ThermalParams& thermal() const noexcept { return thermal_; }
    double mean_occupancy() const noexcept { return thermal_.mean_occupancy(); }
    Complex alpha() const noexcept { return alpha_; }
    Complex beta() const noexcept { return beta_; }

    DisplacedThermalState mode1() const { return {thermal_, alpha_}; }
    DisplacedThermalState mode2() const { return {thermal_, beta_}; }

  private:
    ThermalParams thermal_;
    Complex alpha_;
    Complex beta_;
};

/// Covariance matrix and mean vector of a two-mode Gaussian state.
///
/// Quadratures are ordered (x1, p1, x2, p2) with a = (x + i p) / sqrt(2), so
/// the vacuum has variance 1/2. The symmetric characteristic function
/// chi(lambda) = <D(lambda)> of such a state is
///
///     chi = exp(-xi^T V xi / 2 + i xi^T d),
///
/// where each complex argument lambda maps to the real pair
/// xi = sqrt(2) (Im lambda, -Re lambda). See phase_space_argument().
struct GaussianForm {
    Eigen::Matrix4d covariance;
    Eigen::Vector4d displacement;
};

/// Real vector conjugate to (x, p) for the Weyl operator D(lambda):
/// lambda a^dag - lambda^* a = i (xi_x x + xi_p p).
Eigen::Vector2d phase_space_argument(Complex lambda);

/// Mean quadratures (<x>, <p>) of a mode with coherent amplitude alpha.
Eigen::Vector2d quadrature_mean(Complex alpha);

/// Closed-form characteristic function of a purification:
///   exp[-(n + 1/2)(|l1|^2 + |l2|^2) + sqrt(n(n+1)) (l1 l2 + l1^* l2^*)]
///   * exp[l1 alpha^* - l1^* alpha + l2 beta^* - l2^* beta].
Complex purification_cf(const PurificationSpec& spec, Complex lambda1, Complex lambda2);

/// Single-mode characteristic function exp[-(n + 1/2)|l|^2 + l alpha^* - l^* alpha].
Complex tcs_cf(const DisplacedThermalState& state, Complex lambda);

/// Covariance matrix and mean vector of a purification. The covariance has
/// diagonal n + 1/2 and cross-mode block diag(c, -c) with c = sqrt(n(n+1)),
/// so its determinant is 1/16 for every n.
GaussianForm purification_gaussian_form(const PurificationSpec& spec);

/// Characteristic function of an arbitrary two-mode Gaussian form.
Complex gaussian_cf(const GaussianForm& form, Complex lambda1, Complex lambda2);

struct WeylProduct {
    Complex phase;
    Complex sum;
};

/// Heisenberg-Weyl group law D(alpha) D(beta) = phase * D(alpha + beta) with
/// phase = exp[(alpha beta^* - alpha^* beta) / 2].
WeylProduct weyl_compose(Complex alpha, Complex beta);

}  // namespace tcsfid

#endif  // TCSFID_STATES_HPP
