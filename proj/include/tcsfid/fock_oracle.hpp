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

#ifndef TCSFID_FOCK_ORACLE_HPP
#define TCSFID_FOCK_ORACLE_HPP

#include <vector>

#include <Eigen/Dense>

#include "tcsfid/states.hpp"

namespace tcsfid::fock {

inline constexpr int kDefaultCutoff = 60;

/// Dense operator on the span of |0>, ..., |N-1>. Truncated operators are
/// the exact matrix elements of the infinite-dimensional operator restricted
/// to that block; nothing is renormalized.
class FockMatrix {
  public:
    /// Throws std::invalid_argument unless entries is square and non-empty.
    explicit FockMatrix(Eigen::MatrixXcd entries);

    int cutoff() const noexcept { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    Complex operator()(int row, int col) const { return entries_(row, col); }

  private:
    Eigen::MatrixXcd entries_;
};

/// Two-mode state vector with amplitudes(n1, n2) = <n1, n2|psi>.
class TwoModeVector {
  public:
    explicit TwoModeVector(Eigen::MatrixXcd amplitudes);

    int cutoff() const noexcept { return static_cast<int>(amplitudes_.rows()); }
    const Eigen::MatrixXcd& amplitudes() const noexcept { return amplitudes_; }
    double squared_norm() const { return amplitudes_.squaredNorm(); }

  private:
    Eigen::MatrixXcd amplitudes_;
};

/// Weight s^N of the thermal spectrum discarded by a cutoff N.
double truncation_tail(double mean_occupancy, int cutoff);

/// Generalized Laguerre polynomials L_0^(order)(x), ..., L_max_degree^(order)(x)
/// by the upward three-term recurrence in degree.
std::vector<double> laguerre_sequence(int order, int max_degree, double x);

/// diag(eta_0, ..., eta_{N-1}) with eta_j = s^j / (n + 1).
FockMatrix thermal_density_matrix(double mean_occupancy, int cutoff);

/// <k|D(alpha)|l> = sqrt(l!/k!) alpha^(k-l) exp(-|alpha|^2/2) L_l^(k-l)(|alpha|^2)
/// for k >= l. Entries above the diagonal use D(alpha)^dag = D(-alpha), so only
/// non-negative Laguerre orders are evaluated. Factorial ratios go through
/// lgamma. Accurate while |alpha|^2 is well below the cutoff.
FockMatrix displacement_matrix(Complex alpha, int cutoff);

/// D(alpha) rho_T D(alpha)^dag.
FockMatrix displaced_thermal_matrix(const DisplacedThermalState& state, int cutoff);

struct UhlmannResult {
    double value;
    /// Magnitude of the most negative eigenvalue set to zero while taking
    /// matrix square roots (0 if none).
    double clipped_magnitude;
};

/// Hermitian square root by eigendecomposition. Negative eigenvalues, and
/// positive ones inside the solver's round-off band, map to 0.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& rho, double* clipped_magnitude = nullptr);

/// {Tr[(sqrt(rho1) rho2 sqrt(rho1))^(1/2)]}^2.
/// Throws std::invalid_argument on cutoff mismatch or non-Hermitian input.
UhlmannResult uhlmann_fidelity_detailed(const FockMatrix& rho1, const FockMatrix& rho2);

double uhlmann_fidelity(const FockMatrix& rho1, const FockMatrix& rho2);

/// Truncated Schmidt purification
///   amplitudes(m, n) = sum_k sqrt(eta_k) <m|D(alpha)|k> <n|D(beta)|k>.
TwoModeVector schmidt_purification(const DisplacedThermalState& state, Complex beta, int cutoff);

/// Reduced state of mode 1: rho(m, m') = sum_n a(m, n) conj(a(m', n)).
FockMatrix partial_trace_mode2(const TwoModeVector& v);

/// <v|w>.
Complex inner_product(const TwoModeVector& v, const TwoModeVector& w);

/// <v| D(lambda1) (x) D(lambda2) |v>.
Complex cf_of_two_mode_vector(const TwoModeVector& v, Complex lambda1, Complex lambda2);

}  // namespace tcsfid::fock

#endif  // TCSFID_FOCK_ORACLE_HPP
