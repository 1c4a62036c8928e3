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

#include "tcsfid/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tcsfid::fock {

namespace {

constexpr double kHermitianTolerance = 1e-12;

void require_cutoff(int cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("Fock cutoff must be at least 1");
    }
}

void require_hermitian(const FockMatrix& rho, const char* which) {
    const double skew = (rho.entries() - rho.entries().adjoint()).cwiseAbs().maxCoeff();
    if (skew > kHermitianTolerance) {
        throw std::invalid_argument(std::string(which) + " is not Hermitian (deviation " +
                                    std::to_string(skew) + ")");
    }
}

}  // namespace

FockMatrix::FockMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("FockMatrix must be square and non-empty");
    }
}

TwoModeVector::TwoModeVector(Eigen::MatrixXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.rows() == 0 || amplitudes_.rows() != amplitudes_.cols()) {
        throw std::invalid_argument("TwoModeVector amplitudes must be square and non-empty");
    }
}

double truncation_tail(double mean_occupancy, int cutoff) {
    return std::pow(ThermalParams(mean_occupancy).ratio(), cutoff);
}

std::vector<double> laguerre_sequence(int order, int max_degree, double x) {
    if (order < 0 || max_degree < 0) {
        throw std::invalid_argument("Laguerre order and degree must be non-negative");
    }
    std::vector<double> values(static_cast<std::size_t>(max_degree) + 1);
    values[0] = 1.0;
    if (max_degree >= 1) {
        values[1] = 1.0 + order - x;
    }
    // (l + 1) L_{l+1} = (2l + 1 + m - x) L_l - (l + m) L_{l-1}
    for (int l = 1; l < max_degree; ++l) {
        values[l + 1] = ((2.0 * l + 1.0 + order - x) * values[l] - (l + order) * values[l - 1]) /
                        (l + 1.0);
    }
    return values;
}

FockMatrix thermal_density_matrix(double mean_occupancy, int cutoff) {
    require_cutoff(cutoff);
    const ThermalParams thermal(mean_occupancy);
    const double s = thermal.ratio();
    Eigen::VectorXd eta(cutoff);
    double weight = 1.0 / (mean_occupancy + 1.0);
    for (int j = 0; j < cutoff; ++j) {
        eta(j) = weight;
        weight *= s;
    }
    return FockMatrix(eta.cast<Complex>().asDiagonal().toDenseMatrix());
}

FockMatrix displacement_matrix(Complex alpha, int cutoff) {
    require_cutoff(cutoff);
    if (alpha == Complex{}) {
        return FockMatrix(Eigen::MatrixXcd::Identity(cutoff, cutoff));
    }
    const double x = std::norm(alpha);
    const double log_abs = std::log(std::abs(alpha));
    const double angle = std::arg(alpha);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int m = 0; m < cutoff; ++m) {
        const int max_degree = cutoff - 1 - m;
        const std::vector<double> laguerre = laguerre_sequence(m, max_degree, x);
        // alpha^m below the diagonal, (-alpha^*)^m above it.
        const Complex lower_phase = std::polar(1.0, m * angle);
        const Complex upper_phase = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(lower_phase);
        for (int l = 0; l <= max_degree; ++l) {
            const double log_scale = 0.5 * (std::lgamma(l + 1.0) - std::lgamma(l + m + 1.0)) +
                                     m * log_abs - 0.5 * x;
            const double magnitude = std::exp(log_scale) * laguerre[l];
            d(l + m, l) = magnitude * lower_phase;
            if (m > 0) {
                d(l, l + m) = magnitude * upper_phase;
            }
        }
    }
    return FockMatrix(std::move(d));
}

FockMatrix displaced_thermal_matrix(const DisplacedThermalState& state, int cutoff) {
    const FockMatrix rho = thermal_density_matrix(state.mean_occupancy(), cutoff);
    if (state.displacement() == Complex{}) {
        return rho;
    }
    const FockMatrix d = displacement_matrix(state.displacement(), cutoff);
    return FockMatrix(d.entries() * rho.entries() * d.entries().adjoint());
}

namespace {

// Square roots of eigenvalues, with anything inside the eigensolver's
// round-off band treated as an exact zero. sqrt turns a 1e-17 residue into 3e-9.
Eigen::VectorXd clipped_roots(const Eigen::VectorXd& values) {
    const double floor = values.size() * std::numeric_limits<double>::epsilon() * values.cwiseAbs().maxCoeff();
    return values.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
}

}  // namespace

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& rho, double* clipped_magnitude) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigendecomposition failed");
    }
    const Eigen::VectorXd& values = eig.eigenvalues();
    if (clipped_magnitude != nullptr) {
        *clipped_magnitude = std::max(0.0, -values.minCoeff());
    }
    const Eigen::VectorXd roots = clipped_roots(values);
    return eig.eigenvectors() * roots.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

UhlmannResult uhlmann_fidelity_detailed(const FockMatrix& rho1, const FockMatrix& rho2) {
    if (rho1.cutoff() != rho2.cutoff()) {
        throw std::invalid_argument("density matrices have different cutoffs");
    }
    require_hermitian(rho1, "rho1");
    require_hermitian(rho2, "rho2");

    // Tr[(sqrt(rho1) rho2 sqrt(rho1))^(1/2)] is the sum of singular values of
    // sqrt(rho1) sqrt(rho2). The SVD route never square-roots round-off.
    double clipped1 = 0.0;
    double clipped2 = 0.0;
    const Eigen::MatrixXcd root1 = hermitian_sqrt(rho1.entries(), &clipped1);
    const Eigen::MatrixXcd root2 = hermitian_sqrt(rho2.entries(), &clipped2);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(root1 * root2);
    const double trace = svd.singularValues().sum();
    return {trace * trace, std::max(clipped1, clipped2)};
}

double uhlmann_fidelity(const FockMatrix& rho1, const FockMatrix& rho2) {
    return uhlmann_fidelity_detailed(rho1, rho2).value;
}

TwoModeVector schmidt_purification(const DisplacedThermalState& state, Complex beta, int cutoff) {
    const FockMatrix rho = thermal_density_matrix(state.mean_occupancy(), cutoff);
    const Eigen::VectorXcd schmidt = rho.entries().diagonal().cwiseSqrt();
    const FockMatrix d1 = displacement_matrix(state.displacement(), cutoff);
    const FockMatrix d2 = displacement_matrix(beta, cutoff);
    return TwoModeVector(d1.entries() * schmidt.asDiagonal() * d2.entries().transpose());
}

FockMatrix partial_trace_mode2(const TwoModeVector& v) {
    return FockMatrix(v.amplitudes() * v.amplitudes().adjoint());
}

Complex inner_product(const TwoModeVector& v, const TwoModeVector& w) {
    if (v.cutoff() != w.cutoff()) {
        throw std::invalid_argument("two-mode vectors have different cutoffs");
    }
    return (v.amplitudes().conjugate().cwiseProduct(w.amplitudes())).sum();
}

Complex cf_of_two_mode_vector(const TwoModeVector& v, Complex lambda1, Complex lambda2) {
    const FockMatrix d1 = displacement_matrix(lambda1, v.cutoff());
    const FockMatrix d2 = displacement_matrix(lambda2, v.cutoff());
    // (D1 (x) D2) acting on amplitudes a(n1, n2) is D1 a D2^T.
    const Eigen::MatrixXcd image = d1.entries() * v.amplitudes() * d2.entries().transpose();
    return (v.amplitudes().conjugate().cwiseProduct(image)).sum();
}

}  // namespace tcsfid::fock
