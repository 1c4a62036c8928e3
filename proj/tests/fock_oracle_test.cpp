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

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "tcsfid/closed_form.hpp"
#include "test_oracles.hpp"

using namespace tcsfid;
using namespace tcsfid::fock;

namespace {

double block_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int size) {
    return (a.topLeftCorner(size, size) - b.topLeftCorner(size, size)).cwiseAbs().maxCoeff();
}

Eigen::VectorXd sorted_descending(Eigen::VectorXd v) {
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return v;
}

}  // namespace

TEST(fock_oracle, laguerre_recurrence_matches_explicit_sum) {
    for (int order : {0, 1, 3, 10, 40}) {
        for (double x : {0.0, 0.25, 1.0, 2.0, 4.5}) {
            const auto values = laguerre_sequence(order, 30, x);
            for (int degree = 0; degree <= 30; ++degree) {
                const double expected =
                    static_cast<double>(oracle::laguerre_explicit(degree, order, x));
                EXPECT_NEAR(values[degree], expected, 1e-9 * std::max(1.0, std::abs(expected)))
                    << "order " << order << " degree " << degree << " x " << x;
            }
        }
    }
    EXPECT_THROW(laguerre_sequence(-1, 3, 0.5), std::invalid_argument);
}

TEST(fock_oracle, thermal_density_matrix) {
    const FockMatrix vacuum = thermal_density_matrix(0.0, 5);
    EXPECT_EQ(vacuum(0, 0), Complex(1.0));
    for (int j = 1; j < 5; ++j) {
        EXPECT_EQ(vacuum(j, j), Complex(0.0));
    }

    const FockMatrix rho = thermal_density_matrix(1.0, 40);
    for (int j = 0; j < 40; ++j) {
        EXPECT_DOUBLE_EQ(rho(j, j).real(), 0.5 * std::pow(0.5, j));
        for (int k = 0; k < 40; ++k) {
            if (k != j) {
                EXPECT_EQ(rho(j, k), Complex(0.0));
            }
        }
    }
    EXPECT_NEAR(rho.entries().trace().real(), 1.0 - std::pow(2.0, -40), 1e-16);
    EXPECT_THROW(thermal_density_matrix(1.0, 0), std::invalid_argument);
}

TEST(fock_oracle, truncation_tail) {
    EXPECT_EQ(truncation_tail(0.0, 10), 0.0);
    EXPECT_DOUBLE_EQ(truncation_tail(1.0, 40), std::pow(2.0, -40));
    EXPECT_LT(truncation_tail(2.0, 60), 3e-11);
}

TEST(fock_oracle, displacement_matrix_basics) {
    const Complex beta(0.6, -0.9);
    const FockMatrix d = displacement_matrix(beta, 30);
    EXPECT_NEAR(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(beta))), 0.0, 1e-15);

    // Column 0 is the coherent state |beta>.
    for (int k = 0; k < 30; ++k) {
        const Complex expected =
            std::exp(-0.5 * std::norm(beta)) * std::pow(beta, k) / std::sqrt(std::tgamma(k + 1.0));
        EXPECT_LE(std::abs(d(k, 0) - expected), 1e-14);
    }

    EXPECT_TRUE(displacement_matrix(0.0, 12).entries().isApprox(Eigen::MatrixXcd::Identity(12, 12)));

    // D(beta)^dag = D(-beta) holds entry by entry for the truncated matrices.
    const FockMatrix minus = displacement_matrix(-beta, 30);
    EXPECT_LE((d.entries().adjoint() - minus.entries()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(fock_oracle, displacement_truncated_unitarity) {
    // Truncation leaks weight out of the kept space once (sqrt(j) + |alpha|)^2
    // approaches the cutoff, so the clean regime is |alpha| <= 1.5 on the
    // lower half, and |alpha| = 2 on the lower third.
    auto deviation = [](Complex alpha, int block) {
        const Eigen::MatrixXcd product =
            displacement_matrix(alpha, 60).entries() * displacement_matrix(-alpha, 60).entries();
        return block_deviation(product, Eigen::MatrixXcd::Identity(60, 60), block);
    };
    for (Complex alpha : {Complex(1.5, 0.0), Complex(0.0, -1.5), Complex(0.9, 1.2), Complex(-0.3, 0.4)}) {
        EXPECT_LE(deviation(alpha, 30), 1e-8) << alpha;
    }
    for (Complex alpha : {Complex(2.0, 0.0), Complex(0.0, -2.0), Complex(1.2, 1.6)}) {
        EXPECT_LE(deviation(alpha, 20), 1e-8) << alpha;
    }
    // Leakage at |alpha| = 2 on the lower half, from a 50-digit evaluation.
    EXPECT_NEAR(deviation(2.0, 30), 4.04e-4, 0.01e-4);
}

TEST(fock_oracle, weyl_composition_law) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex a = oracle::random_in_disk(rng, 0.0, 1.5);
        const Complex b = oracle::random_in_disk(rng, 0.0, 1.5);
        const WeylProduct w = weyl_compose(a, b);
        const Eigen::MatrixXcd lhs =
            displacement_matrix(a, 60).entries() * displacement_matrix(b, 60).entries();
        const Eigen::MatrixXcd rhs = w.phase * displacement_matrix(w.sum, 60).entries();
        EXPECT_LE(block_deviation(lhs, rhs, 30), 1e-7);
    }
}

TEST(fock_oracle, displaced_thermal_matrix) {
    EXPECT_EQ(displaced_thermal_matrix({1.5, 0.0}, 20).entries(),
              thermal_density_matrix(1.5, 20).entries());

    const FockMatrix coherent = displaced_thermal_matrix({0.0, 1.0}, 40);
    EXPECT_NEAR(coherent(0, 0).real(), std::exp(-1.0), 1e-15);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(coherent.entries());
    const Eigen::VectorXd values = sorted_descending(eig.eigenvalues());
    EXPECT_NEAR(values(0), 1.0, 1e-12);
    EXPECT_LE(values.tail(39).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(fock_oracle, spectrum_is_displacement_invariant) {
    const FockMatrix rho = displaced_thermal_matrix({1.0, 1.0}, 60);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.entries());
    const Eigen::VectorXd values = sorted_descending(eig.eigenvalues());
    for (int j = 0; j < 20; ++j) {
        EXPECT_NEAR(values(j), 0.5 * std::pow(0.5, j), 1e-8);
    }
    // Hermitian, positive up to round-off, trace within the tail.
    EXPECT_LE((rho.entries() - rho.entries().adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(values.minCoeff(), -1e-10);
    const double trace = rho.entries().trace().real();
    EXPECT_LE(trace, 1.0 + 1e-12);
    EXPECT_GE(trace, 1.0 - truncation_tail(1.0, 60) - 1e-12);
}

TEST(fock_oracle, uhlmann_fidelity_reference_values) {
    const FockMatrix rho = displaced_thermal_matrix({0.7, {0.3, -0.2}}, 60);
    EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-9);

    const double pure = uhlmann_fidelity(displaced_thermal_matrix({0.0, 0.0}, 40),
                                         displaced_thermal_matrix({0.0, 1.0}, 40));
    EXPECT_NEAR(pure, std::exp(-1.0), 1e-10);

    const double thermal = uhlmann_fidelity(thermal_density_matrix(1.0, 80),
                                            thermal_density_matrix(0.0, 80));
    EXPECT_NEAR(thermal, 0.5, 1e-8);
    EXPECT_NEAR(thermal, thermal_fidelity(1.0, 0.0).value(), 1e-8);
}

TEST(fock_oracle, uhlmann_fidelity_symmetry) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> occupancy(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const FockMatrix a = displaced_thermal_matrix(
            {occupancy(rng), oracle::random_in_disk(rng, 0.0, 1.5)}, 60);
        const FockMatrix b = displaced_thermal_matrix(
            {occupancy(rng), oracle::random_in_disk(rng, 0.0, 1.5)}, 60);
        EXPECT_LE(std::abs(uhlmann_fidelity(a, b) - uhlmann_fidelity(b, a)), 1e-10);
    }
}

TEST(fock_oracle, uhlmann_reduces_to_expectation_for_pure_states) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> occupancy(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const FockMatrix pure = displaced_thermal_matrix({0.0, oracle::random_in_disk(rng, 0.0, 1.5)}, 60);
        const FockMatrix mixed = displaced_thermal_matrix(
            {occupancy(rng), oracle::random_in_disk(rng, 0.0, 1.5)}, 60);
        const double expectation = (pure.entries() * mixed.entries()).trace().real();
        EXPECT_NEAR(uhlmann_fidelity(pure, mixed), expectation, 1e-10);
    }
}

TEST(fock_oracle, uhlmann_input_errors) {
    Eigen::MatrixXcd skew = thermal_density_matrix(1.0, 4).entries();
    skew(0, 1) = Complex(0.1, 0.0);
    EXPECT_THROW(uhlmann_fidelity(FockMatrix(skew), thermal_density_matrix(1.0, 4)),
                 std::invalid_argument);
    EXPECT_THROW(uhlmann_fidelity(thermal_density_matrix(1.0, 4), thermal_density_matrix(1.0, 5)),
                 std::invalid_argument);
    EXPECT_THROW(FockMatrix(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
}

TEST(fock_oracle, uhlmann_converges_in_cutoff) {
    const DisplacedThermalState a(2.0, {1.0, -1.0});
    const DisplacedThermalState b(1.5, {-1.0, 0.5});
    const double exact = tcs_fidelity(a, b).value();
    double previous = 1.0;
    for (int cutoff : {20, 40, 60, 80}) {
        const double error = std::abs(
            uhlmann_fidelity(displaced_thermal_matrix(a, cutoff), displaced_thermal_matrix(b, cutoff)) -
            exact);
        EXPECT_LE(error, previous + 1e-12) << "cutoff " << cutoff;
        previous = error;
    }
    EXPECT_LE(previous, 1e-6);
}

TEST(fock_oracle, schmidt_purification_vacuum) {
    const TwoModeVector v = schmidt_purification({0.0, 0.0}, 0.0, 8);
    EXPECT_EQ(v.amplitudes()(0, 0), Complex(1.0));
    EXPECT_EQ(v.amplitudes().cwiseAbs().sum(), 1.0);
}

TEST(fock_oracle, schmidt_purification_reduces_to_displaced_thermal_state) {
    for (double n : {0.5, 1.0, 2.0}) {
        for (Complex alpha : {Complex(2.0, 0.0), Complex(-1.0, 1.0), Complex(0.0, 0.5), Complex(1.2, -1.6)}) {
            for (Complex beta : {Complex(0.0, 0.0), Complex(0.5, -0.5), Complex(-0.6, 0.8)}) {
                const DisplacedThermalState state(n, alpha);
                const TwoModeVector v = schmidt_purification(state, beta, 60);
                const FockMatrix rho = displaced_thermal_matrix(state, 60);
                EXPECT_LE(v.squared_norm(), 1.0 + 1e-12);
                EXPECT_NEAR(v.squared_norm(), rho.entries().trace().real(), 1e-8);
                const Eigen::MatrixXcd diff = partial_trace_mode2(v).entries() - rho.entries();
                EXPECT_LE(diff.norm(), 1e-8) << "n=" << n << " alpha=" << alpha << " beta=" << beta;
            }
        }
    }
}

TEST(fock_oracle, schmidt_overlap_matches_transition_probability) {
    const DisplacedThermalState s1(1.0, {0.2, 0.1});
    const DisplacedThermalState s2(2.0, {1.0, -0.5});
    const TwoModeVector reference = schmidt_purification(s1, 0.0, 60);
    for (Complex beta : {Complex(0.0, 0.0), Complex(0.5, 0.0), optimal_beta(s1, s2)}) {
        const TwoModeVector trial = schmidt_purification(s2, beta, 60);
        const double oracle = std::norm(inner_product(reference, trial));
        const double closed = overlap_probability({s1.thermal(), s1.displacement(), 0.0},
                                                  {s2.thermal(), s2.displacement(), beta});
        EXPECT_NEAR(oracle, closed, 1e-6);
    }
}

TEST(fock_oracle, partial_trace_special_vectors) {
    // Product state |psi> (x) |phi>.
    Eigen::VectorXcd psi(4), phi(4);
    psi << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(0.5, 0.0), Complex(0.0, -0.5);
    phi << Complex(0.0, 1.0), 0.0, 0.0, 0.0;
    const FockMatrix reduced = partial_trace_mode2(TwoModeVector(psi * phi.transpose()));
    EXPECT_LE((reduced.entries() - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-15);

    const int n = 6;
    const TwoModeVector maximally(Eigen::MatrixXcd::Identity(n, n) / std::sqrt(double(n)));
    EXPECT_LE((partial_trace_mode2(maximally).entries() - Eigen::MatrixXcd::Identity(n, n) / double(n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(fock_oracle, cf_of_two_mode_vector) {
    const TwoModeVector v = schmidt_purification({0.8, {0.1, 0.2}}, {-0.3, 0.0}, 30);
    EXPECT_NEAR(std::abs(cf_of_two_mode_vector(v, 0.0, 0.0) - v.squared_norm()), 0.0, 1e-14);

    const TwoModeVector vacuum = schmidt_purification({0.0, 0.0}, 0.0, 20);
    const Complex lambda(0.4, -0.7);
    EXPECT_NEAR(std::abs(cf_of_two_mode_vector(vacuum, lambda, 0.0) -
                         std::exp(-0.5 * std::norm(lambda))),
                0.0, 1e-14);
}

TEST(fock_oracle, cf_of_schmidt_purification_matches_closed_form) {
    const DisplacedThermalState state(1.0, 0.0);
    const TwoModeVector v = schmidt_purification(state, 0.0, 60);
    const PurificationSpec spec(1.0, 0.0, 0.0);
    double worst = 0.0;
    for (double r1 : {-0.7, 0.0, 0.7}) {
        for (double i1 : {-0.7, 0.0, 0.7}) {
            for (double r2 : {-0.7, 0.0, 0.7}) {
                for (double i2 : {-0.7, 0.0, 0.7}) {
                    const Complex l1(r1, i1);
                    const Complex l2(r2, i2);
                    worst = std::max(worst, std::abs(cf_of_two_mode_vector(v, l1, l2) -
                                                     purification_cf(spec, l1, l2)));
                }
            }
        }
    }
    EXPECT_LE(worst, 1e-6);
}
