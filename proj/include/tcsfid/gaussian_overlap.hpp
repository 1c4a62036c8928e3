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

#ifndef TCSFID_GAUSSIAN_OVERLAP_HPP
#define TCSFID_GAUSSIAN_OVERLAP_HPP

#include "tcsfid/states.hpp"

namespace tcsfid {

struct OverlapResult {
    double value;
    double log_value;
};

/// Purity tolerance on det(V) - 1/16 accepted by pure_overlap.
inline constexpr double kPurityTolerance = 1e-9;

/// Transition probability |<psi1|psi2>|^2 of two pure two-mode Gaussian
/// states, i.e. pi^-2 times the integral of chi1 * conj(chi2) over both
/// complex arguments. With S = V1 + V2 and delta = d1 - d2 the integral is
///
///     exp(-delta^T S^-1 delta / 2) / sqrt(det S),
///
/// normalized so that every pure state has unit self-overlap
/// (det 2V = 16 det V = 1). S is factored by Cholesky; log_value is formed
/// first so tiny overlaps keep a finite logarithm.
///
/// Throws std::invalid_argument if either form is not pure and
/// std::runtime_error if V1 + V2 is not positive definite.
OverlapResult pure_overlap(const GaussianForm& g1, const GaussianForm& g2);

}  // namespace tcsfid

#endif  // TCSFID_GAUSSIAN_OVERLAP_HPP
