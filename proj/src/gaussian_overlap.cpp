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

#include "tcsfid/gaussian_overlap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcsfid {

namespace {

void require_pure(const GaussianForm& form, const char* which) {
    const double det = form.covariance.determinant();
    if (!(std::abs(det - 1.0 / 16.0) <= kPurityTolerance)) {
        throw std::invalid_argument(std::string(which) + " is not a pure two-mode Gaussian form");
    }
}

}  // namespace

OverlapResult pure_overlap(const GaussianForm& g1, const GaussianForm& g2) {
    require_pure(g1, "first form");
    require_pure(g2, "second form");

    const Eigen::Matrix4d sum = g1.covariance + g2.covariance;
    const Eigen::LLT<Eigen::Matrix4d> llt(sum);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("V1 + V2 is not positive definite");
    }
    const Eigen::Vector4d delta = g1.displacement - g2.displacement;
    const double quadratic = delta.dot(llt.solve(delta));
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();

    const double log_value = -0.5 * quadratic - 0.5 * log_det;
    return {std::exp(log_value), log_value};
}

}  // namespace tcsfid
