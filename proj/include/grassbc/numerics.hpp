// SPDX-License-Identifier: Apache-2.0
//
// grassbc: product-superposition MIMO broadcast simulator
// Copyright (C) 2026 The grassbc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "grassbc/errors.hpp"

namespace grassbc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Every consumer owns its own stream; streams are never shared across threads.
using Rng = std::mt19937_64;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kReconstructionTol = 1e-10;
inline constexpr double kInverseTol = 1e-9;
inline constexpr double kMaxConditionNumber = 1e8;

/// A = U * diag(singular_values) * Vh, with full (square) U and Vh.
struct SvdResult {
    ComplexMatrix U;
    RealVector singular_values; // descending
    ComplexMatrix Vh;

    ComplexMatrix reconstruct() const;
    double condition_number() const; // +inf when the smallest value is zero
};

/// One draw of CN(0, 1): independent real/imaginary parts with variance 1/2.
Complex complex_gaussian(Rng& rng);

/// rows x cols matrix of i.i.d. CN(0, 1) entries.
ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Orthonormalizes the rows of a full-row-rank matrix A (k x n, k <= n).
///
/// Computes A = L Q with L lower triangular and Q having orthonormal rows,
/// then fixes the gauge so that diag(L) is real and positive. The gauge fix
/// makes the factorization unique, which is what turns a Gaussian fill into
/// an exactly Haar-distributed sample.
ComplexMatrix orthonormalize_rows(const ComplexMatrix& a);

/// Haar-distributed k x n matrix with orthonormal rows (a point on the
/// Stiefel manifold). Throws DimensionError unless 1 <= k <= n.
ComplexMatrix haar_unitary(Eigen::Index k, Eigen::Index n, Rng& rng);

SvdResult svd(const ComplexMatrix& a);

/// Inverse of a square matrix. Throws SingularityError when the condition
/// number exceeds kMaxConditionNumber.
ComplexMatrix inverse(const ComplexMatrix& a);

/// tr(Y X^H X Y^H): energy of the rows of Y projected onto the row space of X.
double proj_energy(const ComplexMatrix& y, const ComplexMatrix& x);

/// max_ij |A_ij|
double max_abs(const ComplexMatrix& a);

/// ||A A^H - I||_max, the row-orthonormality residual.
double unitarity_residual(const ComplexMatrix& a);

/// Deterministic child seed for (seed, a, b); used for per-trial streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

} // namespace grassbc
