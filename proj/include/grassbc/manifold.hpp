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

#include <functional>
#include <vector>

#include "grassbc/numerics.hpp"

namespace grassbc {

inline constexpr double kGrassmannBasisTol = 1e-10;
/// Chordal distance below which two points count as the same subspace.
inline constexpr double kSameSubspaceTol = 1e-9;
/// Smallest singular value a pivot block must exceed in canonical_rep.
inline constexpr double kPivotTol = 1e-8;

/// A k-dimensional subspace of C^n, held through a k x n basis with
/// orthonormal rows. The subspace is the row space of the basis.
class GrassmannPoint {
public:
    /// Throws ValidationError if the rows are not orthonormal within 1e-10,
    /// DimensionError unless 0 < k < n.
    explicit GrassmannPoint(ComplexMatrix basis);

    /// Row space of an arbitrary full-row-rank matrix.
    static GrassmannPoint from_span(const ComplexMatrix& rows);

    const ComplexMatrix& basis() const { return basis_; }
    Eigen::Index k() const { return basis_.rows(); }
    Eigen::Index n() const { return basis_.cols(); }

private:
    ComplexMatrix basis_;
};

/// Reduced representative U * Q = [I_k at the pivot columns | free params].
struct CanonicalForm {
    std::vector<Eigen::Index> pivot_block_cols; // ascending, k entries
    ComplexMatrix free_params;                  // k x (n-k), non-pivot columns in order
    ComplexMatrix coefficient;                  // k x k, canonical = coefficient * source

    /// The k x n canonical matrix: identity at the pivots, free_params elsewhere.
    ComplexMatrix reassemble() const;
};

/// Complex dimension k(n-k) of G(n, k). Throws DomainError unless 0 < k < n.
long grassmann_dim(long n, long k);

/// Canonical representative of the row space of a full-row-rank k x n matrix.
///
/// Pivot columns are chosen greedily left to right: column j joins the
/// pivot set when the selected columns' smallest singular value stays above
/// kPivotTol. Any U * Q with U full-rank k x k gives the same free_params.
/// Throws DegenerateInputError if fewer than k pivots exist.
CanonicalForm canonical_rep(const ComplexMatrix& basis);
CanonicalForm canonical_rep(const GrassmannPoint& p);

/// sqrt(k - ||P Q^H||_F^2); zero iff same subspace, sqrt(k) for orthogonal ones.
double chordal_distance(const GrassmannPoint& p, const GrassmannPoint& q);

/// Volume of the Stiefel manifold F(n, k): prod_{i=n-k+1}^{n} 2 pi^i / (i-1)!
double stiefel_volume(long n, long k);

/// Natural log of stiefel_volume, stable for large n.
double log_stiefel_volume(long n, long k);

/// (1/trials) * sum of q1^H q1 over the first rows q1 of sampled matrices.
/// The sampler must return matrices with T columns.
ComplexMatrix empirical_row_autocorr(const std::function<ComplexMatrix()>& sampler,
                                     Eigen::Index T, long trials);

} // namespace grassbc
