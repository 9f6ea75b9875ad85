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

#include "grassbc/manifold.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace grassbc {

GrassmannPoint::GrassmannPoint(ComplexMatrix basis)
    : basis_(std::move(basis))
{
    if (basis_.rows() < 1 || basis_.rows() >= basis_.cols())
        throw DimensionError("GrassmannPoint: need 0 < k < n, got k="
                             + std::to_string(basis_.rows()) + ", n="
                             + std::to_string(basis_.cols()));
    const double residual = unitarity_residual(basis_);
    if (!(residual <= kGrassmannBasisTol))
        throw ValidationError("GrassmannPoint: basis rows not orthonormal (residual "
                              + std::to_string(residual) + ")");
}

GrassmannPoint GrassmannPoint::from_span(const ComplexMatrix& rows)
{
    return GrassmannPoint(orthonormalize_rows(rows));
}

ComplexMatrix CanonicalForm::reassemble() const
{
    const Eigen::Index k = free_params.rows();
    const Eigen::Index n = k + free_params.cols();
    ComplexMatrix out = ComplexMatrix::Zero(k, n);
    std::size_t p = 0;
    Eigen::Index f = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (p < pivot_block_cols.size() && pivot_block_cols[p] == j) {
            out(static_cast<Eigen::Index>(p), j) = 1.0;
            ++p;
        } else {
            out.col(j) = free_params.col(f++);
        }
    }
    return out;
}

long grassmann_dim(long n, long k)
{
    if (k <= 0 || k >= n)
        throw DomainError("grassmann_dim: need 0 < k < n, got n=" + std::to_string(n)
                          + ", k=" + std::to_string(k));
    return k * (n - k);
}

CanonicalForm canonical_rep(const ComplexMatrix& basis)
{
    const Eigen::Index k = basis.rows();
    const Eigen::Index n = basis.cols();
    if (k < 1 || k >= n)
        throw DimensionError("canonical_rep: need 0 < k < n");

    // Scale-free pivot test: compare against the basis' own spectral norm.
    const double scale = svd(basis).singular_values(0);
    if (scale == 0.0)
        throw DegenerateInputError("canonical_rep: zero basis");

    CanonicalForm out;
    ComplexMatrix block(k, 0);
    for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(out.pivot_block_cols.size()) < k; ++j) {
        ComplexMatrix trial(k, block.cols() + 1);
        trial << block, basis.col(j);
        const RealVector sv = svd(trial).singular_values;
        if (sv(sv.size() - 1) > kPivotTol * scale) {
            block = std::move(trial);
            out.pivot_block_cols.push_back(j);
        }
    }
    if (static_cast<Eigen::Index>(out.pivot_block_cols.size()) < k)
        throw DegenerateInputError("canonical_rep: numerical rank "
                                   + std::to_string(out.pivot_block_cols.size())
                                   + " < k=" + std::to_string(k));

    out.coefficient = block.partialPivLu().inverse();
    const ComplexMatrix canonical = out.coefficient * basis;
    out.free_params.resize(k, n - k);
    std::size_t p = 0;
    Eigen::Index f = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (p < out.pivot_block_cols.size() && out.pivot_block_cols[p] == j)
            ++p;
        else
            out.free_params.col(f++) = canonical.col(j);
    }
    return out;
}

CanonicalForm canonical_rep(const GrassmannPoint& p)
{
    return canonical_rep(p.basis());
}

double chordal_distance(const GrassmannPoint& p, const GrassmannPoint& q)
{
    if (p.k() != q.k() || p.n() != q.n())
        throw DimensionError("chordal_distance: shape mismatch");
    // ||Q (I - P^H P)||_F equals sqrt(k - ||P Q^H||^2) without the cancellation.
    const ComplexMatrix residual = q.basis() - (q.basis() * p.basis().adjoint()) * p.basis();
    return residual.norm();
}

double stiefel_volume(long n, long k)
{
    if (k < 1 || k > n)
        throw DomainError("stiefel_volume: need 1 <= k <= n");
    double vol = 1.0;
    for (long i = n - k + 1; i <= n; ++i)
        vol *= 2.0 * std::pow(std::numbers::pi, static_cast<double>(i))
               / std::tgamma(static_cast<double>(i));
    return vol;
}

double log_stiefel_volume(long n, long k)
{
    if (k < 1 || k > n)
        throw DomainError("log_stiefel_volume: need 1 <= k <= n");
    double acc = 0.0;
    for (long i = n - k + 1; i <= n; ++i)
        acc += std::log(2.0) + static_cast<double>(i) * std::log(std::numbers::pi)
               - std::lgamma(static_cast<double>(i));
    return acc;
}

ComplexMatrix empirical_row_autocorr(const std::function<ComplexMatrix()>& sampler,
                                     Eigen::Index T, long trials)
{
    if (trials < 1)
        throw PreconditionError("empirical_row_autocorr: trials must be >= 1");
    ComplexMatrix acc = ComplexMatrix::Zero(T, T);
    for (long t = 0; t < trials; ++t) {
        const ComplexMatrix q = sampler();
        if (q.cols() != T)
            throw DimensionError("empirical_row_autocorr: sampler returned wrong width");
        acc.noalias() += q.row(0).adjoint() * q.row(0);
    }
    return acc / static_cast<double>(trials);
}

} // namespace grassbc
