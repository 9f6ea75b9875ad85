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

#include "grassbc/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace grassbc {

ComplexMatrix SvdResult::reconstruct() const
{
    ComplexMatrix sigma = ComplexMatrix::Zero(U.cols(), Vh.rows());
    for (Eigen::Index i = 0; i < singular_values.size(); ++i)
        sigma(i, i) = singular_values(i);
    return U * sigma * Vh;
}

double SvdResult::condition_number() const
{
    const double smin = singular_values(singular_values.size() - 1);
    if (smin <= 0.0)
        return std::numeric_limits<double>::infinity();
    return singular_values(0) / smin;
}

Complex complex_gaussian(Rng& rng)
{
    std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
    const double re = dist(rng);
    const double im = dist(rng);
    return {re, im};
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    ComplexMatrix out(rows, cols);
    // Fill row-major so the stream order matches the logical entry order.
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            out(r, c) = complex_gaussian(rng);
    return out;
}

ComplexMatrix orthonormalize_rows(const ComplexMatrix& a)
{
    const Eigen::Index k = a.rows();
    const Eigen::Index n = a.cols();
    if (k < 1 || k > n)
        throw DimensionError("orthonormalize_rows: need 1 <= rows <= cols, got "
                             + std::to_string(k) + "x" + std::to_string(n));

    // A^H = Q R  =>  A = R^H Q^H, rows of Q^H orthonormal.
    Eigen::HouseholderQR<ComplexMatrix> qr(a.adjoint());
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < k; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag == 0.0)
            throw DegenerateInputError("orthonormalize_rows: rank-deficient input");
        q.col(j) *= r(j, j) / mag;
    }
    return q.adjoint();
}

ComplexMatrix haar_unitary(Eigen::Index k, Eigen::Index n, Rng& rng)
{
    if (k < 1 || k > n)
        throw DimensionError("haar_unitary: need 1 <= k <= n, got k=" + std::to_string(k)
                             + ", n=" + std::to_string(n));
    return orthonormalize_rows(gaussian_matrix(k, n, rng));
}

SvdResult svd(const ComplexMatrix& a)
{
    Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
}

ComplexMatrix inverse(const ComplexMatrix& a)
{
    if (a.rows() != a.cols())
        throw DimensionError("inverse: matrix is " + std::to_string(a.rows()) + "x"
                             + std::to_string(a.cols()) + ", not square");
    const double cond = svd(a).condition_number();
    if (!(cond <= kMaxConditionNumber))
        throw SingularityError("inverse: condition number " + std::to_string(cond)
                               + " exceeds 1e8");
    return a.partialPivLu().inverse();
}

double proj_energy(const ComplexMatrix& y, const ComplexMatrix& x)
{
    if (y.cols() != x.cols())
        throw DimensionError("proj_energy: Y has " + std::to_string(y.cols())
                             + " columns, X has " + std::to_string(x.cols()));
    return (y * x.adjoint()).squaredNorm();
}

double max_abs(const ComplexMatrix& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexMatrix& a)
{
    return max_abs(a * a.adjoint() - ComplexMatrix::Identity(a.rows(), a.rows()));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    // splitmix64 finalizer applied over the three words
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

} // namespace grassbc
