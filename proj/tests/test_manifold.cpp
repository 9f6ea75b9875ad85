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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grassbc/manifold.hpp"
#include "oracles.hpp"

using namespace grassbc;

namespace {

ComplexMatrix unit_row(int n, int j)
{
    ComplexMatrix e = ComplexMatrix::Zero(1, n);
    e(0, j) = 1.0;
    return e;
}

} // namespace

TEST_CASE("GrassmannPoint: validation")
{
    Rng rng(1);
    CHECK_NOTHROW(GrassmannPoint(haar_unitary(2, 4, rng)));
    CHECK_THROWS_AS(GrassmannPoint(haar_unitary(4, 4, rng)), DimensionError);
    CHECK_THROWS_AS(GrassmannPoint(2.0 * haar_unitary(1, 3, rng)), ValidationError);

    const ComplexMatrix raw = gaussian_matrix(2, 5, rng);
    const GrassmannPoint p = GrassmannPoint::from_span(raw);
    CHECK(unitarity_residual(p.basis()) < kGrassmannBasisTol);
    CHECK(chordal_distance(p, GrassmannPoint::from_span(raw.reverse())) > 0.0);
    // Same row space as the raw rows.
    CHECK(proj_energy(raw, p.basis()) == doctest::Approx(raw.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("grassmann_dim: examples, symmetry, domain")
{
    CHECK(grassmann_dim(2, 1) == 1);
    CHECK(grassmann_dim(8, 2) == 12);
    CHECK(grassmann_dim(3, 2) == 2);
    CHECK(grassmann_dim(3, 1) == 2);
    for (long n = 2; n <= 10; ++n)
        for (long k = 1; k < n; ++k)
            CHECK(grassmann_dim(n, k) == grassmann_dim(n, n - k));
    CHECK_THROWS_AS(grassmann_dim(4, 4), DomainError);
    CHECK_THROWS_AS(grassmann_dim(4, 0), DomainError);
}

TEST_CASE("canonical_rep: already canonical input")
{
    Rng rng(3);
    const ComplexMatrix b = gaussian_matrix(2, 3, rng);
    ComplexMatrix m(2, 5);
    m << ComplexMatrix::Identity(2, 2), b;
    const CanonicalForm cf = canonical_rep(m);
    CHECK(cf.pivot_block_cols == std::vector<Eigen::Index>{0, 1});
    CHECK(max_abs(cf.free_params - b) < 1e-12);
    CHECK(max_abs(cf.coefficient - ComplexMatrix::Identity(2, 2)) < 1e-12);
    CHECK(cf.free_params.size() == grassmann_dim(5, 2));
}

TEST_CASE("canonical_rep: invariant under full-rank left factors")
{
    Rng rng(7);
    const GrassmannPoint p(haar_unitary(2, 5, rng));
    const CanonicalForm ref = canonical_rep(p);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix u = gaussian_matrix(2, 2, rng);
        const CanonicalForm cf = canonical_rep(u * p.basis());
        CHECK(cf.pivot_block_cols == ref.pivot_block_cols);
        CHECK(max_abs(cf.free_params - ref.free_params) < 1e-9);
    }
}

TEST_CASE("canonical_rep: zero leading column is skipped")
{
    Rng rng(9);
    ComplexMatrix m = gaussian_matrix(2, 4, rng);
    m.col(0).setZero();
    const CanonicalForm cf = canonical_rep(m);
    CHECK(cf.pivot_block_cols == std::vector<Eigen::Index>{1, 2});
    CHECK(cf.free_params.size() == grassmann_dim(4, 2));
}

TEST_CASE("canonical_rep: reassembly preserves the subspace and is idempotent")
{
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const GrassmannPoint p(haar_unitary(2, 6, rng));
        const CanonicalForm cf = canonical_rep(p);
        const ComplexMatrix r = cf.reassemble();
        CHECK(max_abs(r - cf.coefficient * p.basis()) < 1e-9);
        CHECK(chordal_distance(p, GrassmannPoint::from_span(r)) < kSameSubspaceTol);
        const CanonicalForm again = canonical_rep(r);
        CHECK(again.pivot_block_cols == cf.pivot_block_cols);
        CHECK(max_abs(again.free_params - cf.free_params) < 1e-9);
    }
}

TEST_CASE("canonical_rep: rank-deficient input is degenerate")
{
    ComplexMatrix m = ComplexMatrix::Zero(2, 4);
    m(0, 1) = 1.0;
    m(1, 1) = 2.0;
    CHECK_THROWS_AS(canonical_rep(m), DegenerateInputError);
}

TEST_CASE("chordal_distance: examples")
{
    Rng rng(2);
    const GrassmannPoint p(haar_unitary(2, 4, rng));
    CHECK(chordal_distance(p, p) < 1e-10);
    CHECK(chordal_distance(GrassmannPoint(unit_row(2, 0)), GrassmannPoint(unit_row(2, 1)))
          == doctest::Approx(1.0));

    ComplexMatrix a = ComplexMatrix::Zero(2, 4), b = ComplexMatrix::Zero(2, 4);
    a(0, 0) = a(1, 1) = 1.0;
    b(0, 2) = b(1, 3) = 1.0;
    CHECK(chordal_distance(GrassmannPoint(a), GrassmannPoint(b)) == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(chordal_distance(p, GrassmannPoint(haar_unitary(1, 4, rng))), DimensionError);
}

TEST_CASE("chordal_distance: principal-angle oracle on G(4,2)")
{
    Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        const GrassmannPoint p(haar_unitary(2, 4, rng)), q(haar_unitary(2, 4, rng));
        CHECK(chordal_distance(p, q)
              == doctest::Approx(oracle::chordal_from_angles(p.basis(), q.basis())).epsilon(1e-10));
    }
}

TEST_CASE("chordal_distance: symmetry and triangle inequality")
{
    Rng rng(15);
    for (int trial = 0; trial < 1000; ++trial) {
        const GrassmannPoint a(haar_unitary(2, 4, rng)), b(haar_unitary(2, 4, rng)),
            c(haar_unitary(2, 4, rng));
        const double ab = chordal_distance(a, b), ba = chordal_distance(b, a);
        CHECK(std::abs(ab - ba) < 1e-12);
        CHECK(chordal_distance(a, c) <= ab + chordal_distance(b, c) + 1e-9);
    }
}

TEST_CASE("stiefel_volume: closed forms")
{
    const double pi = std::numbers::pi;
    CHECK(std::abs(stiefel_volume(2, 1) / (2 * pi * pi) - 1.0) < 1e-12);
    CHECK(std::abs(stiefel_volume(1, 1) / (2 * pi) - 1.0) < 1e-12);
    CHECK(std::abs(stiefel_volume(3, 2) / (2 * std::pow(pi, 5)) - 1.0) < 1e-12);
    long double fact = 1.0L;
    for (int n = 1; n <= 4; ++n) {
        if (n > 1)
            fact *= (n - 1);
        const long double sphere = 2.0L * std::pow(static_cast<long double>(pi), n) / fact;
        CHECK(std::abs(stiefel_volume(n, 1) / static_cast<double>(sphere) - 1.0) < 1e-12);
    }
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            const double ref = static_cast<double>(oracle::stiefel_volume_ld(n, k));
            CHECK(std::abs(stiefel_volume(n, k) / ref - 1.0) < 1e-12);
            CHECK(std::abs(log_stiefel_volume(n, k) - std::log(ref)) < 1e-11);
        }
}

TEST_CASE("empirical_row_autocorr")
{
    const ComplexMatrix constant =
        empirical_row_autocorr([] { return ComplexMatrix(ComplexMatrix::Identity(3, 3)); }, 3, 10);
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK(max_abs(constant - expected) == 0.0);

    Rng rng(77);
    for (int T : {2, 4}) {
        const ComplexMatrix r =
            empirical_row_autocorr([&] { return haar_unitary(1, T, rng); }, T, 100000);
        CHECK(max_abs(r - ComplexMatrix::Identity(T, T) / double(T)) < 0.01);
    }
}
