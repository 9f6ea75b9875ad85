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

#include <random>
#include <set>
#include <sstream>

#include "grassbc/dofregion.hpp"
#include "oracles.hpp"

using namespace grassbc;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

bool has_vertex(const DofRegion& r, const Rational& x, const Rational& y)
{
    for (const auto& v : r.vertices)
        if (v.d1 == x && v.d2 == y)
            return true;
    return false;
}

} // namespace

TEST_CASE("baseline_points")
{
    auto [a, b] = baseline_points(DofConfig::make(1, 2, 2));
    CHECK(a.d1 == R(1, 2));
    CHECK(a.d2 == R(0));
    CHECK(b.d1 == R(0));
    CHECK(b.d2 == R(2));

    std::tie(a, b) = baseline_points(DofConfig::make(2, 4, 8));
    CHECK(a.d1 == R(3, 2));
    CHECK(b.d2 == R(4));

    // K = T/2 gives T/4.
    std::tie(a, b) = baseline_points(DofConfig::make(4, 4, 8));
    CHECK(a.d1 == R(2));
    CHECK_THROWS_AS(baseline_points(DofConfig::make(2, 4, 3)), ConfigError);
}

TEST_CASE("scheme_point: D3 to D6")
{
    const DofPoint d3 = scheme_point(DofConfig::make(2, 4, 8), Scheme::grass);
    CHECK(d3.label == "D3");
    CHECK(d3.d1 == R(3, 2));
    CHECK(d3.d2 == R(1, 2));

    const DofPoint d5 = scheme_point(DofConfig::make(2, 4, 8), Scheme::grass_euclid);
    CHECK(d5.label == "D5");
    CHECK(d5.d1 == R(3, 2));
    CHECK(d5.d2 == R(1));

    const DofPoint d6 = scheme_point(DofConfig::make(4, 3, 8), Scheme::grass_euclid);
    CHECK(d6.label == "D6");
    CHECK(d6.d1 == R(15, 8));
    CHECK(d6.d2 == R(9, 8));

    const DofPoint d4 = scheme_point(DofConfig::make(4, 4, 8), Scheme::grass);
    CHECK(d4.label == "D4");
    CHECK(d4.d1 == R(3) * (1 - R(3, 8)));
    CHECK(d4.d2 == R(3, 8));

    // T = 2Nn, Nn <= Nc: D5 = (Nn/2, Nc/2).
    for (long nn = 1; nn <= 4; ++nn)
        for (long nc = nn; nc <= 6; ++nc) {
            const DofPoint p = scheme_point(DofConfig::make(nn, nc, 2 * nn), Scheme::grass_euclid);
            CHECK(p.d1 == R(nn, 2));
            CHECK(p.d2 == R(nc, 2));
        }
    CHECK_THROWS_AS(scheme_point(DofConfig::make(2, 4, 8), Scheme::orthogonal), DomainError);
}

TEST_CASE("D5 exceeds D3 in d2 by exactly Nn^2/T")
{
    for (long nc = 2; nc <= 8; ++nc)
        for (long nn = 1; nn < nc; ++nn)
            for (long T = 2 * nn; T <= 16; ++T) {
                const auto cfg = DofConfig::make(nn, nc, T);
                const DofPoint d3 = scheme_point(cfg, Scheme::grass);
                const DofPoint d5 = scheme_point(cfg, Scheme::grass_euclid);
                CHECK(d5.d1 == d3.d1);
                CHECK(d5.d2 - d3.d2 == R(nn * nn, T));
            }
}

TEST_CASE("D3 moves monotonically with T")
{
    for (long nc = 2; nc <= 8; ++nc)
        for (long nn = 1; nn < nc; ++nn)
            for (long T = 2 * nn; T < 16; ++T) {
                const DofPoint a = scheme_point(DofConfig::make(nn, nc, T), Scheme::grass);
                const DofPoint b = scheme_point(DofConfig::make(nn, nc, T + 1), Scheme::grass);
                CHECK(a.d1 <= b.d1);
                CHECK(a.d2 >= b.d2);
            }
}

TEST_CASE("achievable_region: triangle, toy regions, interior exclusion")
{
    const auto [d1, d2] = baseline_points(DofConfig::make(2, 4, 8));
    const DofRegion tri = achievable_region({d1, d2});
    REQUIRE(tri.vertices.size() == 3);
    CHECK(tri.vertices[0].label == "O");
    CHECK(tri.vertices[1].label == "D1");
    CHECK(tri.vertices[2].label == "D2");

    // Toy 1: boundary segment (t/2, 2 - 3t/2).
    const DofRegion toy1 = scheme_region(DofConfig::make(1, 2, 2), Scheme::grass);
    for (const Rational t : {R(0), R(1, 2), R(1)}) {
        const DofPoint p = time_share(*toy1.find("D3"), *toy1.find("D2"), t);
        CHECK(p.d1 == t / 2);
        CHECK(p.d2 == 2 - 3 * t / 2);
        CHECK(toy1.upper_boundary_at(p.d1) == p.d2);
    }

    // Toy 2: Nn = Nc = M = 1, T = 2: (t/2, 1 - t/2).
    const DofRegion toy2 = scheme_region(DofConfig::make(1, 1, 2), Scheme::grass_euclid);
    for (const Rational t : {R(0), R(1, 4), R(1, 2), R(1)}) {
        const DofPoint p = time_share(*toy2.find("D5"), *toy2.find("D2"), t);
        CHECK(p.d1 == t / 2);
        CHECK(p.d2 == 1 - t / 2);
        CHECK(toy2.upper_boundary_at(p.d1) == p.d2);
    }

    const DofRegion with_inner = achievable_region({d1, d2, {R(1, 2), R(1, 2), "X"}});
    CHECK(with_inner.find("X") == nullptr);
    CHECK(with_inner.contains(R(1, 2), R(1, 2)));
}

TEST_CASE("achievable_region: matches a brute-force hull on random points")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(0, 12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DofPoint> pts;
        std::vector<oracle::P2> raw{{R(0), R(0)}};
        for (int i = 0; i < 20; ++i) {
            const Rational x(coord(rng), 4), y(coord(rng), 3);
            pts.push_back({x, y, "P" + std::to_string(i)});
            raw.push_back({x, y});
        }
        const DofRegion region = achievable_region(pts);
        const auto expect = oracle::hull_vertices_bruteforce(raw);
        CHECK(region.vertices.size() == expect.size());
        for (const auto& e : expect)
            CHECK(has_vertex(region, e.x, e.y));
        // Counterclockwise from the origin.
        CHECK(region.vertices[0].d1 == R(0));
        CHECK(region.vertices[0].d2 == R(0));
        const std::size_t n = region.vertices.size();
        for (std::size_t i = 0; n >= 3 && i < n; ++i) {
            const auto& a = region.vertices[i];
            const auto& b = region.vertices[(i + 1) % n];
            const auto& c = region.vertices[(i + 2) % n];
            CHECK((b.d1 - a.d1) * (c.d2 - a.d2) - (b.d2 - a.d2) * (c.d1 - a.d1) > 0);
        }
        for (const auto& p : pts)
            CHECK(region.contains(p));
    }
}

TEST_CASE("DofRegion::contains and upper_boundary_at")
{
    const DofRegion r = scheme_region(DofConfig::make(2, 4, 8), Scheme::grass);
    CHECK(r.contains(R(0), R(4)));
    CHECK(r.contains(R(3, 2), R(1, 2)));
    CHECK_FALSE(r.contains(R(3, 2), R(1)));
    CHECK_FALSE(r.contains(R(2), R(0)));
    CHECK(r.upper_boundary_at(R(3, 2)) == R(1, 2));
    CHECK(r.upper_boundary_at(R(0)) == R(4));
    CHECK_THROWS_AS(r.upper_boundary_at(R(2)), DomainError);
}

TEST_CASE("grass_improves")
{
    CHECK(grass_improves(DofConfig::make(4, 4, 8)));
    CHECK_FALSE(grass_improves(DofConfig::make(8, 2, 100)));
    // Boundary case Nn = Nc = 2, T = 4: LHS = (2 - 1/4)/(3/4) = 7/3, RHS = 2/(2 * 1/2) = 2.
    const Rational lhs = (R(2) - R(1, 4)) / (R(1) * (1 - R(1, 4)));
    const Rational rhs = R(2) / (R(2) * (1 - R(2, 4)));
    CHECK(grass_improves(DofConfig::make(2, 2, 4)) == (lhs < rhs));
    CHECK_FALSE(grass_improves(DofConfig::make(2, 1, 4)));
    CHECK_THROWS_AS(grass_improves(DofConfig::make(2, 4, 8)), DomainError);
}

TEST_CASE("ge_improves")
{
    CHECK(ge_improves(DofConfig::make(4, 3, 8)));
    CHECK_FALSE(ge_improves(DofConfig::make(4, 2, 8)));
    for (long nn = 1; nn <= 6; ++nn)
        for (long nc = nn; nc <= 8; ++nc)
            for (long T = 2 * nn; T <= 16; ++T)
                CHECK(ge_improves(DofConfig::make(nn, nc, T)));
}

TEST_CASE("outer_bounds")
{
    const auto c = DofConfig::make(2, 4, 8);
    CHECK(outer_bounds(c, R(0)).coherent == R(4));
    CHECK(outer_bounds(c, R(0)).more_capable == R(4));
    CHECK(outer_bounds(c, R(3, 2)).coherent == R(1));
    CHECK(outer_bounds(DofConfig::make(4, 3, 8), R(15, 8)).more_capable == R(9, 8));
    CHECK_THROWS_AS(outer_bounds(c, R(3)), DomainError);
    CHECK_THROWS_AS(outer_bounds(c, R(-1)), DomainError);
}

TEST_CASE("region_is_optimal and optimal_region")
{
    CHECK(region_is_optimal(DofConfig::make(2, 4, 8)) == Optimality::optimal);
    CHECK(region_is_optimal(DofConfig::make(4, 3, 8)) == Optimality::partial);
    CHECK(region_is_optimal(DofConfig::make(8, 2, 100)) == Optimality::open);

    for (long nn = 1; nn <= 4; ++nn)
        for (long nc = nn; nc <= 6; ++nc)
            for (long T = 2 * nn; T <= 12; ++T) {
                const auto cfg = DofConfig::make(nn, nc, T);
                const DofRegion ach = scheme_region(cfg, Scheme::grass_euclid);
                const DofRegion opt = optimal_region(cfg);
                for (const auto& v : opt.vertices)
                    CHECK(ach.contains(v));
                for (const auto& v : ach.vertices)
                    CHECK(opt.contains(v));
            }
    CHECK_THROWS_AS(optimal_region(DofConfig::make(4, 3, 8)), DomainError);
}

TEST_CASE("scheme-1 hull with full dims contains every smaller-dims point")
{
    long checked = 0;
    for (long nc = 2; nc <= 8; ++nc)
        for (long nn = 1; nn < nc; ++nn)
            for (long T = 2 * nn; T <= 16; ++T) {
                const DofRegion full = scheme_region(DofConfig::make(nn, nc, T), Scheme::grass);
                for (long n = 1; n <= nn; ++n)
                    for (long th = 2 * n; th <= T; ++th) {
                        const DofPoint p = grass_point(n, nc, th);
                        CHECK_MESSAGE(full.contains(p), "Nn=", nn, " Nc=", nc, " T=", T, " n=", n, " That=", th);
                        ++checked;
                    }
            }
    CHECK(checked > 1000);
}

TEST_CASE("scheme-1 full-dimension failures lie past the slope stationary point")
{
    // Slope from D2 to grass_point(x, Nc, T) is (x(Nc - x) - Nc T) / (x (T - x)).
    // Its x-derivative has numerator (Nc - T) x^2 - 2 Nc T x + Nc T^2, which
    // vanishes at x* = T sqrt(Nc) / (sqrt(T) + sqrt(Nc)). Using all Nn antennas
    // can only lose to a smaller n when Nn > x*.
    for (long nc = 2; nc <= 8; ++nc)
        for (long nn = 1; nn < nc; ++nn)
            for (long T = 2 * nn; T <= 16; ++T) {
                const DofRegion full = scheme_region(DofConfig::make(nn, nc, T), Scheme::grass);
                bool any_outside = false;
                for (long n = 1; n < nn; ++n)
                    any_outside = any_outside || !full.contains(grass_point(n, nc, T));
                const double xstar = T * std::sqrt(double(nc)) / (std::sqrt(double(T)) + std::sqrt(double(nc)));
                if (any_outside)
                    CHECK_MESSAGE(nn > xstar, "Nn=", nn, " Nc=", nc, " T=", T);
            }
    // A concrete case: (Nn, Nc, T) = (5, 6, 10) with n = 4 reaches (2.4, 0.8),
    // above the segment from D2 = (0, 6) to D3 = (2.5, 0.5).
    const DofRegion r = scheme_region(DofConfig::make(5, 6, 10), Scheme::grass);
    const DofPoint p4 = grass_point(4, 6, 10);
    CHECK(p4.d1 == R(12, 5));
    CHECK(p4.d2 == R(4, 5));
    CHECK(r.upper_boundary_at(p4.d1) == R(18, 25));
}

TEST_CASE("rational text format")
{
    CHECK(format_rational(R(3, 2)) == "1.5");
    CHECK(format_rational(R(15, 8)) == "1.875");
    CHECK(format_rational(R(-1, 4)) == "-0.25");
    CHECK(format_rational(R(4)) == "4");
    CHECK(format_rational(R(29, 15)) == "29/15");
    CHECK(format_rational(R(1, 100)) == "0.01");
    for (const Rational r : {R(3, 2), R(15, 8), R(-1, 4), R(29, 15), R(0), R(7), R(1, 1024), R(-3, 7)})
        CHECK(parse_rational(format_rational(r)) == r);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.-5"), ParseError);
}

TEST_CASE("region and bounds CSV round trip")
{
    const DofRegion r = scheme_region(DofConfig::make(4, 3, 8), Scheme::grass_euclid);
    std::stringstream ss;
    write_region_csv(ss, r);
    CHECK(ss.str().rfind("label,d1,d2\n", 0) == 0);
    CHECK(ss.str().find("D6,1.875,1.125") != std::string::npos);
    const DofRegion back = read_region_csv(ss);
    REQUIRE(back.vertices.size() == r.vertices.size());
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
        CHECK(back.vertices[i].label == r.vertices[i].label);
        CHECK(back.vertices[i].d1 == r.vertices[i].d1);
        CHECK(back.vertices[i].d2 == r.vertices[i].d2);
    }

    const auto rows = sample_outer_bounds(DofConfig::make(2, 4, 8), 11);
    CHECK(rows.size() == 11);
    CHECK(rows.back().d1 == R(2));
    std::stringstream bs;
    write_bounds_csv(bs, rows);
    const auto rows_back = read_bounds_csv(bs);
    REQUIRE(rows_back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows_back[i].d1 == rows[i].d1);
        CHECK(rows_back[i].bounds.coherent == rows[i].bounds.coherent);
        CHECK(rows_back[i].bounds.more_capable == rows[i].bounds.more_capable);
    }

    std::stringstream bad("label,d1,d2\nD1,abc,0\n");
    try {
        read_region_csv(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
