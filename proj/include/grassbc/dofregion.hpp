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

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "grassbc/schemes.hpp"

// Boost < 1.75 recurses forever on rational == integer under C++20 rewritten
// comparisons. Exact-match overloads take precedence over its templates.
namespace boost {
inline bool operator==(const rational<long long>& a, long long b)
{
    return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<long long>& a, long b) { return a == static_cast<long long>(b); }
inline bool operator==(const rational<long long>& a, int b) { return a == static_cast<long long>(b); }
} // namespace boost

namespace grassbc {

using Rational = boost::rational<long long>;

/// Antenna and coherence parameters that DoF results depend on.
struct DofConfig {
    long M = 0;
    long Nn = 0;
    long Nc = 0;
    long T = 0;

    /// M = max(Nn, Nc).
    static DofConfig make(long Nn, long Nc, long T);
    static DofConfig from(const ChannelConfig& cfg);
    /// Same invariants as ChannelConfig (counts >= 1, M >= max(Nn, Nc), T >= 2 Nn).
    void validate() const;
};

struct DofPoint {
    Rational d1;
    Rational d2;
    std::string label;
};

bool same_coordinates(const DofPoint& a, const DofPoint& b);

/// Convex polygon, vertices counterclockwise starting at the origin.
/// Collinear boundary points are dropped.
struct DofRegion {
    std::vector<DofPoint> vertices;

    bool contains(const Rational& d1, const Rational& d2) const;
    bool contains(const DofPoint& p) const { return contains(p.d1, p.d2); }
    Rational max_d1() const;
    /// Largest d2 in the region at this d1. Throws DomainError outside [0, max_d1].
    Rational upper_boundary_at(const Rational& d1) const;
    /// Vertex with this label, or nullptr.
    const DofPoint* find(std::string_view label) const;
};

/// D1 = (K(1 - K/T), 0) with K = optimal_antennas(M, Nn, T); D2 = (0, min(M, Nc)).
std::pair<DofPoint, DofPoint> baseline_points(const DofConfig& cfg);

/// D3/D4 for grass, D5/D6 for grass_euclid. Throws DomainError for orthogonal.
DofPoint scheme_point(const DofConfig& cfg, Scheme scheme);

/// Same formulas with explicit dimensions: n dynamic streams, Nc static
/// antennas, coherence T. Used for exhaustive checks over smaller dims.
DofPoint grass_point(long n, long Nc, long T);
DofPoint ge_point(long n, long Nc, long T);

/// Convex hull of the points together with the origin (labelled "O").
DofRegion achievable_region(const std::vector<DofPoint>& points);

/// Baseline triangle, or the hull of D1, D2 and the scheme point.
DofRegion scheme_region(const DofConfig& cfg, Scheme scheme);

/// t a + (1 - t) b, t in [0, 1].
DofPoint time_share(const DofPoint& a, const DofPoint& b, const Rational& t);

/// Strict inequality (Nc - (Nc-1)/T) / ((Nc-1)(1 - (Nc-1)/T)) < Nc / (Nn(1 - Nn/T)).
/// Throws DomainError when Nn < Nc. Nc = 1 gives false (no grass point exists).
bool grass_improves(const DofConfig& cfg);

/// Nc > (1 - Nn/T) Nn.
bool ge_improves(const DofConfig& cfg);

struct OuterBounds {
    Rational coherent;      // Nc (1 - d1/Nn)
    Rational more_capable;  // max(0, Nc - d1)
};

/// Throws DomainError unless 0 <= d1 <= Nn.
OuterBounds outer_bounds(const DofConfig& cfg, const Rational& d1);

enum class Optimality { optimal, partial, open };
std::string_view to_string(Optimality o);

Optimality region_is_optimal(const DofConfig& cfg);

/// Coherent outer-bound triangle clipped at d1 <= Nn (1 - Nn/T). Only
/// defined when Nn <= Nc (DomainError otherwise).
DofRegion optimal_region(const DofConfig& cfg);

/// Exact decimal when the denominator has only factors 2 and 5, else "p/q".
std::string format_rational(const Rational& r);
/// Accepts integers, finite decimals and "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Header "label,d1,d2", one vertex per row.
void write_region_csv(std::ostream& out, const DofRegion& region);
DofRegion read_region_csv(std::istream& in);

struct BoundsRow {
    Rational d1;
    OuterBounds bounds;
};

/// `points` values of d1 evenly spaced over [0, Nn] (points >= 2).
std::vector<BoundsRow> sample_outer_bounds(const DofConfig& cfg, long points);
/// Header "d1,coherent_d2,more_capable_d2".
void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows);
std::vector<BoundsRow> read_bounds_csv(std::istream& in);

} // namespace grassbc
