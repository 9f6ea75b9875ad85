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

#include "grassbc/dofregion.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "grassbc/errors.hpp"

namespace grassbc {

DofConfig DofConfig::make(long Nn, long Nc, long T)
{
    return {std::max(Nn, Nc), Nn, Nc, T};
}

DofConfig DofConfig::from(const ChannelConfig& cfg)
{
    return {cfg.M, cfg.Nn, cfg.Nc, cfg.T};
}

void DofConfig::validate() const
{
    if (Nn < 1 || Nc < 1 || M < 1)
        throw ConfigError("invariant M, Nn, Nc >= 1 violated");
    if (M < std::max(Nn, Nc))
        throw ConfigError("invariant M >= max(Nn, Nc) violated");
    if (T < 2 * Nn)
        throw ConfigError("invariant T >= 2Nn violated (T=" + std::to_string(T)
                          + ", Nn=" + std::to_string(Nn) + ")");
}

bool same_coordinates(const DofPoint& a, const DofPoint& b)
{
    return a.d1 == b.d1 && a.d2 == b.d2;
}

namespace {

// (b - a) x (c - a)
Rational cross(const DofPoint& a, const DofPoint& b, const DofPoint& c)
{
    return (b.d1 - a.d1) * (c.d2 - a.d2) - (b.d2 - a.d2) * (c.d1 - a.d1);
}

bool lex_less(const DofPoint& a, const DofPoint& b)
{
    return a.d1 < b.d1 || (a.d1 == b.d1 && a.d2 < b.d2);
}

} // namespace

bool DofRegion::contains(const Rational& d1, const Rational& d2) const
{
    const DofPoint p{d1, d2, ""};
    const std::size_t n = vertices.size();
    if (n == 0)
        return false;
    if (n == 1)
        return same_coordinates(vertices[0], p);
    if (n == 2) {
        const auto& a = vertices[0];
        const auto& b = vertices[1];
        return cross(a, b, p) == 0 && std::min(a.d1, b.d1) <= d1 && d1 <= std::max(a.d1, b.d1)
               && std::min(a.d2, b.d2) <= d2 && d2 <= std::max(a.d2, b.d2);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (cross(vertices[i], vertices[(i + 1) % n], p) < 0)
            return false;
    return true;
}

Rational DofRegion::max_d1() const
{
    Rational best(0);
    for (const auto& v : vertices)
        best = std::max(best, v.d1);
    return best;
}

Rational DofRegion::upper_boundary_at(const Rational& d1) const
{
    if (vertices.empty() || d1 < 0 || d1 > max_d1())
        throw DomainError("upper_boundary_at: d1 = " + format_rational(d1)
                          + " is outside the region's d1 range");
    bool found = false;
    Rational best(0);
    const std::size_t n = vertices.size();
    auto consider = [&](const Rational& v) {
        if (!found || v > best)
            best = v;
        found = true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        const Rational lo = std::min(a.d1, b.d1), hi = std::max(a.d1, b.d1);
        if (d1 < lo || d1 > hi)
            continue;
        if (a.d1 == b.d1) {
            consider(std::max(a.d2, b.d2));
        } else {
            consider(a.d2 + (b.d2 - a.d2) * (d1 - a.d1) / (b.d1 - a.d1));
        }
    }
    return best;
}

const DofPoint* DofRegion::find(std::string_view label) const
{
    for (const auto& v : vertices)
        if (v.label == label)
            return &v;
    return nullptr;
}

std::pair<DofPoint, DofPoint> baseline_points(const DofConfig& cfg)
{
    cfg.validate();
    const long K = optimal_antennas(cfg.M, cfg.Nn, cfg.T);
    const Rational k(K);
    return {DofPoint{k * (1 - Rational(K, cfg.T)), Rational(0), "D1"},
            DofPoint{Rational(0), Rational(std::min(cfg.M, cfg.Nc)), "D2"}};
}

DofPoint grass_point(long n, long Nc, long T)
{
    if (n < 1 || n >= Nc || T < 2 * n)
        throw DomainError("grass_point: need 1 <= n < Nc and T >= 2n");
    return {Rational(n) * (1 - Rational(n, T)), Rational(n * (Nc - n), T), "D3"};
}

DofPoint ge_point(long n, long Nc, long T)
{
    if (n < 1 || n > Nc || T < 2 * n)
        throw DomainError("ge_point: need 1 <= n <= Nc and T >= 2n");
    return {Rational(n) * (1 - Rational(n, T)), Rational(n * Nc, T), "D5"};
}

DofPoint scheme_point(const DofConfig& cfg, Scheme scheme)
{
    cfg.validate();
    switch (scheme) {
    case Scheme::grass:
        if (cfg.Nn < cfg.Nc)
            return grass_point(cfg.Nn, cfg.Nc, cfg.T);
        if (cfg.Nc == 1)
            throw DomainError("scheme_point: grass needs Nc >= 2 when Nn >= Nc");
        {
            DofPoint p = grass_point(cfg.Nc - 1, cfg.Nc, cfg.T);
            p.label = "D4";
            return p;
        }
    case Scheme::grass_euclid:
        if (cfg.Nn <= cfg.Nc)
            return ge_point(cfg.Nn, cfg.Nc, cfg.T);
        {
            DofPoint p = ge_point(cfg.Nc, cfg.Nc, cfg.T);
            p.label = "D6";
            return p;
        }
    case Scheme::orthogonal:
        break;
    }
    throw DomainError("scheme_point: the orthogonal scheme has only the baseline points");
}

DofRegion achievable_region(const std::vector<DofPoint>& points)
{
    if (points.empty())
        throw DomainError("achievable_region: empty point list");
    std::vector<DofPoint> pts;
    pts.push_back({Rational(0), Rational(0), "O"});
    for (const auto& p : points) {
        if (p.d1 < 0 || p.d2 < 0)
            throw DomainError("achievable_region: DoF values must be nonnegative");
        if (std::none_of(pts.begin(), pts.end(),
                         [&](const DofPoint& q) { return same_coordinates(p, q); }))
            pts.push_back(p);
    }
    std::stable_sort(pts.begin(), pts.end(), lex_less);
    if (pts.size() < 3)
        return {pts};

    // Andrew's monotone chain; collinear points are dropped.
    std::vector<DofPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return {hull};
}

DofRegion scheme_region(const DofConfig& cfg, Scheme scheme)
{
    const auto [d1, d2] = baseline_points(cfg);
    if (scheme == Scheme::orthogonal)
        return achievable_region({d1, d2});
    return achievable_region({d1, d2, scheme_point(cfg, scheme)});
}

DofPoint time_share(const DofPoint& a, const DofPoint& b, const Rational& t)
{
    if (t < 0 || t > 1)
        throw DomainError("time_share: t must lie in [0, 1]");
    return {t * a.d1 + (1 - t) * b.d1, t * a.d2 + (1 - t) * b.d2, ""};
}

bool grass_improves(const DofConfig& cfg)
{
    cfg.validate();
    if (cfg.Nn < cfg.Nc)
        throw DomainError("grass_improves: requires Nn >= Nc (improvement is unconditional "
                          "for Nn < Nc)");
    if (cfg.Nc == 1)
        return false;
    const long n = cfg.Nc - 1;
    const Rational lhs = (Rational(cfg.Nc) - Rational(n, cfg.T)) / (Rational(n) * (1 - Rational(n, cfg.T)));
    const Rational rhs = Rational(cfg.Nc) / (Rational(cfg.Nn) * (1 - Rational(cfg.Nn, cfg.T)));
    return lhs < rhs;
}

bool ge_improves(const DofConfig& cfg)
{
    cfg.validate();
    return Rational(cfg.Nc) > (1 - Rational(cfg.Nn, cfg.T)) * cfg.Nn;
}

OuterBounds outer_bounds(const DofConfig& cfg, const Rational& d1)
{
    cfg.validate();
    if (d1 < 0 || d1 > cfg.Nn)
        throw DomainError("outer_bounds: d1 must lie in [0, Nn]");
    return {Rational(cfg.Nc) * (1 - d1 / cfg.Nn), std::max(Rational(0), cfg.Nc - d1)};
}

std::string_view to_string(Optimality o)
{
    switch (o) {
    case Optimality::optimal: return "optimal";
    case Optimality::partial: return "partial";
    case Optimality::open: return "open";
    }
    return "unknown";
}

Optimality region_is_optimal(const DofConfig& cfg)
{
    cfg.validate();
    if (cfg.Nn <= cfg.Nc)
        return Optimality::optimal;
    if (Rational(cfg.Nc) >= (1 - Rational(cfg.Nn, cfg.T)) * cfg.Nn)
        return Optimality::partial;
    return Optimality::open;
}

DofRegion optimal_region(const DofConfig& cfg)
{
    cfg.validate();
    if (cfg.Nn > cfg.Nc)
        throw DomainError("optimal_region: only characterized for Nn <= Nc");
    const Rational cap = Rational(cfg.Nn) * (1 - Rational(cfg.Nn, cfg.T));
    return {{{Rational(0), Rational(0), "O"},
             {cap, Rational(0), "D1"},
             {cap, outer_bounds(cfg, cap).coherent, "D5"},
             {Rational(0), Rational(cfg.Nc), "D2"}}};
}

// ---- text formats -------------------------------------------------------

std::string format_rational(const Rational& r)
{
    long long num = r.numerator();
    long long den = r.denominator();
    long long d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1)
        return std::to_string(num) + "/" + std::to_string(den);

    const int digits = std::max(twos, fives);
    long long scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    const bool negative = num < 0;
    const unsigned long long scaled =
        static_cast<unsigned long long>(negative ? -num : num) * static_cast<unsigned long long>(scale / den);
    std::string out = negative ? "-" : "";
    out += std::to_string(scaled / static_cast<unsigned long long>(scale));
    if (digits > 0) {
        std::string frac = std::to_string(scaled % static_cast<unsigned long long>(scale));
        out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

namespace {

long long parse_integer(std::string_view text, std::string_view whole)
{
    long long v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw ParseError("cannot parse '" + std::string(whole) + "' as a rational");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const long long den = parse_integer(text.substr(slash + 1), text);
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_integer(text.substr(0, slash), text), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos)
        return Rational(parse_integer(text, text));
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative)
        int_part.remove_prefix(1);
    if (frac.empty() || frac.size() > 17 || frac.front() == '-' || frac.front() == '+')
        throw ParseError("cannot parse '" + std::string(text) + "' as a rational");
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        scale *= 10;
    const long long ip = int_part.empty() ? 0 : parse_integer(int_part, text);
    const long long fp = parse_integer(frac, text);
    if (ip < 0)
        throw ParseError("cannot parse '" + std::string(text) + "' as a rational");
    const Rational magnitude = Rational(ip) + Rational(fp, scale);
    return negative ? -magnitude : magnitude;
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

// Yields data rows (skipping '#' comments) after checking the header.
template <class RowFn>
void read_table(std::istream& in, std::string_view header, std::size_t width, RowFn&& row)
{
    std::string line;
    long lineno = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (!seen_header) {
            if (line != header)
                throw ParseError("line " + std::to_string(lineno) + ": expected header '"
                                 + std::string(header) + "'");
            seen_header = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != width)
            throw ParseError("line " + std::to_string(lineno) + ": expected "
                             + std::to_string(width) + " fields");
        try {
            row(fields);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!seen_header)
        throw ParseError("missing header '" + std::string(header) + "'");
}

} // namespace

void write_region_csv(std::ostream& out, const DofRegion& region)
{
    out << "label,d1,d2\n";
    for (const auto& v : region.vertices)
        out << v.label << ',' << format_rational(v.d1) << ',' << format_rational(v.d2) << '\n';
}

DofRegion read_region_csv(std::istream& in)
{
    DofRegion region;
    read_table(in, "label,d1,d2", 3, [&](const std::vector<std::string>& f) {
        region.vertices.push_back({parse_rational(f[1]), parse_rational(f[2]), f[0]});
    });
    return region;
}

std::vector<BoundsRow> sample_outer_bounds(const DofConfig& cfg, long points)
{
    if (points < 2)
        throw DomainError("sample_outer_bounds: need at least 2 grid points");
    std::vector<BoundsRow> rows;
    for (long i = 0; i < points; ++i) {
        const Rational d1(cfg.Nn * i, points - 1);
        rows.push_back({d1, outer_bounds(cfg, d1)});
    }
    return rows;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows)
{
    out << "d1,coherent_d2,more_capable_d2\n";
    for (const auto& r : rows)
        out << format_rational(r.d1) << ',' << format_rational(r.bounds.coherent) << ','
            << format_rational(r.bounds.more_capable) << '\n';
}

std::vector<BoundsRow> read_bounds_csv(std::istream& in)
{
    std::vector<BoundsRow> rows;
    read_table(in, "d1,coherent_d2,more_capable_d2", 3, [&](const std::vector<std::string>& f) {
        rows.push_back({parse_rational(f[0]), {parse_rational(f[1]), parse_rational(f[2])}});
    });
    return rows;
}

} // namespace grassbc
