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

#include "grassbc/curve.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "grassbc/errors.hpp"

namespace grassbc {

std::string_view to_string(CurveKind kind)
{
    switch (kind) {
    case CurveKind::ser: return "ser";
    case CurveKind::rate_bits_per_slot: return "rate_bits_per_slot";
    case CurveKind::sinr_db: return "sinr_db";
    }
    return "unknown";
}

CurveKind parse_curve_kind(std::string_view text)
{
    if (text == "ser") return CurveKind::ser;
    if (text == "rate_bits_per_slot") return CurveKind::rate_bits_per_slot;
    if (text == "sinr_db") return CurveKind::sinr_db;
    throw ParseError("unknown curve kind '" + std::string(text) + "'");
}

void RateCurve::add(double snr_db, double value, double stderr_)
{
    if (!points_.empty() && !(snr_db > points_.back().snr_db))
        throw ValidationError("RateCurve: snr_db must be strictly increasing");
    if (!(stderr_ >= 0.0))
        throw ValidationError("RateCurve: stderr must be >= 0");
    points_.push_back({snr_db, value, stderr_});
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text)
{
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError("not a number: '" + std::string(text) + "'");
    return v;
}

void write_curve_csv(std::ostream& out, const RateCurve& curve,
                     const std::vector<std::string>& comments)
{
    out << "# kind=" << to_string(curve.kind()) << '\n';
    for (const auto& c : comments)
        out << "# " << c << '\n';
    out << "snr_db,value,stderr\n";
    for (const auto& p : curve.points())
        out << format_double(p.snr_db) << ',' << format_double(p.value) << ','
            << format_double(p.stderr_) << '\n';
}

RateCurve read_curve_csv(std::istream& in)
{
    std::string line;
    long lineno = 0;
    bool have_kind = false;
    bool have_header = false;
    CurveKind kind = CurveKind::ser;
    RateCurve curve(kind);
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = "curve csv line " + std::to_string(lineno) + ": ";
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (line.rfind("# kind=", 0) == 0) {
                kind = parse_curve_kind(std::string_view(line).substr(7));
                curve = RateCurve(kind);
                have_kind = true;
            }
            continue;
        }
        if (!have_header) {
            if (line != "snr_db,value,stderr")
                throw ParseError(where + "expected header 'snr_db,value,stderr'");
            have_header = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError(where + "expected three comma-separated fields");
        try {
            const std::string_view sv(line);
            curve.add(parse_double(sv.substr(0, c1)), parse_double(sv.substr(c1 + 1, c2 - c1 - 1)),
                      parse_double(sv.substr(c2 + 1)));
        } catch (const Error& e) {
            throw ParseError(where + e.what());
        }
    }
    if (!have_kind)
        throw ParseError("curve csv: missing '# kind=' line");
    if (!have_header)
        throw ParseError("curve csv: missing header");
    return curve;
}

} // namespace grassbc
