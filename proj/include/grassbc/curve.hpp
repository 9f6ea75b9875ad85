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
#include <vector>

namespace grassbc {

enum class CurveKind { ser, rate_bits_per_slot, sinr_db };

std::string_view to_string(CurveKind kind);
CurveKind parse_curve_kind(std::string_view text);

struct CurvePoint {
    double snr_db = 0.0;
    double value = 0.0;
    double stderr_ = 0.0;
};

/// (SNR-dB, value, stderr) series. SNR strictly increasing, stderr >= 0.
class RateCurve {
public:
    explicit RateCurve(CurveKind kind) : kind_(kind) {}

    /// Throws ValidationError if snr_db does not increase or stderr < 0.
    void add(double snr_db, double value, double stderr_);

    CurveKind kind() const { return kind_; }
    const std::vector<CurvePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const CurvePoint& operator[](std::size_t i) const { return points_[i]; }

private:
    CurveKind kind_;
    std::vector<CurvePoint> points_;
};

/// Shortest round-trip decimal form of a double ("inf"/"-inf"/"nan" for
/// non-finite values).
std::string format_double(double v);
double parse_double(std::string_view text);

/// CSV layout: "# kind=<kind>", optional extra "# ..." comment lines, the
/// header "snr_db,value,stderr", then one row per point.
void write_curve_csv(std::ostream& out, const RateCurve& curve,
                     const std::vector<std::string>& comments = {});
/// Throws ParseError with line context.
RateCurve read_curve_csv(std::istream& in);

} // namespace grassbc
