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

// Independent reference computations for the unit tests. Nothing here calls
// into the library's numerics; each oracle recomputes its quantity from
// first principles.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Q = boost::rational<long long>;

// sum_i || row_i(Y) X^H ||^2 with explicit loops.
inline double proj_energy_loops(const Mat& y, const Mat& x)
{
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
            std::complex<double> acc = 0.0;
            for (Eigen::Index t = 0; t < y.cols(); ++t)
                acc += y(i, t) * std::conj(x(r, t));
            total += std::norm(acc);
        }
    return total;
}

// sqrt(sum sin^2 theta_i) from the principal angles between two row spaces
// (cosines are the singular values of P Q^H, via Eigen's bidiagonal SVD).
inline double chordal_from_angles(const Mat& p, const Mat& q)
{
    const Mat pq = p * q.adjoint();
    const Eigen::VectorXd cosines = Eigen::BDCSVD<Mat>(pq).singularValues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < cosines.size(); ++i) {
        const double c = std::min(1.0, cosines(i));
        s += 1.0 - c * c;
    }
    return std::sqrt(std::max(0.0, s));
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

// Asymptotic 1% critical value of the two-sample KS test.
inline double ks_critical_1pct(std::size_t n, std::size_t m)
{
    return 1.628 * std::sqrt(static_cast<double>(n + m) / static_cast<double>(n * m));
}

struct P2 {
    Q x, y;
    bool operator==(const P2& o) const { return x == o.x && y == o.y; }
};

inline Q cross(const P2& a, const P2& b, const P2& c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline bool on_segment(const P2& a, const P2& b, const P2& p)
{
    return cross(a, b, p) == Q(0) && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)
           && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline bool in_triangle(const P2& a, const P2& b, const P2& c, const P2& p)
{
    const Q d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(neg && pos);
}

// Extreme points of a finite set: a point is dropped when it lies in a
// triangle or on a segment spanned by other points (Caratheodory in 2-D).
inline std::vector<P2> hull_vertices_bruteforce(std::vector<P2> pts)
{
    std::vector<P2> unique;
    for (const auto& p : pts)
        if (std::find(unique.begin(), unique.end(), p) == unique.end())
            unique.push_back(p);
    std::vector<P2> out;
    const std::size_t n = unique.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool inside = false;
        for (std::size_t a = 0; a < n && !inside; ++a)
            for (std::size_t b = a + 1; b < n && !inside; ++b) {
                if (a == i || b == i)
                    continue;
                if (on_segment(unique[a], unique[b], unique[i]))
                    inside = true;
                for (std::size_t c = b + 1; c < n && !inside; ++c) {
                    if (c == i || cross(unique[a], unique[b], unique[c]) == Q(0))
                        continue;
                    if (in_triangle(unique[a], unique[b], unique[c], unique[i]))
                        inside = true;
                }
            }
        if (!inside)
            out.push_back(unique[i]);
    }
    return out;
}

// Product formula 2 pi^i / (i-1)! evaluated term by term in long double.
inline long double stiefel_volume_ld(int n, int k)
{
    const long double pi = 3.141592653589793238462643383279502884L;
    long double v = 1.0L;
    for (int i = n - k + 1; i <= n; ++i) {
        long double fact = 1.0L;
        for (int j = 2; j <= i - 1; ++j)
            fact *= j;
        v *= 2.0L * std::pow(pi, static_cast<long double>(i)) / fact;
    }
    return v;
}

} // namespace oracle
