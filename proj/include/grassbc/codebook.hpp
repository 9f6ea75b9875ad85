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

#include <filesystem>
#include <limits>
#include <vector>

#include "grassbc/manifold.hpp"

namespace grassbc {

/// Entries closer than this (chordal) are treated as the same codeword.
inline constexpr double kDistinctTol = 1e-6;
/// Unitarity residual accepted when loading a codebook from disk.
inline constexpr double kLoadUnitaryTol = 1e-6;

/// Finite set of distinct points on G(n, k) with the cached minimum pairwise
/// chordal distance (+inf for a single entry).
class GrassmannianCodebook {
public:
    /// Throws DimensionError on mixed shapes and ValidationError when two
    /// entries are within kDistinctTol of each other.
    GrassmannianCodebook(Eigen::Index k, Eigen::Index n, std::vector<GrassmannPoint> entries);

    Eigen::Index k() const { return k_; }
    Eigen::Index n() const { return n_; }
    std::size_t size() const { return entries_.size(); }
    const GrassmannPoint& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<GrassmannPoint>& entries() const { return entries_; }
    double min_chordal_distance() const { return min_distance_; }

private:
    Eigen::Index k_;
    Eigen::Index n_;
    std::vector<GrassmannPoint> entries_;
    double min_distance_ = std::numeric_limits<double>::infinity();
};

/// Minimum pairwise chordal distance, recomputed from scratch.
double min_pairwise_distance(const std::vector<GrassmannPoint>& entries);

/// List of rows x cols codewords with i.i.d. CN(0,1) entries.
struct GaussianCodebook {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::vector<ComplexMatrix> entries;

    std::size_t size() const { return entries.size(); }
    const ComplexMatrix& operator[](std::size_t i) const { return entries[i]; }
};

/// `size` Haar-sampled points of G(n, k). A draw within kDistinctTol of an
/// existing entry is redrawn; 100*size consecutive redraws throw
/// PackingInfeasibleError.
GrassmannianCodebook gen_random_grassmannian(Eigen::Index k, Eigen::Index n, std::size_t size,
                                             Rng& rng);

/// Max-min hill climbing: each iteration redraws one endpoint of the closest
/// pair and keeps the candidate only if the minimum distance strictly grows.
GrassmannianCodebook improve_maxmin(const GrassmannianCodebook& cb, long iterations, Rng& rng);

GaussianCodebook gen_gaussian(Eigen::Index rows, Eigen::Index cols, std::size_t size, Rng& rng);

// JSON layout: {"k":2,"n":8,"size":64,"entries":[[[re,im],...],...]}
// with each entry's k*n pairs in row-major order.
void save_codebook(const GrassmannianCodebook& cb, const std::filesystem::path& path);
GrassmannianCodebook load_codebook(const std::filesystem::path& path);

std::string codebook_to_json(const GrassmannianCodebook& cb);
/// Throws ParseError (with line or field context) or ValidationError.
GrassmannianCodebook codebook_from_json(const std::string& text);

} // namespace grassbc
