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

#include "grassbc/codebook.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace grassbc {

namespace {

struct ClosestPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double distance = std::numeric_limits<double>::infinity();
};

ClosestPair closest_pair(const std::vector<GrassmannPoint>& entries)
{
    ClosestPair best;
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const double d = chordal_distance(entries[i], entries[j]);
            if (d < best.distance)
                best = {i, j, d};
        }
    return best;
}

} // namespace

GrassmannianCodebook::GrassmannianCodebook(Eigen::Index k, Eigen::Index n,
                                           std::vector<GrassmannPoint> entries)
    : k_(k), n_(n), entries_(std::move(entries))
{
    if (entries_.empty())
        throw DimensionError("GrassmannianCodebook: empty codebook");
    for (const auto& e : entries_)
        if (e.k() != k_ || e.n() != n_)
            throw DimensionError("GrassmannianCodebook: entry shape differs from (k, n)");
    min_distance_ = closest_pair(entries_).distance;
    if (min_distance_ <= kDistinctTol)
        throw ValidationError("GrassmannianCodebook: entries are not distinct subspaces");
}

double min_pairwise_distance(const std::vector<GrassmannPoint>& entries)
{
    return closest_pair(entries).distance;
}

GrassmannianCodebook gen_random_grassmannian(Eigen::Index k, Eigen::Index n, std::size_t size,
                                             Rng& rng)
{
    if (k < 1 || k >= n)
        throw DimensionError("gen_random_grassmannian: need 1 <= k < n");
    if (size < 1)
        throw DimensionError("gen_random_grassmannian: size must be >= 1");

    std::vector<GrassmannPoint> entries;
    entries.reserve(size);
    const std::size_t max_failures = 100 * size;
    std::size_t failures = 0;
    while (entries.size() < size) {
        GrassmannPoint candidate(haar_unitary(k, n, rng));
        bool distinct = true;
        for (const auto& e : entries)
            if (chordal_distance(candidate, e) <= kDistinctTol) {
                distinct = false;
                break;
            }
        if (distinct) {
            entries.push_back(std::move(candidate));
            failures = 0;
        } else if (++failures >= max_failures) {
            throw PackingInfeasibleError("gen_random_grassmannian: " + std::to_string(failures)
                                         + " consecutive redraws failed");
        }
    }
    return GrassmannianCodebook(k, n, std::move(entries));
}

GrassmannianCodebook improve_maxmin(const GrassmannianCodebook& cb, long iterations, Rng& rng)
{
    std::vector<GrassmannPoint> entries = cb.entries();
    if (entries.size() < 2 || iterations <= 0)
        return cb;

    ClosestPair current = closest_pair(entries);
    std::bernoulli_distribution pick_second(0.5);
    for (long it = 0; it < iterations; ++it) {
        const std::size_t victim = pick_second(rng) ? current.b : current.a;
        GrassmannPoint saved = entries[victim];
        entries[victim] = GrassmannPoint(haar_unitary(cb.k(), cb.n(), rng));
        const ClosestPair trial = closest_pair(entries);
        if (trial.distance > current.distance)
            current = trial;
        else
            entries[victim] = std::move(saved);
    }
    return GrassmannianCodebook(cb.k(), cb.n(), std::move(entries));
}

GaussianCodebook gen_gaussian(Eigen::Index rows, Eigen::Index cols, std::size_t size, Rng& rng)
{
    if (size < 1 || rows < 1 || cols < 1)
        throw DimensionError("gen_gaussian: rows, cols and size must be >= 1");
    GaussianCodebook cb{rows, cols, {}};
    cb.entries.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        cb.entries.push_back(gaussian_matrix(rows, cols, rng));
    return cb;
}

std::string codebook_to_json(const GrassmannianCodebook& cb)
{
    nlohmann::json doc;
    doc["k"] = cb.k();
    doc["n"] = cb.n();
    doc["size"] = cb.size();
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : cb.entries()) {
        nlohmann::json flat = nlohmann::json::array();
        for (Eigen::Index r = 0; r < e.k(); ++r)
            for (Eigen::Index c = 0; c < e.n(); ++c)
                flat.push_back({e.basis()(r, c).real(), e.basis()(r, c).imag()});
        entries.push_back(std::move(flat));
    }
    doc["entries"] = std::move(entries);
    return doc.dump() + "\n";
}

namespace {

long line_of(const std::string& text, std::size_t byte)
{
    long line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

long require_count(const nlohmann::json& doc, const char* field)
{
    if (!doc.contains(field))
        throw ParseError(std::string("codebook: missing field '") + field + "'");
    const auto& v = doc.at(field);
    if (!v.is_number_integer() || v.get<long>() < 1)
        throw ParseError(std::string("codebook: field '") + field
                         + "' must be a positive integer");
    return v.get<long>();
}

} // namespace

GrassmannianCodebook codebook_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("codebook: line " + std::to_string(line_of(text, e.byte)) + ": "
                         + e.what());
    }
    if (!doc.is_object())
        throw ParseError("codebook: top level must be an object");

    const long k = require_count(doc, "k");
    const long n = require_count(doc, "n");
    const long size = require_count(doc, "size");
    if (k >= n)
        throw ValidationError("codebook: need k < n, got k=" + std::to_string(k)
                              + ", n=" + std::to_string(n));
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw ParseError("codebook: field 'entries' must be an array");
    const auto& entries = doc["entries"];
    if (static_cast<long>(entries.size()) != size)
        throw ParseError("codebook: 'size' is " + std::to_string(size) + " but 'entries' has "
                         + std::to_string(entries.size()) + " items");

    std::vector<GrassmannPoint> points;
    points.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        const auto& flat = entries[i];
        if (!flat.is_array() || static_cast<long>(flat.size()) != k * n)
            throw ParseError("codebook: " + where + " must hold " + std::to_string(k * n)
                             + " [re, im] pairs");
        ComplexMatrix basis(k, n);
        for (long j = 0; j < k * n; ++j) {
            const auto& pair = flat[j];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number()
                || !pair[1].is_number())
                throw ParseError("codebook: " + where + "[" + std::to_string(j)
                                 + "] is not a [re, im] pair");
            basis(j / n, j % n) = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
        const double residual = unitarity_residual(basis);
        if (!(residual <= kLoadUnitaryTol))
            throw ValidationError("codebook: " + where + " is not unitary (residual "
                                  + std::to_string(residual) + ")");
        if (residual > kGrassmannBasisTol)
            basis = orthonormalize_rows(basis);
        points.emplace_back(std::move(basis));
    }
    return GrassmannianCodebook(k, n, std::move(points));
}

void save_codebook(const GrassmannianCodebook& cb, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("save_codebook: cannot open " + path.string());
    out << codebook_to_json(cb);
}

GrassmannianCodebook load_codebook(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("load_codebook: cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return codebook_from_json(buffer.str());
}

} // namespace grassbc
