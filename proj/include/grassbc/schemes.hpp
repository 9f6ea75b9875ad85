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

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "grassbc/channel.hpp"
#include "grassbc/codebook.hpp"
#include "grassbc/curve.hpp"

namespace grassbc {

enum class Scheme {
    orthogonal,   // training-based time sharing
    grass,        // Grassmannian superposition
    grass_euclid, // Grassmannian-Euclidean superposition (SIC at the static receiver)
};

std::string_view to_string(Scheme s);
/// Accepts "orthogonal", "grass", "grass_euclid" and the short form "ge".
Scheme parse_scheme(std::string_view text);

/// Signal dimensions: X1 is dynamic x T, X2 is static_ x dynamic.
/// For the orthogonal scheme `dynamic` is the number K of trained antennas
/// and `static_` the number of coherent streams.
struct SignalDims {
    long dynamic = 0;
    long static_ = 0;
    long T = 0;
    bool operator==(const SignalDims&) const = default;
};

/// min(M, N, floor(T/2))
long optimal_antennas(long M, long N, long T);

/// Dimension choice per scheme. Throws ConfigError when T < 2 Nn or when
/// grass is requested with Nc = 1.
SignalDims select_dims(long Nn, long Nc, long T, Scheme scheme);

/// Number of transmit antennas a scheme actually drives.
long active_antennas(Scheme scheme, const SignalDims& dims);

using AnyCodebook = std::variant<GrassmannianCodebook, GaussianCodebook>;

struct SchemeConfig {
    Scheme scheme = Scheme::grass;
    SignalDims dims;
    // grass / grass_euclid: Grassmannian on G(T, dims.dynamic).
    // orthogonal: Gaussian data codebook, K x (T - K).
    AnyCodebook cb_dynamic;
    // grass: Grassmannian on G(Nc, dims.dynamic), X2 = basis^H.
    // grass_euclid: Gaussian, Nc x dims.dynamic.
    // orthogonal: Gaussian, static_ x T (same role as cb_static_only).
    AnyCodebook cb_static;
    // Coherent static-only codebook used on time-shared blocks, static_ x T.
    GaussianCodebook cb_static_only;
    // Probability that a block carries the scheme itself (for orthogonal: the
    // dynamic phase); other blocks serve the static receiver alone.
    double time_share_t = 1.0;

    /// Throws ConfigError on dimension or codebook-shape violations.
    void validate() const;

    const GrassmannianCodebook& dynamic_grassmannian() const;
    const GrassmannianCodebook& static_grassmannian() const;
    const GaussianCodebook& dynamic_gaussian() const;
    const GaussianCodebook& static_gaussian() const;
};

/// Builds codebooks of sizes L1 (dynamic) and L2 (static) for `scheme`.
/// Grassmannian codebooks get `improve_iters` rounds of improve_maxmin.
/// time_share_t defaults to 0.5 for orthogonal and 1 otherwise when negative.
SchemeConfig make_scheme(const ChannelConfig& cfg, Scheme scheme, std::size_t L1, std::size_t L2,
                         long improve_iters, Rng& rng, double time_share_t = -1.0);

/// Per-receiver decisions of one block. An empty index means a failure.
struct DecodeOutcome {
    std::optional<std::size_t> dynamic_index;
    std::optional<std::size_t> static_index;
    bool sic_stage_failed = false;
};

// ---- orthogonal baseline ------------------------------------------------

/// K x K pilot block sent antenna by antenna (scaled identity, unit energy per slot).
ComplexMatrix pilot_matrix(long K);

/// K x T dynamic-phase block: K pilot slots, then T - K Gaussian data slots
/// with per-entry variance 1/K, so every slot carries unit energy.
ComplexMatrix encode_orthogonal_dynamic(std::size_t index, const SchemeConfig& cfg);

/// static_ x T coherent block with per-entry variance 1/static_.
ComplexMatrix encode_orthogonal_static(std::size_t index, const SchemeConfig& cfg);
ComplexMatrix encode_static_only(std::size_t index, const SchemeConfig& cfg);

/// Linear MMSE estimate of H from Y = H P + W / sqrt(rho) under an i.i.d.
/// CN(0,1) prior: Y (P^H P + I/rho)^{-1} P^H. An all-zero pilot returns the
/// prior mean. A nonzero rank-deficient pilot throws DegenerateInputError.
ComplexMatrix mmse_estimate(const ComplexMatrix& y_pilot, const ComplexMatrix& pilot, double rho);

/// Trains on the first K slots, then coherent ML over the data codebook.
std::size_t decode_orthogonal_dynamic(const ComplexMatrix& y, const SchemeConfig& cfg, double rho);

/// Coherent ML for a static-only block; hs_active is Nc x static_.
std::size_t decode_static_only(const ComplexMatrix& y, const ComplexMatrix& hs_active,
                               const SchemeConfig& cfg);

// ---- Grassmannian superposition -----------------------------------------

/// sqrt(T / N) X2 X1 (Nc x T); tr(X X^H) = T exactly.
ComplexMatrix encode_grass(std::size_t i_dyn, std::size_t i_stat, const SchemeConfig& cfg);

/// proj_energy(Y, cb[i]) for every entry.
std::vector<double> projection_energies(const ComplexMatrix& y, const GrassmannianCodebook& cb);

/// argmax_i proj_energy(Y, cb[i]); ties go to the lowest index.
std::size_t decode_dynamic_subspace(const ComplexMatrix& y, const GrassmannianCodebook& cb);

/// Energies of the columns of Hs^{-1} Y projected on each static column space.
std::vector<double> static_grass_energies(const ComplexMatrix& y, const ComplexMatrix& hs,
                                          const GrassmannianCodebook& cb_static);

/// Inverts Hs (square), then matches the column space against cb_static.
/// Throws SingularityError from the inversion.
std::size_t decode_static_grass(const ComplexMatrix& y, const ComplexMatrix& hs,
                                const GrassmannianCodebook& cb_static);

// ---- Grassmannian-Euclidean superposition -------------------------------

/// sqrt(T / (N Nc)) X2 X1 with Gaussian X2 (Nc x N); mean power T.
ComplexMatrix encode_grass_euclid(std::size_t i_dyn, std::size_t i_stat, const SchemeConfig& cfg);

/// Stage 2 only: given the stage-1 decision, peel X1 off and run coherent ML
/// over the Gaussian codebook. When `sent_dynamic` is known and differs from
/// `stage1_index`, the SIC stage is marked failed and no static decision is made.
DecodeOutcome complete_static_ge(const ComplexMatrix& y, const ComplexMatrix& hs,
                                 const GrassmannianCodebook& cb_dyn,
                                 const GaussianCodebook& cb_stat, long T,
                                 std::size_t stage1_index,
                                 std::optional<std::size_t> sent_dynamic = std::nullopt);

/// Full SIC receiver: subspace ML for X1 on Y, then complete_static_ge.
DecodeOutcome decode_static_ge(const ComplexMatrix& y, const ComplexMatrix& hs,
                               const GrassmannianCodebook& cb_dyn, const GaussianCodebook& cb_stat,
                               long T, std::optional<std::size_t> sent_dynamic = std::nullopt);

/// Dynamic receiver of either superposition scheme.
std::size_t decode_dynamic_any(const ComplexMatrix& y, const SchemeConfig& cfg);

// ---- additive vs multiplicative superposition ---------------------------

enum class Superposition { additive, multiplicative };

struct SinrDemoOptions {
    Superposition mode = Superposition::additive;
    bool zero_static = false; // drop the static user's signal entirely
};

/// Post-detection SINR (dB) of the dynamic stream versus SNR. Signal energy
/// is the dynamic term; the disturbance is interference plus noise projected
/// on the row space of the dynamic codeword. Equal power split for the
/// additive mode. A zero disturbance reports +inf. snr_db = +inf is noise-free.
RateCurve additive_superposition_demo(const ChannelConfig& cfg, const std::vector<double>& snr_db,
                                      long trials, Rng& rng, SinrDemoOptions options = {});

} // namespace grassbc
