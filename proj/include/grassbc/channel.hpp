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

#include <functional>
#include <limits>

#include "grassbc/numerics.hpp"

namespace grassbc {

inline constexpr double kMaxStaticCondition = 1e6;
inline constexpr double kPowerAuditTol = 0.02;

enum class Fading {
    complex_normal, // CN(0, 1), the only tag with closed-form likelihoods
    qpsk,           // (+-1 +- i)/sqrt(2), zero mean, unit variance
};

/// Antenna counts, coherence length and SNR of the two-user channel.
/// rho may be +inf, which turns the noise stream off.
struct ChannelConfig {
    long M = 1;  // transmit antennas
    long Nn = 1; // dynamic receiver antennas
    long Nc = 1; // static receiver antennas
    long T = 2;  // coherence length in symbols
    double rho = 1.0;
    Fading fading = Fading::complex_normal;
    bool redraw_static = false; // re-draw Hs every block instead of once per run

    /// Throws ConfigError naming the violated invariant
    /// (M = max(Nn, Nc), T >= 2 Nn, rho > 0).
    void validate() const;

    static ChannelConfig make(long Nn, long Nc, long T, double rho = 1.0);
};

struct ChannelRealization {
    ComplexMatrix Hd; // Nn x M, unknown to both receivers
    ComplexMatrix Hs; // Nc x M, known to the static receiver
    SvdResult Hs_svd;
};

ComplexMatrix sample_fading(Eigen::Index rows, Eigen::Index cols, Fading fading, Rng& rng);

/// Draws (Hd, Hs). Hs is redrawn until its condition number is at most
/// kMaxStaticCondition; 100 consecutive failures throw ConfigError.
ChannelRealization sample_channel(const ChannelConfig& cfg, Rng& rng);

/// Draws only the static channel, with the same guard as sample_channel.
ComplexMatrix sample_static_channel(const ChannelConfig& cfg, Rng& rng, SvdResult* svd_out = nullptr);

/// H X + W / sqrt(rho) with W i.i.d. CN(0, 1). rho = +inf skips the noise.
ComplexMatrix transmit(const ComplexMatrix& x, const ComplexMatrix& h, double rho, Rng& rng);

/// Pads an (active antennas) x T codeword with zero rows up to M antennas.
ComplexMatrix embed_antennas(const ComplexMatrix& x, long M);

struct PowerAudit {
    double mean_power = 0.0;
    double target = 0.0;
    bool pass = false;
};

/// Mean of tr(X X^H) over `samples` codewords; passes within 2% of T.
PowerAudit check_power(const std::function<ComplexMatrix()>& source, long T, long samples);

} // namespace grassbc
