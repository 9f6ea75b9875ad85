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

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "grassbc/channel.hpp"
#include "grassbc/curve.hpp"
#include "grassbc/schemes.hpp"

namespace grassbc {

/// Worker count: GRASSBC_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception by index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// "start:step:stop" (inclusive), a comma list, or a single value, in dB.
/// "inf" is accepted as a value (noise off). Throws ConfigError.
std::vector<double> parse_snr_grid(std::string_view text);

/// 10^(dB/10); +inf maps to +inf.
double db_to_linear(double db);

inline constexpr long kMinSerTrials = 100;

struct SerCurves {
    RateCurve dynamic{CurveKind::ser};
    RateCurve static_{CurveKind::ser};
    // Stage-1 (dynamic message) errors at the static receiver, grass_euclid only.
    std::optional<RateCurve> static_stage1;
};

/// Block error rates per receiver. Each block carries the scheme with
/// probability time_share_t, otherwise a static-only codeword. Dynamic SER
/// is taken over scheme blocks, static SER over blocks that carry a static
/// message. Trial i at SNR index j draws from derive_seed(seed, j, i), so the
/// result does not depend on the thread count. Throws PreconditionError when
/// trials < kMinSerTrials.
SerCurves estimate_ser(const SchemeConfig& scheme, const ChannelConfig& channel,
                       const std::vector<double>& snr_db, long trials, std::uint64_t seed);

inline constexpr long kMinRateSamples = 1000;

/// Terms of a rate lower bound, in nats per block.
struct RateBoundTerms {
    double leading = 0.0;                // pre-log times ln(rho)
    double stiefel_log_volume = 0.0;
    double expected_log_jacobian = 0.0;
    double conditional_entropy_cap = 0.0; // subtracted
};

struct RateBound {
    RateBoundTerms terms;
    double bits_per_slot = 0.0;
    double stderr_ = 0.0; // Monte Carlo error of the expectation terms, bits/slot
};

/// Dynamic-receiver bound for grass or grass_euclid with N = dims.dynamic:
/// (1/T)[N(T-N) ln rho + ln|F(T,N)| + N E ln|det(scale Hd X2)| - N^2 ln(c + 1/rho)],
/// c = T/N for grass and T/Nc for grass_euclid. Requires Gaussian fading
/// (PreconditionError) and samples >= kMinRateSamples.
RateBound rate_lower_bound_dynamic(const ChannelConfig& cfg, Scheme scheme, double rho,
                                   long samples, std::uint64_t seed);

/// Static-receiver bound of grass for Nn < Nc (DomainError otherwise):
/// (1/T)[Nn(Nc-Nn) ln rho + ln|F(Nc,Nn)| + E ln J_X2
///       - Nn^2 E ln(1/Nn + lmin^-2) - Nn(Nc-Nn) E ln lmin^-2].
RateBound rate_lower_bound_static_scheme1(const ChannelConfig& cfg, double rho, long samples,
                                          std::uint64_t seed);

/// Coherent stage of the grass_euclid static receiver:
/// (N/T) E log det(I + rho T/(N Nc) Hs Hs^H), N = dims.dynamic.
RateBound rate_static_scheme2_coherent(const ChannelConfig& cfg, double rho, long samples,
                                       std::uint64_t seed);

enum class RateTarget { dynamic, static_scheme1, static_scheme2 };
std::string_view to_string(RateTarget t);
RateTarget parse_rate_target(std::string_view text);

/// Pre-log of the bound in bits/slot per log2(rho).
double theoretical_slope(const ChannelConfig& cfg, RateTarget target, Scheme scheme);

/// The bound evaluated on an SNR grid; every point uses the same seed, so the
/// O(1) terms are identical across the curve.
RateCurve rate_bound_curve(const ChannelConfig& cfg, RateTarget target, Scheme scheme,
                           const std::vector<double>& snr_db, long samples, std::uint64_t seed);

/// Finite-codebook estimate of I(X1; Y1) / T in bits/slot, with Y1 = c H X1 + W/sqrt(rho),
/// H i.i.d. CN(0,1) of size Nn x k, c^2 = T/k. Clamped to [0, log2(L)/T].
double estimate_mi_dynamic(const GrassmannianCodebook& cb, const ChannelConfig& cfg, double rho,
                           long samples, std::uint64_t seed);

/// Least-squares slope of value against log2(rho). Needs >= 3 points of the
/// rate kind (DomainError otherwise).
double fit_dof_slope(const RateCurve& curve);

} // namespace grassbc
