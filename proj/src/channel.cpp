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

#include "grassbc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grassbc {

void ChannelConfig::validate() const
{
    if (Nn < 1 || Nc < 1)
        throw ConfigError("antenna counts must be >= 1 (Nn=" + std::to_string(Nn)
                          + ", Nc=" + std::to_string(Nc) + ")");
    if (M != std::max(Nn, Nc))
        throw ConfigError("invariant M = max(Nn, Nc) violated (M=" + std::to_string(M)
                          + ", Nn=" + std::to_string(Nn) + ", Nc=" + std::to_string(Nc) + ")");
    if (T < 2 * Nn)
        throw ConfigError("invariant T >= 2Nn violated (T=" + std::to_string(T)
                          + ", Nn=" + std::to_string(Nn) + ")");
    if (!(rho > 0.0))
        throw ConfigError("invariant rho > 0 violated");
}

ChannelConfig ChannelConfig::make(long Nn, long Nc, long T, double rho)
{
    ChannelConfig cfg;
    cfg.Nn = Nn;
    cfg.Nc = Nc;
    cfg.M = std::max(Nn, Nc);
    cfg.T = T;
    cfg.rho = rho;
    return cfg;
}

ComplexMatrix sample_fading(Eigen::Index rows, Eigen::Index cols, Fading fading, Rng& rng)
{
    if (fading == Fading::complex_normal)
        return gaussian_matrix(rows, cols, rng);

    const double a = 1.0 / std::sqrt(2.0);
    std::bernoulli_distribution coin(0.5);
    ComplexMatrix out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double re = coin(rng) ? a : -a;
            const double im = coin(rng) ? a : -a;
            out(r, c) = Complex(re, im);
        }
    return out;
}

ComplexMatrix sample_static_channel(const ChannelConfig& cfg, Rng& rng, SvdResult* svd_out)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        ComplexMatrix hs = sample_fading(cfg.Nc, cfg.M, cfg.fading, rng);
        SvdResult dec = svd(hs);
        if (dec.condition_number() <= kMaxStaticCondition) {
            if (svd_out)
                *svd_out = std::move(dec);
            return hs;
        }
    }
    throw ConfigError("sample_channel: static channel failed the condition guard 100 times");
}

ChannelRealization sample_channel(const ChannelConfig& cfg, Rng& rng)
{
    cfg.validate();
    ChannelRealization out;
    out.Hd = sample_fading(cfg.Nn, cfg.M, cfg.fading, rng);
    out.Hs = sample_static_channel(cfg, rng, &out.Hs_svd);
    return out;
}

ComplexMatrix transmit(const ComplexMatrix& x, const ComplexMatrix& h, double rho, Rng& rng)
{
    if (h.cols() != x.rows())
        throw DimensionError("transmit: H is " + std::to_string(h.rows()) + "x"
                             + std::to_string(h.cols()) + " but X has "
                             + std::to_string(x.rows()) + " rows");
    ComplexMatrix y = h * x;
    if (std::isinf(rho))
        return y;
    y += gaussian_matrix(y.rows(), y.cols(), rng) / std::sqrt(rho);
    return y;
}

ComplexMatrix embed_antennas(const ComplexMatrix& x, long M)
{
    if (x.rows() > M)
        throw DimensionError("embed_antennas: codeword uses more antennas than available");
    ComplexMatrix out = ComplexMatrix::Zero(M, x.cols());
    out.topRows(x.rows()) = x;
    return out;
}

PowerAudit check_power(const std::function<ComplexMatrix()>& source, long T, long samples)
{
    if (samples < 1)
        throw PreconditionError("check_power: samples must be >= 1");
    double acc = 0.0;
    for (long s = 0; s < samples; ++s)
        acc += source().squaredNorm();
    PowerAudit audit;
    audit.mean_power = acc / static_cast<double>(samples);
    audit.target = static_cast<double>(T);
    audit.pass = std::abs(audit.mean_power - audit.target) <= kPowerAuditTol * audit.target;
    return audit;
}

} // namespace grassbc
