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

#include "grassbc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace grassbc {

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::orthogonal: return "orthogonal";
    case Scheme::grass: return "grass";
    case Scheme::grass_euclid: return "grass_euclid";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "orthogonal") return Scheme::orthogonal;
    if (text == "grass") return Scheme::grass;
    if (text == "grass_euclid" || text == "ge") return Scheme::grass_euclid;
    throw ConfigError("unknown scheme '" + std::string(text)
                      + "' (expected orthogonal, grass, grass_euclid or ge)");
}

long optimal_antennas(long M, long N, long T)
{
    return std::min({M, N, T / 2});
}

SignalDims select_dims(long Nn, long Nc, long T, Scheme scheme)
{
    if (Nn < 1 || Nc < 1)
        throw ConfigError("select_dims: antenna counts must be >= 1");
    if (T < 2 * Nn)
        throw ConfigError("invariant T >= 2Nn violated (T=" + std::to_string(T)
                          + ", Nn=" + std::to_string(Nn) + ")");
    switch (scheme) {
    case Scheme::orthogonal: {
        const long M = std::max(Nn, Nc);
        return {optimal_antennas(M, Nn, T), std::min(M, Nc), T};
    }
    case Scheme::grass:
        if (Nn < Nc)
            return {Nn, Nc, T};
        if (Nc == 1)
            throw ConfigError("grass needs Nc >= 2 when Nn >= Nc: no nontrivial static "
                              "Grassmannian codebook on G(1, 0)");
        return {Nc - 1, Nc, T};
    case Scheme::grass_euclid:
        if (Nn <= Nc)
            return {Nn, Nc, T};
        return {Nc, Nc, T};
    }
    throw ConfigError("select_dims: unknown scheme");
}

long active_antennas(Scheme scheme, const SignalDims& dims)
{
    // orthogonal drives K antennas on dynamic blocks and static_ otherwise;
    // callers size each block from the codeword itself.
    return scheme == Scheme::orthogonal ? std::max(dims.dynamic, dims.static_) : dims.static_;
}

namespace {

template <class Cb>
const Cb& expect(const AnyCodebook& cb, const char* what)
{
    if (const auto* p = std::get_if<Cb>(&cb))
        return *p;
    throw ConfigError(std::string("SchemeConfig: ") + what + " has the wrong codebook type");
}

void expect_gaussian_shape(const GaussianCodebook& cb, long rows, long cols, const char* what)
{
    if (cb.rows != rows || cb.cols != cols || cb.entries.empty())
        throw ConfigError(std::string("SchemeConfig: ") + what + " must be a nonempty "
                          + std::to_string(rows) + "x" + std::to_string(cols)
                          + " Gaussian codebook");
}

void expect_grass_shape(const GrassmannianCodebook& cb, long k, long n, const char* what)
{
    if (cb.k() != k || cb.n() != n)
        throw ConfigError(std::string("SchemeConfig: ") + what + " must lie on G("
                          + std::to_string(n) + ", " + std::to_string(k) + ")");
}

} // namespace

const GrassmannianCodebook& SchemeConfig::dynamic_grassmannian() const
{
    return expect<GrassmannianCodebook>(cb_dynamic, "cb_dynamic");
}
const GrassmannianCodebook& SchemeConfig::static_grassmannian() const
{
    return expect<GrassmannianCodebook>(cb_static, "cb_static");
}
const GaussianCodebook& SchemeConfig::dynamic_gaussian() const
{
    return expect<GaussianCodebook>(cb_dynamic, "cb_dynamic");
}
const GaussianCodebook& SchemeConfig::static_gaussian() const
{
    return expect<GaussianCodebook>(cb_static, "cb_static");
}

void SchemeConfig::validate() const
{
    if (dims.T < 2 || dims.dynamic < 1 || dims.static_ < 1)
        throw ConfigError("SchemeConfig: dimensions must be positive with T >= 2");
    if (!(time_share_t >= 0.0 && time_share_t <= 1.0))
        throw ConfigError("SchemeConfig: time_share_t must lie in [0, 1]");
    switch (scheme) {
    case Scheme::grass:
        if (dims.dynamic >= dims.static_)
            throw ConfigError("grass: need N_dynamic < N_static for a nontrivial static codebook");
        expect_grass_shape(dynamic_grassmannian(), dims.dynamic, dims.T, "cb_dynamic");
        expect_grass_shape(static_grassmannian(), dims.dynamic, dims.static_, "cb_static");
        break;
    case Scheme::grass_euclid:
        if (dims.dynamic > dims.static_)
            throw ConfigError("grass_euclid: need N_dynamic <= N_static");
        expect_grass_shape(dynamic_grassmannian(), dims.dynamic, dims.T, "cb_dynamic");
        expect_gaussian_shape(static_gaussian(), dims.static_, dims.dynamic, "cb_static");
        break;
    case Scheme::orthogonal:
        if (2 * dims.dynamic > dims.T)
            throw ConfigError("orthogonal: need 2K <= T");
        expect_gaussian_shape(dynamic_gaussian(), dims.dynamic, dims.T - dims.dynamic,
                              "cb_dynamic");
        expect_gaussian_shape(static_gaussian(), dims.static_, dims.T, "cb_static");
        break;
    }
    expect_gaussian_shape(cb_static_only, dims.static_, dims.T, "cb_static_only");
}

SchemeConfig make_scheme(const ChannelConfig& cfg, Scheme scheme, std::size_t L1, std::size_t L2,
                         long improve_iters, Rng& rng, double time_share_t)
{
    cfg.validate();
    const SignalDims dims = select_dims(cfg.Nn, cfg.Nc, cfg.T, scheme);
    auto grassmannian = [&](long k, long n, std::size_t size) {
        return improve_maxmin(gen_random_grassmannian(k, n, size, rng), improve_iters, rng);
    };

    SchemeConfig out{scheme, dims, GaussianCodebook{}, GaussianCodebook{}, GaussianCodebook{},
                     time_share_t};
    if (time_share_t < 0.0)
        out.time_share_t = scheme == Scheme::orthogonal ? 0.5 : 1.0;

    switch (scheme) {
    case Scheme::grass:
        out.cb_dynamic = grassmannian(dims.dynamic, dims.T, L1);
        out.cb_static = grassmannian(dims.dynamic, dims.static_, L2);
        out.cb_static_only = gen_gaussian(dims.static_, dims.T, L2, rng);
        break;
    case Scheme::grass_euclid:
        out.cb_dynamic = grassmannian(dims.dynamic, dims.T, L1);
        out.cb_static = gen_gaussian(dims.static_, dims.dynamic, L2, rng);
        out.cb_static_only = gen_gaussian(dims.static_, dims.T, L2, rng);
        break;
    case Scheme::orthogonal:
        out.cb_dynamic = gen_gaussian(dims.dynamic, dims.T - dims.dynamic, L1, rng);
        out.cb_static_only = gen_gaussian(dims.static_, dims.T, L2, rng);
        out.cb_static = out.cb_static_only;
        break;
    }
    out.validate();
    return out;
}

// ---- orthogonal baseline ------------------------------------------------

ComplexMatrix pilot_matrix(long K)
{
    return ComplexMatrix::Identity(K, K);
}

namespace {

void check_index(std::size_t index, std::size_t size, const char* what)
{
    if (index >= size)
        throw DimensionError(std::string(what) + ": index " + std::to_string(index)
                             + " out of range for codebook of size " + std::to_string(size));
}

template <class Candidate>
std::size_t argmin_distance(const ComplexMatrix& target, std::size_t count, Candidate&& candidate)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double d = (target - candidate(i)).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

} // namespace

ComplexMatrix encode_orthogonal_dynamic(std::size_t index, const SchemeConfig& cfg)
{
    const auto& cb = cfg.dynamic_gaussian();
    check_index(index, cb.size(), "encode_orthogonal_dynamic");
    const long K = cfg.dims.dynamic;
    ComplexMatrix x(K, cfg.dims.T);
    x.leftCols(K) = pilot_matrix(K);
    x.rightCols(cfg.dims.T - K) = cb[index] / std::sqrt(static_cast<double>(K));
    return x;
}

ComplexMatrix encode_orthogonal_static(std::size_t index, const SchemeConfig& cfg)
{
    const auto& cb = cfg.static_gaussian();
    check_index(index, cb.size(), "encode_orthogonal_static");
    return cb[index] / std::sqrt(static_cast<double>(cfg.dims.static_));
}

ComplexMatrix encode_static_only(std::size_t index, const SchemeConfig& cfg)
{
    check_index(index, cfg.cb_static_only.size(), "encode_static_only");
    return cfg.cb_static_only[index] / std::sqrt(static_cast<double>(cfg.dims.static_));
}

ComplexMatrix mmse_estimate(const ComplexMatrix& y_pilot, const ComplexMatrix& pilot, double rho)
{
    if (y_pilot.cols() != pilot.cols())
        throw DimensionError("mmse_estimate: pilot and observation lengths differ");
    const Eigen::Index K = pilot.rows();
    if (pilot.isZero(0.0))
        return ComplexMatrix::Zero(y_pilot.rows(), K);
    if (pilot.cols() < K)
        throw DegenerateInputError("mmse_estimate: fewer pilot slots than antennas");
    const RealVector sv = svd(pilot).singular_values;
    if (sv(K - 1) <= 1e-12 * sv(0))
        throw DegenerateInputError("mmse_estimate: rank-deficient pilot matrix");

    ComplexMatrix gram = pilot * pilot.adjoint();
    if (!std::isinf(rho))
        gram += ComplexMatrix::Identity(K, K) / rho;
    // Y P^H (P P^H + I/rho)^{-1}, the push-through form of Y (P^H P + I/rho)^{-1} P^H.
    return (gram.adjoint().partialPivLu().solve((y_pilot * pilot.adjoint()).adjoint())).adjoint();
}

std::size_t decode_orthogonal_dynamic(const ComplexMatrix& y, const SchemeConfig& cfg, double rho)
{
    const auto& cb = cfg.dynamic_gaussian();
    const long K = cfg.dims.dynamic;
    const long T = cfg.dims.T;
    if (y.cols() != T)
        throw DimensionError("decode_orthogonal_dynamic: Y must have T columns");
    const ComplexMatrix h_hat = mmse_estimate(y.leftCols(K), pilot_matrix(K), rho);
    const ComplexMatrix data = y.rightCols(T - K);
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    return argmin_distance(data, cb.size(),
                           [&](std::size_t i) -> ComplexMatrix { return scale * h_hat * cb[i]; });
}

std::size_t decode_static_only(const ComplexMatrix& y, const ComplexMatrix& hs_active,
                               const SchemeConfig& cfg)
{
    const auto& cb = cfg.cb_static_only;
    if (hs_active.cols() != cfg.dims.static_)
        throw DimensionError("decode_static_only: Hs must drive static_ antennas");
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.dims.static_));
    return argmin_distance(y, cb.size(),
                           [&](std::size_t i) -> ComplexMatrix { return scale * hs_active * cb[i]; });
}

// ---- Grassmannian superposition -----------------------------------------

ComplexMatrix encode_grass(std::size_t i_dyn, std::size_t i_stat, const SchemeConfig& cfg)
{
    if (cfg.scheme != Scheme::grass)
        throw ConfigError("encode_grass: scheme is not grass");
    const auto& cb1 = cfg.dynamic_grassmannian();
    const auto& cb2 = cfg.static_grassmannian();
    check_index(i_dyn, cb1.size(), "encode_grass");
    check_index(i_stat, cb2.size(), "encode_grass");
    const double scale = std::sqrt(static_cast<double>(cfg.dims.T) / cfg.dims.dynamic);
    return scale * cb2[i_stat].basis().adjoint() * cb1[i_dyn].basis();
}

std::vector<double> projection_energies(const ComplexMatrix& y, const GrassmannianCodebook& cb)
{
    std::vector<double> out;
    out.reserve(cb.size());
    for (const auto& e : cb.entries())
        out.push_back(proj_energy(y, e.basis()));
    return out;
}

namespace {

std::size_t argmax_lowest(const std::vector<double>& values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;
    return best;
}

} // namespace

std::size_t decode_dynamic_subspace(const ComplexMatrix& y, const GrassmannianCodebook& cb)
{
    return argmax_lowest(projection_energies(y, cb));
}

std::vector<double> static_grass_energies(const ComplexMatrix& y, const ComplexMatrix& hs,
                                          const GrassmannianCodebook& cb_static)
{
    const ComplexMatrix z = inverse(hs) * y;
    // Column-space matching: proj_energy on the transposed pair.
    return projection_energies(z.adjoint(), cb_static);
}

std::size_t decode_static_grass(const ComplexMatrix& y, const ComplexMatrix& hs,
                                const GrassmannianCodebook& cb_static)
{
    return argmax_lowest(static_grass_energies(y, hs, cb_static));
}

// ---- Grassmannian-Euclidean superposition -------------------------------

ComplexMatrix encode_grass_euclid(std::size_t i_dyn, std::size_t i_stat, const SchemeConfig& cfg)
{
    if (cfg.scheme != Scheme::grass_euclid)
        throw ConfigError("encode_grass_euclid: scheme is not grass_euclid");
    const auto& cb1 = cfg.dynamic_grassmannian();
    const auto& cb2 = cfg.static_gaussian();
    check_index(i_dyn, cb1.size(), "encode_grass_euclid");
    check_index(i_stat, cb2.size(), "encode_grass_euclid");
    const double scale = std::sqrt(static_cast<double>(cfg.dims.T)
                                   / static_cast<double>(cfg.dims.dynamic * cfg.dims.static_));
    return scale * cb2[i_stat] * cb1[i_dyn].basis();
}

DecodeOutcome complete_static_ge(const ComplexMatrix& y, const ComplexMatrix& hs,
                                 const GrassmannianCodebook& cb_dyn,
                                 const GaussianCodebook& cb_stat, long T,
                                 std::size_t stage1_index, std::optional<std::size_t> sent_dynamic)
{
    check_index(stage1_index, cb_dyn.size(), "complete_static_ge");
    DecodeOutcome out;
    out.dynamic_index = stage1_index;
    if (sent_dynamic && *sent_dynamic != stage1_index) {
        out.sic_stage_failed = true;
        return out;
    }
    const Eigen::Index n_dyn = cb_dyn.k();
    const Eigen::Index n_stat = hs.rows();
    if (hs.cols() != cb_stat.rows || cb_stat.cols != n_dyn)
        throw DimensionError("complete_static_ge: codebook shape does not match Hs / X1");
    const ComplexMatrix peeled = y * cb_dyn[stage1_index].basis().adjoint();
    const double scale = std::sqrt(static_cast<double>(T) / static_cast<double>(n_dyn * n_stat));
    out.static_index = argmin_distance(
        peeled, cb_stat.size(), [&](std::size_t i) -> ComplexMatrix { return scale * hs * cb_stat[i]; });
    return out;
}

DecodeOutcome decode_static_ge(const ComplexMatrix& y, const ComplexMatrix& hs,
                               const GrassmannianCodebook& cb_dyn, const GaussianCodebook& cb_stat,
                               long T, std::optional<std::size_t> sent_dynamic)
{
    const std::size_t stage1 = decode_dynamic_subspace(y, cb_dyn);
    return complete_static_ge(y, hs, cb_dyn, cb_stat, T, stage1, sent_dynamic);
}

std::size_t decode_dynamic_any(const ComplexMatrix& y, const SchemeConfig& cfg)
{
    if (cfg.scheme == Scheme::orthogonal)
        throw ConfigError("decode_dynamic_any: orthogonal scheme has no subspace codebook");
    return decode_dynamic_subspace(y, cfg.dynamic_grassmannian());
}

// ---- additive vs multiplicative superposition ---------------------------

RateCurve additive_superposition_demo(const ChannelConfig& cfg, const std::vector<double>& snr_db,
                                      long trials, Rng& rng, SinrDemoOptions options)
{
    cfg.validate();
    if (trials < 2)
        throw PreconditionError("additive_superposition_demo: need at least 2 trials");
    const long n_dyn = std::min(cfg.Nn, cfg.Nc);
    const long n_stat = std::min(cfg.M, cfg.Nc);
    const double T = static_cast<double>(cfg.T);

    RateCurve curve(CurveKind::sinr_db);
    for (double db : snr_db) {
        const double rho = std::pow(10.0, db / 10.0);
        double s_sum = 0.0, d_sum = 0.0, ss = 0.0, dd = 0.0, sd = 0.0;
        for (long t = 0; t < trials; ++t) {
            const ComplexMatrix hd = sample_fading(cfg.Nn, cfg.M, cfg.fading, rng);
            const ComplexMatrix x1 = haar_unitary(n_dyn, cfg.T, rng);
            const ComplexMatrix projector = x1.adjoint() * x1;

            ComplexMatrix desired;
            ComplexMatrix disturbance = ComplexMatrix::Zero(cfg.Nn, cfg.T);
            if (options.mode == Superposition::additive) {
                // Equal split: each user gets T/2 of the average energy.
                desired = std::sqrt(T / (2.0 * n_dyn)) * hd.leftCols(n_dyn) * x1;
                if (!options.zero_static) {
                    const ComplexMatrix x2 = gaussian_matrix(n_stat, cfg.T, rng);
                    disturbance += std::sqrt(1.0 / (2.0 * n_stat)) * hd.leftCols(n_stat) * x2;
                }
            } else {
                ComplexMatrix x2 = ComplexMatrix::Zero(cfg.M, n_dyn);
                if (!options.zero_static)
                    x2 = haar_unitary(n_dyn, cfg.M, rng).adjoint();
                desired = std::sqrt(T / n_dyn) * hd * x2 * x1;
            }
            if (!std::isinf(rho))
                disturbance += gaussian_matrix(cfg.Nn, cfg.T, rng) / std::sqrt(rho);

            const double s = (desired * projector).squaredNorm();
            const double d = (disturbance * projector).squaredNorm();
            s_sum += s;
            d_sum += d;
            ss += s * s;
            dd += d * d;
            sd += s * d;
        }
        const double n = static_cast<double>(trials);
        const double ms = s_sum / n, md = d_sum / n;
        if (md == 0.0) {
            curve.add(db, std::numeric_limits<double>::infinity(), 0.0);
            continue;
        }
        // Delta-method standard error of 10 log10(mean s / mean d).
        const double vs = std::max(0.0, ss / n - ms * ms);
        const double vd = std::max(0.0, dd / n - md * md);
        const double cov = sd / n - ms * md;
        const double rel = vs / (ms * ms) + vd / (md * md) - 2.0 * cov / (ms * md);
        const double se = 10.0 / std::log(10.0) * std::sqrt(std::max(0.0, rel) / n);
        curve.add(db, 10.0 * std::log10(ms / md), std::isfinite(se) ? se : 0.0);
    }
    return curve;
}

} // namespace grassbc
