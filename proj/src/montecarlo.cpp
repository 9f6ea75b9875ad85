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

#include "grassbc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "grassbc/manifold.hpp"

namespace grassbc {

unsigned worker_count()
{
    if (const char* env = std::getenv("GRASSBC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_index = n;

    auto run = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < first_index) {
                    first_index = i;
                    first_error = std::current_exception();
                }
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

double db_to_linear(double db)
{
    if (std::isinf(db) && db > 0)
        return std::numeric_limits<double>::infinity();
    return std::pow(10.0, db / 10.0);
}

namespace {

double parse_grid_number(std::string_view text, std::string_view whole)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    try {
        return parse_double(text);
    } catch (const Error&) {
        throw ConfigError("bad SNR grid '" + std::string(whole) + "'");
    }
}

} // namespace

std::vector<double> parse_snr_grid(std::string_view text)
{
    if (text.empty())
        throw ConfigError("empty SNR grid");
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
            throw ConfigError("SNR grid must be start:step:stop, got '" + std::string(text) + "'");
        const double start = parse_grid_number(text.substr(0, c1), text);
        const double step = parse_grid_number(text.substr(c1 + 1, c2 - c1 - 1), text);
        const double stop = parse_grid_number(text.substr(c2 + 1), text);
        if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop) || step <= 0
            || stop < start)
            throw ConfigError("SNR grid '" + std::string(text)
                              + "' needs finite start <= stop and step > 0");
        const double span = (stop - start) / step;
        const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
        if (count > 100000)
            throw ConfigError("SNR grid '" + std::string(text) + "' has too many points");
        for (long i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            out.push_back(parse_grid_number(text.substr(start, comma - start), text));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::isnan(out[i]) || (std::isinf(out[i]) && out[i] < 0))
            throw ConfigError("SNR grid '" + std::string(text) + "' contains an invalid value");
        if (i > 0 && !(out[i] > out[i - 1]))
            throw ConfigError("SNR grid '" + std::string(text) + "' must be strictly increasing");
    }
    return out;
}

// ---- symbol error rates -------------------------------------------------

namespace {

struct TrialOutcome {
    bool scheme_block = false;
    bool dynamic_error = false;
    bool static_served = false;
    bool static_error = false;
    bool stage1_error = false;
};

constexpr std::uint64_t kStaticChannelStream = 0xffffffffULL;

std::size_t draw_index(std::size_t size, Rng& rng)
{
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

TrialOutcome run_trial(const SchemeConfig& sc, const ChannelConfig& ch, const ComplexMatrix* fixed_hs,
                       double rho, Rng& rng)
{
    TrialOutcome out;
    const ComplexMatrix hd = sample_fading(ch.Nn, ch.M, ch.fading, rng);
    const ComplexMatrix hs = fixed_hs ? *fixed_hs : sample_static_channel(ch, rng);
    const long n_stat = sc.dims.static_;
    out.scheme_block = std::bernoulli_distribution(sc.time_share_t)(rng);

    if (!out.scheme_block) {
        out.static_served = true;
        const std::size_t i2 = draw_index(sc.cb_static_only.size(), rng);
        const ComplexMatrix x = embed_antennas(encode_static_only(i2, sc), ch.M);
        const ComplexMatrix ys = transmit(x, hs, rho, rng);
        out.static_error = decode_static_only(ys, hs.leftCols(n_stat), sc) != i2;
        return out;
    }

    switch (sc.scheme) {
    case Scheme::orthogonal: {
        const std::size_t i1 = draw_index(sc.dynamic_gaussian().size(), rng);
        const ComplexMatrix x = embed_antennas(encode_orthogonal_dynamic(i1, sc), ch.M);
        const ComplexMatrix yd = transmit(x, hd, rho, rng);
        out.dynamic_error = decode_orthogonal_dynamic(yd, sc, rho) != i1;
        break;
    }
    case Scheme::grass: {
        const auto& cb1 = sc.dynamic_grassmannian();
        const auto& cb2 = sc.static_grassmannian();
        const std::size_t i1 = draw_index(cb1.size(), rng);
        const std::size_t i2 = draw_index(cb2.size(), rng);
        const ComplexMatrix x = embed_antennas(encode_grass(i1, i2, sc), ch.M);
        const ComplexMatrix yd = transmit(x, hd, rho, rng);
        const ComplexMatrix ys = transmit(x, hs, rho, rng);
        out.dynamic_error = decode_dynamic_subspace(yd, cb1) != i1;
        out.static_served = true;
        try {
            out.static_error = decode_static_grass(ys, hs.leftCols(n_stat), cb2) != i2;
        } catch (const SingularityError&) {
            out.static_error = true;
        }
        break;
    }
    case Scheme::grass_euclid: {
        const auto& cb1 = sc.dynamic_grassmannian();
        const auto& cb2 = sc.static_gaussian();
        const std::size_t i1 = draw_index(cb1.size(), rng);
        const std::size_t i2 = draw_index(cb2.size(), rng);
        const ComplexMatrix x = embed_antennas(encode_grass_euclid(i1, i2, sc), ch.M);
        const ComplexMatrix yd = transmit(x, hd, rho, rng);
        const ComplexMatrix ys = transmit(x, hs, rho, rng);
        out.dynamic_error = decode_dynamic_subspace(yd, cb1) != i1;
        out.static_served = true;
        const DecodeOutcome d =
            decode_static_ge(ys, hs.leftCols(n_stat), cb1, cb2, sc.dims.T, i1);
        out.stage1_error = d.sic_stage_failed;
        out.static_error = !d.static_index || *d.static_index != i2;
        break;
    }
    }
    return out;
}

void add_rate(RateCurve& curve, double snr_db, long errors, long count)
{
    if (count == 0) {
        curve.add(snr_db, std::numeric_limits<double>::quiet_NaN(), 0.0);
        return;
    }
    const double p = static_cast<double>(errors) / static_cast<double>(count);
    curve.add(snr_db, p, std::sqrt(p * (1.0 - p) / static_cast<double>(count)));
}

} // namespace

SerCurves estimate_ser(const SchemeConfig& scheme, const ChannelConfig& channel,
                       const std::vector<double>& snr_db, long trials, std::uint64_t seed)
{
    scheme.validate();
    channel.validate();
    if (trials < kMinSerTrials)
        throw PreconditionError("estimate_ser: need at least " + std::to_string(kMinSerTrials)
                                + " trials, got " + std::to_string(trials));
    const long active = scheme.scheme == Scheme::orthogonal
                            ? std::max(scheme.dims.dynamic, scheme.dims.static_)
                            : scheme.dims.static_;
    if (active > channel.M || scheme.dims.T != channel.T)
        throw ConfigError("estimate_ser: scheme dimensions do not fit the channel");

    std::optional<ComplexMatrix> fixed_hs;
    if (!channel.redraw_static) {
        Rng rng(derive_seed(seed, kStaticChannelStream));
        fixed_hs = sample_static_channel(channel, rng);
    }

    SerCurves curves;
    if (scheme.scheme == Scheme::grass_euclid)
        curves.static_stage1 = RateCurve(CurveKind::ser);

    for (std::size_t j = 0; j < snr_db.size(); ++j) {
        const double rho = db_to_linear(snr_db[j]);
        std::vector<TrialOutcome> results(static_cast<std::size_t>(trials));
        parallel_for(results.size(), [&](std::size_t i) {
            Rng rng(derive_seed(seed, j, i));
            results[i] = run_trial(scheme, channel, fixed_hs ? &*fixed_hs : nullptr, rho, rng);
        });
        long scheme_blocks = 0, dyn_err = 0, served = 0, stat_err = 0, stage1_err = 0;
        for (const auto& r : results) {
            scheme_blocks += r.scheme_block;
            dyn_err += r.dynamic_error;
            served += r.static_served;
            stat_err += r.static_error;
            stage1_err += r.stage1_error;
        }
        add_rate(curves.dynamic, snr_db[j], dyn_err, scheme_blocks);
        add_rate(curves.static_, snr_db[j], stat_err, served);
        if (curves.static_stage1)
            add_rate(*curves.static_stage1, snr_db[j], stage1_err, scheme_blocks);
    }
    return curves;
}

// ---- rate bounds --------------------------------------------------------

namespace {

void require_gaussian(const ChannelConfig& cfg, const char* what)
{
    if (cfg.fading != Fading::complex_normal)
        throw PreconditionError(std::string(what)
                                + ": closed-form bound terms need complex-normal fading");
}

void require_samples(long samples, const char* what)
{
    if (samples < kMinRateSamples)
        throw PreconditionError(std::string(what) + ": need at least "
                                + std::to_string(kMinRateSamples) + " samples");
}

void require_rho(double rho, const char* what)
{
    if (!(rho > 0.0) || std::isinf(rho))
        throw PreconditionError(std::string(what) + ": rho must be finite and positive");
}

struct SampleStats {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Draws samples in parallel with per-sample seeds; reduces in index order.
SampleStats sample_mean(long samples, std::uint64_t seed, std::uint64_t stream,
                        const std::function<double(Rng&)>& draw)
{
    std::vector<double> values(static_cast<std::size_t>(samples));
    parallel_for(values.size(), [&](std::size_t i) {
        Rng rng(derive_seed(seed, stream, i));
        values[i] = draw(rng);
    });
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples))};
}

double sum_log_singular_values(const ComplexMatrix& a)
{
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        s += std::log(sv(i));
    return s;
}

double to_bits_per_slot(double nats_per_block, long T)
{
    return nats_per_block / (static_cast<double>(T) * std::log(2.0));
}

RateBound finish(RateBoundTerms terms, const SampleStats& stats, double weight, long T)
{
    RateBound out;
    out.terms = terms;
    out.bits_per_slot = to_bits_per_slot(terms.leading + terms.stiefel_log_volume
                                             + terms.expected_log_jacobian
                                             - terms.conditional_entropy_cap,
                                         T);
    out.stderr_ = to_bits_per_slot(weight * stats.stderr_, T);
    return out;
}

} // namespace

RateBound rate_lower_bound_dynamic(const ChannelConfig& cfg, Scheme scheme, double rho,
                                   long samples, std::uint64_t seed)
{
    cfg.validate();
    require_gaussian(cfg, "rate_lower_bound_dynamic");
    require_samples(samples, "rate_lower_bound_dynamic");
    require_rho(rho, "rate_lower_bound_dynamic");
    if (scheme == Scheme::orthogonal)
        throw DomainError("rate_lower_bound_dynamic: defined for grass and grass_euclid");
    const SignalDims dims = select_dims(cfg.Nn, cfg.Nc, cfg.T, scheme);
    const long n = dims.dynamic;
    const long nc = dims.static_;
    const double T = static_cast<double>(cfg.T);
    const double scale2 = scheme == Scheme::grass ? T / n : T / static_cast<double>(n * nc);
    const double cap = scheme == Scheme::grass ? T / n : T / nc;

    const SampleStats jac = sample_mean(samples, seed, 1, [&](Rng& rng) {
        const ComplexMatrix hd = gaussian_matrix(cfg.Nn, nc, rng);
        const ComplexMatrix x2 = scheme == Scheme::grass ? ComplexMatrix(haar_unitary(n, nc, rng).adjoint())
                                                         : gaussian_matrix(nc, n, rng);
        return sum_log_singular_values(std::sqrt(scale2) * hd * x2);
    });

    RateBoundTerms terms;
    terms.leading = static_cast<double>(n * (cfg.T - n)) * std::log(rho);
    terms.stiefel_log_volume = log_stiefel_volume(cfg.T, n);
    terms.expected_log_jacobian = static_cast<double>(n) * jac.mean;
    terms.conditional_entropy_cap = static_cast<double>(n * n) * std::log(cap + 1.0 / rho);
    return finish(terms, jac, static_cast<double>(n), cfg.T);
}

RateBound rate_lower_bound_static_scheme1(const ChannelConfig& cfg, double rho, long samples,
                                          std::uint64_t seed)
{
    cfg.validate();
    if (cfg.Nn >= cfg.Nc)
        throw DomainError("rate_lower_bound_static_scheme1: requires Nn < Nc");
    require_gaussian(cfg, "rate_lower_bound_static_scheme1");
    require_samples(samples, "rate_lower_bound_static_scheme1");
    require_rho(rho, "rate_lower_bound_static_scheme1");
    const long n = cfg.Nn;
    const long nc = cfg.Nc;
    const double n_d = static_cast<double>(n);

    // Sample-dependent part: Jacobian of X2 -> sqrt(T/n) X2 X1' and the
    // channel-inversion terms driven by the weakest singular value of Hs.
    const SampleStats total = sample_mean(samples, seed, 2, [&](Rng& rng) {
        const ComplexMatrix x1 = haar_unitary(n, cfg.T, rng);
        const ComplexMatrix hs = gaussian_matrix(nc, nc, rng);
        const double log_det_x1 = sum_log_singular_values(x1.leftCols(n));
        const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(hs).singularValues();
        const double inv_l2 = 1.0 / (sv(nc - 1) * sv(nc - 1));
        const double jac = 0.5 * static_cast<double>(nc) * std::log(cfg.T / n_d) + n_d * log_det_x1;
        const double cond = n_d * n_d * std::log(1.0 / n_d + inv_l2)
                            + n_d * static_cast<double>(nc - n) * std::log(inv_l2);
        return jac - cond;
    });
    // Same per-sample seeds, so this is the Jacobian share of `total`.
    const SampleStats jac = sample_mean(samples, seed, 2, [&](Rng& rng) {
        const ComplexMatrix x1 = haar_unitary(n, cfg.T, rng);
        return 0.5 * static_cast<double>(nc) * std::log(cfg.T / n_d)
               + n_d * sum_log_singular_values(x1.leftCols(n));
    });

    RateBoundTerms terms;
    terms.leading = n_d * static_cast<double>(nc - n) * std::log(rho);
    terms.stiefel_log_volume = log_stiefel_volume(nc, n);
    terms.expected_log_jacobian = jac.mean;
    terms.conditional_entropy_cap = jac.mean - total.mean;
    return finish(terms, total, 1.0, cfg.T);
}

RateBound rate_static_scheme2_coherent(const ChannelConfig& cfg, double rho, long samples,
                                       std::uint64_t seed)
{
    cfg.validate();
    require_gaussian(cfg, "rate_static_scheme2_coherent");
    require_samples(samples, "rate_static_scheme2_coherent");
    require_rho(rho, "rate_static_scheme2_coherent");
    const SignalDims dims = select_dims(cfg.Nn, cfg.Nc, cfg.T, Scheme::grass_euclid);
    const long n = dims.dynamic;
    const long nc = dims.static_;
    const double gain = rho * static_cast<double>(cfg.T) / static_cast<double>(n * nc);

    const SampleStats logdet = sample_mean(samples, seed, 3, [&](Rng& rng) {
        const ComplexMatrix hs = gaussian_matrix(nc, nc, rng);
        const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(hs).singularValues();
        double s = 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            s += std::log1p(gain * sv(i) * sv(i));
        return s;
    });

    RateBoundTerms terms;
    terms.expected_log_jacobian = static_cast<double>(n) * logdet.mean;
    return finish(terms, logdet, static_cast<double>(n), cfg.T);
}

std::string_view to_string(RateTarget t)
{
    switch (t) {
    case RateTarget::dynamic: return "dynamic";
    case RateTarget::static_scheme1: return "static1";
    case RateTarget::static_scheme2: return "static2";
    }
    return "unknown";
}

RateTarget parse_rate_target(std::string_view text)
{
    if (text == "dynamic") return RateTarget::dynamic;
    if (text == "static1") return RateTarget::static_scheme1;
    if (text == "static2") return RateTarget::static_scheme2;
    throw ConfigError("unknown rate target '" + std::string(text)
                      + "' (expected dynamic, static1 or static2)");
}

double theoretical_slope(const ChannelConfig& cfg, RateTarget target, Scheme scheme)
{
    const double T = static_cast<double>(cfg.T);
    switch (target) {
    case RateTarget::dynamic: {
        const long n = select_dims(cfg.Nn, cfg.Nc, cfg.T, scheme).dynamic;
        return static_cast<double>(n * (cfg.T - n)) / T;
    }
    case RateTarget::static_scheme1:
        if (cfg.Nn >= cfg.Nc)
            throw DomainError("static scheme-1 bound requires Nn < Nc");
        return static_cast<double>(cfg.Nn * (cfg.Nc - cfg.Nn)) / T;
    case RateTarget::static_scheme2: {
        const SignalDims d = select_dims(cfg.Nn, cfg.Nc, cfg.T, Scheme::grass_euclid);
        return static_cast<double>(d.dynamic * d.static_) / T;
    }
    }
    throw DomainError("theoretical_slope: unknown target");
}

RateCurve rate_bound_curve(const ChannelConfig& cfg, RateTarget target, Scheme scheme,
                           const std::vector<double>& snr_db, long samples, std::uint64_t seed)
{
    RateCurve curve(CurveKind::rate_bits_per_slot);
    for (double db : snr_db) {
        const double rho = db_to_linear(db);
        RateBound b;
        switch (target) {
        case RateTarget::dynamic: b = rate_lower_bound_dynamic(cfg, scheme, rho, samples, seed); break;
        case RateTarget::static_scheme1: b = rate_lower_bound_static_scheme1(cfg, rho, samples, seed); break;
        case RateTarget::static_scheme2: b = rate_static_scheme2_coherent(cfg, rho, samples, seed); break;
        }
        curve.add(db, b.bits_per_slot, b.stderr_);
    }
    return curve;
}

// ---- mutual information -------------------------------------------------

double estimate_mi_dynamic(const GrassmannianCodebook& cb, const ChannelConfig& cfg, double rho,
                           long samples, std::uint64_t seed)
{
    cfg.validate();
    require_gaussian(cfg, "estimate_mi_dynamic");
    require_rho(rho, "estimate_mi_dynamic");
    if (samples < 1)
        throw PreconditionError("estimate_mi_dynamic: need at least one sample");
    if (cb.n() != cfg.T)
        throw DimensionError("estimate_mi_dynamic: codebook length must equal T");
    const std::size_t L = cb.size();
    const double cap = std::log2(static_cast<double>(L)) / static_cast<double>(cfg.T);
    if (L == 1)
        return 0.0;
    const long k = cb.k();
    const double c2 = static_cast<double>(cfg.T) / static_cast<double>(k);
    // log p(Y|X_l) = const + kappa ||Y X_l^H||^2 for rows ~ CN(0, c^2 X^H X + I/rho).
    const double kappa = c2 * rho * rho / (1.0 + c2 * rho);

    const SampleStats s = sample_mean(std::max<long>(samples, 2), seed, 4, [&](Rng& rng) {
        const std::size_t sent = draw_index(L, rng);
        const ComplexMatrix h = gaussian_matrix(cfg.Nn, k, rng);
        const ComplexMatrix y = std::sqrt(c2) * h * cb[sent].basis()
                                + gaussian_matrix(cfg.Nn, cfg.T, rng) / std::sqrt(rho);
        const std::vector<double> e = projection_energies(y, cb);
        double peak = -std::numeric_limits<double>::infinity();
        for (double v : e)
            peak = std::max(peak, kappa * (v - e[sent]));
        double acc = 0.0;
        for (double v : e)
            acc += std::exp(kappa * (v - e[sent]) - peak);
        const double log2_sum = (peak + std::log(acc)) / std::log(2.0);
        return std::log2(static_cast<double>(L)) - log2_sum;
    });
    return std::clamp(s.mean / static_cast<double>(cfg.T), 0.0, cap);
}

double fit_dof_slope(const RateCurve& curve)
{
    if (curve.kind() != CurveKind::rate_bits_per_slot)
        throw DomainError("fit_dof_slope: curve must be of rate kind");
    if (curve.size() < 3)
        throw DomainError("fit_dof_slope: need at least 3 points");
    double sx = 0.0, sy = 0.0;
    const double n = static_cast<double>(curve.size());
    std::vector<double> xs;
    for (const auto& p : curve.points()) {
        if (!std::isfinite(p.snr_db))
            throw DomainError("fit_dof_slope: SNR values must be finite");
        xs.push_back(p.snr_db / 10.0 * std::log2(10.0));
        sx += xs.back();
        sy += p.value;
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (curve[i].value - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

} // namespace grassbc
