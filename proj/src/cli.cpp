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

#include "grassbc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grassbc/codebook.hpp"
#include "grassbc/dofregion.hpp"
#include "grassbc/errors.hpp"
#include "grassbc/montecarlo.hpp"

namespace grassbc::cli {

namespace fs = std::filesystem;

namespace {

// Codebook construction draws from its own stream so that changing the trial
// count does not change the codebooks.
constexpr std::uint64_t kCodebookStream = 0xc0deb00cULL;

struct Options {
    std::string config;
    long Nn = 0, Nc = 0, T = 0, M = 0;
    std::string out;
    std::string scheme = "grass";
    std::string snr_db;
    long trials = 10000;
    std::uint64_t seed = 0;
    long L1 = 16, L2 = 16;
    long iters = 200;
    double t = -1.0;
    bool redraw_static = false;
    std::string fading = "complex_normal";
    long grid = 11;
    std::string target = "dynamic";
    long samples = 10000;
    long k = 0, n = 0, size = 16;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fills every option that was not given on the command line from a JSON
// object whose keys are option names (underscores or dashes).
void apply_config(CLI::App& sub, const std::string& path)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config '" + path + "' must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        std::string name = "--" + key;
        std::replace(name.begin(), name.end(), '_', '-');
        CLI::Option* opt = sub.get_option_no_throw(name);
        if (opt == nullptr || name == "--config")
            throw ConfigError("config '" + path + "': unknown key '" + key + "' for '"
                              + sub.get_name() + "'");
        if (opt->count() > 0)
            continue;
        if (value.is_object() || value.is_array() || value.is_null())
            throw ConfigError("config '" + path + "': key '" + key + "' must be a scalar");
        opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
        opt->run_callback();
    }
}

bool given(CLI::App& sub, const std::string& name)
{
    const CLI::Option* opt = sub.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

void require(CLI::App& sub, const std::string& name)
{
    if (!given(sub, name))
        throw ConfigError(name + " is required (on the command line or in --config)");
}

Fading parse_fading(const std::string& text)
{
    if (text == "complex_normal") return Fading::complex_normal;
    if (text == "qpsk") return Fading::qpsk;
    throw ConfigError("unknown fading '" + text + "' (expected complex_normal or qpsk)");
}

ChannelConfig channel_from(const Options& o, double rho = 1.0)
{
    ChannelConfig cfg = ChannelConfig::make(o.Nn, o.Nc, o.T, rho);
    if (o.M > 0)
        cfg.M = o.M;
    cfg.fading = parse_fading(o.fading);
    cfg.redraw_static = o.redraw_static;
    cfg.validate();
    return cfg;
}

fs::path prepare_dir(const std::string& out)
{
    if (out.empty())
        throw ConfigError("--out is required");
    fs::create_directories(out);
    return fs::path(out);
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw PreconditionError("cannot write '" + path.string() + "'");
    return f;
}

std::string dims_line(const SignalDims& d)
{
    return "dims N_dynamic=" + std::to_string(d.dynamic) + " N_static=" + std::to_string(d.static_)
           + " T=" + std::to_string(d.T);
}

std::string antennas_line(const ChannelConfig& c)
{
    return "M=" + std::to_string(c.M) + " Nn=" + std::to_string(c.Nn) + " Nc=" + std::to_string(c.Nc)
           + " T=" + std::to_string(c.T);
}

// ---- subcommands --------------------------------------------------------

int cmd_dof(const Options& o, std::ostream& out)
{
    DofConfig cfg = DofConfig::make(o.Nn, o.Nc, o.T);
    if (o.M > 0)
        cfg.M = o.M;
    cfg.validate();
    const fs::path dir = prepare_dir(o.out);

    auto emit = [&](const char* file, const DofRegion& region) {
        auto f = open_out(dir / file);
        write_region_csv(f, region);
        out << file << ":";
        for (const auto& v : region.vertices)
            out << ' ' << v.label << '(' << format_rational(v.d1) << ',' << format_rational(v.d2) << ')';
        out << '\n';
    };
    emit("baseline.csv", scheme_region(cfg, Scheme::orthogonal));
    if (cfg.Nn < cfg.Nc || cfg.Nc >= 2)
        emit("grass.csv", scheme_region(cfg, Scheme::grass));
    else
        out << "grass.csv: skipped (grass needs Nc >= 2 when Nn >= Nc)\n";
    emit("grass_euclid.csv", scheme_region(cfg, Scheme::grass_euclid));
    {
        auto f = open_out(dir / "bounds.csv");
        write_bounds_csv(f, sample_outer_bounds(cfg, o.grid));
    }
    if (cfg.Nn >= cfg.Nc)
        out << "grass_improves=" << (grass_improves(cfg) ? "true" : "false") << '\n';
    out << "ge_improves=" << (ge_improves(cfg) ? "true" : "false") << '\n';
    out << "region=" << to_string(region_is_optimal(cfg)) << '\n';
    return kExitOk;
}

int cmd_ser(const Options& o, std::ostream& out)
{
    const Scheme scheme = parse_scheme(o.scheme);
    const ChannelConfig ch = channel_from(o);
    if (o.trials < kMinSerTrials)
        throw ConfigError("--trials must be at least " + std::to_string(kMinSerTrials));
    if (o.L1 < 1 || o.L2 < 1 || o.iters < 0)
        throw ConfigError("--L1, --L2 must be >= 1 and --iters >= 0");
    const std::vector<double> grid = parse_snr_grid(o.snr_db.empty() ? "0:10:30" : o.snr_db);
    const fs::path dir = prepare_dir(o.out);

    Rng rng(derive_seed(o.seed, kCodebookStream));
    const SchemeConfig sc = make_scheme(ch, scheme, static_cast<std::size_t>(o.L1),
                                        static_cast<std::size_t>(o.L2), o.iters, rng, o.t);
    const SerCurves curves = estimate_ser(sc, ch, grid, o.trials, o.seed);

    const std::vector<std::string> comments = {
        "scheme=" + std::string(to_string(scheme)),
        dims_line(sc.dims),
        antennas_line(ch),
        "L1=" + std::to_string(o.L1) + " L2=" + std::to_string(o.L2) + " iters="
            + std::to_string(o.iters) + " t=" + format_double(sc.time_share_t),
        "trials=" + std::to_string(o.trials) + " seed=" + std::to_string(o.seed),
    };
    auto emit = [&](const char* file, const char* receiver, const RateCurve& c) {
        auto f = open_out(dir / file);
        std::vector<std::string> cs = comments;
        cs.push_back(std::string("receiver=") + receiver);
        write_curve_csv(f, c, cs);
    };
    emit("ser_dynamic.csv", "dynamic", curves.dynamic);
    emit("ser_static.csv", "static", curves.static_);
    if (curves.static_stage1)
        emit("ser_static_stage1.csv", "static_stage1", *curves.static_stage1);

    out << "scheme=" << to_string(scheme) << ' ' << dims_line(sc.dims) << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << "snr_db=" << format_double(grid[i]) << " ser_dynamic="
            << format_double(curves.dynamic[i].value) << " ser_static="
            << format_double(curves.static_[i].value) << '\n';
    return kExitOk;
}

int cmd_rate(const Options& o, std::ostream& out)
{
    const RateTarget target = parse_rate_target(o.target);
    const Scheme scheme = target == RateTarget::static_scheme2 ? Scheme::grass_euclid
                          : target == RateTarget::static_scheme1 ? Scheme::grass
                                                                  : parse_scheme(o.scheme);
    const ChannelConfig ch = channel_from(o);
    const std::vector<double> grid = parse_snr_grid(o.snr_db.empty() ? "30:10:50" : o.snr_db);
    const fs::path dir = prepare_dir(o.out);

    const RateCurve curve = rate_bound_curve(ch, target, scheme, grid, o.samples, o.seed);
    const double theory = theoretical_slope(ch, target, scheme);
    const double fitted = fit_dof_slope(curve);
    const double rel = std::abs(fitted - theory) / theory;

    {
        auto f = open_out(dir / "rate.csv");
        write_curve_csv(f, curve,
                        {"target=" + std::string(to_string(target)),
                         "scheme=" + std::string(to_string(scheme)), antennas_line(ch),
                         "samples=" + std::to_string(o.samples) + " seed=" + std::to_string(o.seed)});
    }
    nlohmann::ordered_json report;
    report["target"] = to_string(target);
    report["scheme"] = to_string(scheme);
    report["M"] = ch.M;
    report["Nn"] = ch.Nn;
    report["Nc"] = ch.Nc;
    report["T"] = ch.T;
    report["snr_db"] = grid;
    report["samples"] = o.samples;
    report["seed"] = o.seed;
    report["theoretical_slope"] = theory;
    report["fitted_slope"] = fitted;
    report["relative_error"] = rel;
    {
        auto f = open_out(dir / "report.json");
        f << report.dump(2) << '\n';
    }
    out << "theoretical_slope=" << format_double(theory) << " fitted_slope=" << format_double(fitted)
        << " relative_error=" << format_double(rel) << '\n';
    return kExitOk;
}

int cmd_codebook(const Options& o, std::ostream& out)
{
    if (!(o.k >= 1 && o.k < o.n))
        throw ConfigError("codebook needs 1 <= k < n (got k=" + std::to_string(o.k)
                          + ", n=" + std::to_string(o.n) + ")");
    if (o.size < 1 || o.iters < 0)
        throw ConfigError("--size must be >= 1 and --iters >= 0");
    if (o.out.empty())
        throw ConfigError("--out is required");
    Rng rng(derive_seed(o.seed, kCodebookStream));
    GrassmannianCodebook cb = gen_random_grassmannian(o.k, o.n, static_cast<std::size_t>(o.size), rng);
    cb = improve_maxmin(cb, o.iters, rng);
    const fs::path path(o.out);
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    save_codebook(cb, path);
    out << "min_distance=" << format_double(cb.min_chordal_distance()) << '\n';
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Product-superposition MIMO broadcast simulator and DoF analyzer", "grassbc"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON file with option values; flags win");
        sub->add_option("--out", o.out, "Output directory (file for codebook)");
        sub->add_option("--seed", o.seed, "Random seed");
    };
    auto antennas = [&](CLI::App* sub) {
        sub->add_option("--Nn", o.Nn, "Dynamic receiver antennas");
        sub->add_option("--Nc", o.Nc, "Static receiver antennas");
        sub->add_option("--T", o.T, "Coherence length");
        sub->add_option("--M", o.M, "Transmit antennas (default max(Nn, Nc))");
        sub->add_option("--fading", o.fading, "complex_normal or qpsk");
    };

    CLI::App* dof = app.add_subcommand("dof", "Exact DoF regions and outer bounds");
    common(dof);
    antennas(dof);
    dof->add_option("--grid", o.grid, "Number of d1 grid points for bounds.csv");

    CLI::App* ser = app.add_subcommand("ser", "Monte Carlo symbol error rates");
    common(ser);
    antennas(ser);
    ser->add_option("--scheme", o.scheme, "orthogonal, grass, grass_euclid (ge)");
    ser->add_option("--snr-db", o.snr_db, "SNR grid start:step:stop in dB");
    ser->add_option("--trials", o.trials, "Trials per SNR point");
    ser->add_option("--L1", o.L1, "Dynamic codebook size");
    ser->add_option("--L2", o.L2, "Static codebook size");
    ser->add_option("--iters", o.iters, "Max-min improvement iterations");
    ser->add_option("--t", o.t, "Time-sharing fraction of scheme blocks");
    ser->add_flag("--redraw-static", o.redraw_static, "Redraw Hs every block");

    CLI::App* rate = app.add_subcommand("rate", "Rate lower bounds and DoF slope fit");
    common(rate);
    antennas(rate);
    rate->add_option("--target", o.target, "dynamic, static1 or static2");
    rate->add_option("--scheme", o.scheme, "Scheme for the dynamic target");
    rate->add_option("--snr-db", o.snr_db, "SNR grid start:step:stop in dB");
    rate->add_option("--samples", o.samples, "Monte Carlo samples per point");

    CLI::App* codebook = app.add_subcommand("codebook", "Generate a Grassmannian codebook");
    common(codebook);
    codebook->add_option("--k", o.k, "Subspace dimension");
    codebook->add_option("--n", o.n, "Ambient dimension");
    codebook->add_option("--size", o.size, "Number of codewords");
    codebook->add_option("--iters", o.iters, "Max-min improvement iterations");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!o.config.empty())
            apply_config(*sub, o.config);
        if (sub != codebook) {
            for (const char* name : {"--Nn", "--Nc", "--T"})
                require(*sub, name);
        } else {
            for (const char* name : {"--k", "--n"})
                require(*sub, name);
        }
        if (sub != dof)
            require(*sub, "--seed");

        if (sub == dof) return cmd_dof(o, out);
        if (sub == ser) return cmd_ser(o, out);
        if (sub == rate) return cmd_rate(o, out);
        return cmd_codebook(o, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace grassbc::cli
