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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "grassbc/channel.hpp"

using namespace grassbc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double entry_variance(const std::vector<ComplexMatrix>& samples)
{
    double s = 0.0;
    long count = 0;
    for (const auto& m : samples) {
        s += m.squaredNorm();
        count += m.size();
    }
    return s / count;
}

} // namespace

TEST_CASE("ChannelConfig: invariants")
{
    CHECK_NOTHROW(ChannelConfig::make(2, 4, 8).validate());
    CHECK(ChannelConfig::make(4, 3, 8).M == 4);

    ChannelConfig c = ChannelConfig::make(2, 4, 3);
    try {
        c.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("T >= 2Nn") != std::string::npos);
    }
    c = ChannelConfig::make(2, 4, 8);
    c.M = 3;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ChannelConfig::make(2, 4, 8, 0.0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ChannelConfig::make(2, 4, 8, kInf);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("sample_channel: shapes and the static guard")
{
    Rng rng(1);
    const auto scalar = sample_channel(ChannelConfig::make(1, 1, 2), rng);
    CHECK(scalar.Hd.rows() == 1);
    CHECK(scalar.Hs.size() == 1);
    CHECK(std::abs(scalar.Hs(0, 0)) > 0.0);

    const auto r = sample_channel(ChannelConfig::make(2, 4, 8), rng);
    CHECK(r.Hd.rows() == 2);
    CHECK(r.Hd.cols() == 4);
    CHECK(r.Hs.rows() == 4);
    CHECK(r.Hs.cols() == 4);
    CHECK(r.Hs_svd.condition_number() <= kMaxStaticCondition);
    for (Eigen::Index i = 1; i < r.Hs_svd.singular_values.size(); ++i)
        CHECK(r.Hs_svd.singular_values(i - 1) >= r.Hs_svd.singular_values(i));
    CHECK(r.Hs_svd.singular_values(3) > 0.0);
    CHECK_THROWS_AS(sample_channel(ChannelConfig::make(2, 4, 3), rng), ConfigError);
}

TEST_CASE("sample_channel: fading moments for both tags")
{
    for (Fading f : {Fading::complex_normal, Fading::qpsk}) {
        Rng rng(2);
        ChannelConfig cfg = ChannelConfig::make(2, 4, 8);
        cfg.fading = f;
        std::vector<ComplexMatrix> hd;
        Complex mean = 0.0;
        for (int i = 0; i < 10000; ++i) {
            hd.push_back(sample_channel(cfg, rng).Hd);
            mean += hd.back().sum();
        }
        const double var = entry_variance(hd);
        CHECK(var >= 0.95);
        CHECK(var <= 1.05);
        CHECK(std::abs(mean) / (10000.0 * 8.0) < 0.02);
    }
}

TEST_CASE("transmit: noiseless, pure noise, scalar moments")
{
    Rng rng(3);
    const ComplexMatrix h = gaussian_matrix(2, 3, rng);
    const ComplexMatrix x = gaussian_matrix(3, 4, rng);
    const ComplexMatrix clean = h * x;
    CHECK((transmit(x, h, kInf, rng).array() == clean.array()).all());

    std::vector<ComplexMatrix> noise;
    for (int i = 0; i < 10000; ++i)
        noise.push_back(transmit(ComplexMatrix::Zero(3, 4), h, 10.0, rng));
    CHECK(entry_variance(noise) * 10.0 == doctest::Approx(1.0).epsilon(0.05));

    ComplexMatrix one = ComplexMatrix::Ones(1, 1);
    Complex m = 0.0;
    double v = 0.0;
    std::vector<Complex> ys;
    for (int i = 0; i < 10000; ++i)
        ys.push_back(transmit(one, one, 100.0, rng)(0, 0));
    for (auto y : ys)
        m += y;
    m /= 10000.0;
    for (auto y : ys)
        v += std::norm(y - m);
    v /= 10000.0;
    CHECK(std::abs(m - 1.0) < 0.005);
    CHECK(v == doctest::Approx(0.01).epsilon(0.05));

    CHECK_THROWS_AS(transmit(x, gaussian_matrix(2, 2, rng), 1.0, rng), DimensionError);
}

TEST_CASE("transmit: doubling rho halves the noise power")
{
    Rng rng(4);
    const ComplexMatrix zero = ComplexMatrix::Zero(2, 4);
    const ComplexMatrix h = ComplexMatrix::Identity(2, 2);
    std::vector<ComplexMatrix> a, b;
    for (int i = 0; i < 10000; ++i) {
        a.push_back(transmit(zero, h, 5.0, rng));
        b.push_back(transmit(zero, h, 10.0, rng));
    }
    CHECK(entry_variance(a) / entry_variance(b) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("embed_antennas pads with zero rows")
{
    Rng rng(5);
    const ComplexMatrix x = gaussian_matrix(2, 3, rng);
    const ComplexMatrix e = embed_antennas(x, 4);
    CHECK(e.rows() == 4);
    CHECK((e.topRows(2).array() == x.array()).all());
    CHECK(e.bottomRows(2).isZero(0.0));
    CHECK_THROWS_AS(embed_antennas(x, 1), DimensionError);
}

TEST_CASE("check_power")
{
    const auto zero = check_power([] { return ComplexMatrix(ComplexMatrix::Zero(2, 4)); }, 4, 10);
    CHECK(zero.mean_power == 0.0);
    CHECK_FALSE(zero.pass);

    Rng rng(6);
    const auto unit = check_power(
        [&] { return ComplexMatrix(std::sqrt(2.0) * haar_unitary(2, 4, rng)); }, 4, 100);
    CHECK(unit.mean_power == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(unit.pass);
}
