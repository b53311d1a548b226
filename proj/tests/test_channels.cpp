// SPDX-License-Identifier: Apache-2.0
//
// cplc-sim: contactless power-line communication channel simulator
// Copyright (C) 2026 The cplc-sim authors
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

#include "catch_amalgamated.hpp"

#include "cplc/cable.hpp"
#include "cplc/channels.hpp"
#include "cplc/constants.hpp"
#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace cplc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double pi = std::numbers::pi;

    std::vector<double> envelopes(RicianConfig cfg, int m, int draws)
    {
        std::vector<double> r;
        r.reserve(std::size_t(draws));
        for (int i = 0; i < draws; ++i)
        {
            std::complex<double> s = 0.0;
            for (const auto &p : sample_rician_paths(cfg, m, std::uint64_t(i)))
                s += p.amplitude;
            r.push_back(std::abs(s));
        }
        return r;
    }
}

TEST_CASE("Channels - PLC delay")
{
    CHECK(plc_delay(0.0, 2.25) == 0.0);
    CHECK_THAT(plc_delay(2.0, 2.25), WithinRel(2.0 * 1.5 / constants::speed_of_light, 1e-14));
    CHECK_THAT(plc_delay(2.0, 2.25), WithinRel(1.0007e-8, 1e-4));
    CHECK_THAT(plc_delay(3.0, 1.0), WithinRel(3.0 / constants::speed_of_light, 1e-14));
}

TEST_CASE("Channels - PLC response")
{
    const CableSpec cable;
    const auto f = frequency_grid(1e7, 5e9, 1e7);

    // Vanishing length: no attenuation, no delay.
    const std::vector<PlcPath> tiny{{1.0, 1e-12}};
    const auto h0 = h_plc(tiny, f, cable);
    for (const auto &h : h0.h)
        REQUIRE(std::abs(h - std::complex<double>(1.0, 0.0)) < 1e-9);

    // alpha(f0) l = ln 2 with g = 0.5 gives 0.25.
    const double f0 = 1e9;
    const double alpha = propagation_constant(rlgc_at(cable, f0)).alpha_np_per_m;
    const std::vector<PlcPath> half{{0.5, std::log(2.0) / alpha}};
    const std::vector<double> one{f0};
    CHECK_THAT(std::abs(h_plc(half, one, cable).h[0]), WithinRel(0.25, 1e-12));

    // Two equal half-weight paths equal one full path.
    const std::vector<PlcPath> two{{0.5, 3.0}, {0.5, 3.0}}, single{{1.0, 3.0}};
    const auto a = h_plc(two, f, cable), b = h_plc(single, f, cable);
    for (std::size_t i = 0; i < f.size(); ++i)
        REQUIRE(std::abs(a.h[i] - b.h[i]) < 1e-14);

    const std::vector<PlcPath> bad{{1.5, 2.0}};
    CHECK_THROWS_AS(h_plc(bad, f, cable), std::invalid_argument);
}

TEST_CASE("Channels - RF response")
{
    const std::vector<double> f{1e8, 5e8, 2e9};
    const std::vector<RfPath> direct{{1.0, 0.0}};
    for (const auto &h : h_rf(direct, f).h)
        CHECK(std::abs(h - std::complex<double>(1.0, 0.0)) < 1e-15);

    const std::vector<RfPath> delayed{{1.0, 1e-9}};
    const std::vector<double> f500{5e8};
    const auto h = h_rf(delayed, f500).h[0];
    CHECK_THAT(h.real(), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(h.imag(), WithinAbs(0.0, 1e-12));

    const double f0 = 7e8;
    const std::vector<RfPath> pair{{1.0, 0.0}, {1.0, 1.0 / (2 * f0)}};
    const std::vector<double> ff{f0};
    CHECK(std::abs(h_rf(pair, ff).h[0]) < 1e-12);
}

TEST_CASE("Channels - Rician LOS limit")
{
    RicianConfig cfg;
    cfg.k_factor = 1e9;
    const auto paths = sample_rician_paths(cfg, 4, 7);
    const auto f = frequency_grid(1e7, 5e9, 1e7);
    const double los = std::sqrt(cfg.mean_power * cfg.k_factor / (cfg.k_factor + 1));
    for (const auto &h : h_rf(paths, f).h)
        REQUIRE_THAT(std::abs(h), WithinAbs(los, 1e-3));
}

TEST_CASE("Channels - Rayleigh envelope for K = 0")
{
    RicianConfig cfg;
    cfg.k_factor = 0.0;
    CHECK(oracle::rician_k(envelopes(cfg, 2, 100000)) < 0.05);
}

TEST_CASE("Channels - Rician K and mean power")
{
    for (double k : {1.0, 5.0, 10.0})
    {
        RicianConfig cfg;
        cfg.k_factor = k;
        cfg.seed = 20260;
        const int draws = 100000;
        const auto r = envelopes(cfg, 4, draws);
        INFO("K = " << k);
        CHECK_THAT(oracle::rician_k(r), WithinRel(k, 0.05));

        double power = 0.0;
        for (int i = 0; i < draws; ++i)
            for (const auto &p : sample_rician_paths(cfg, 4, std::uint64_t(i)))
                power += std::norm(p.amplitude);
        CHECK_THAT(power / draws, WithinRel(1.0, 0.01));
    }
}

TEST_CASE("Channels - Rician single path")
{
    RicianConfig cfg;
    cfg.k_factor = 5.0;
    const auto r = envelopes(cfg, 1, 100000);
    CHECK_THAT(oracle::rician_k(r), WithinRel(5.0, 0.05));
}

TEST_CASE("Channels - Rician paths are reproducible and delayed after the LOS")
{
    RicianConfig cfg;
    const auto a = sample_rician_paths(cfg, 6, 3), b = sample_rician_paths(cfg, 6, 3);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].amplitude == b[i].amplitude);
        CHECK(a[i].delay_s == b[i].delay_s);
    }
    const double los = cfg.los_distance_m / constants::speed_of_light;
    CHECK(a[0].delay_s == los);
    for (std::size_t i = 1; i < a.size(); ++i)
    {
        CHECK(a[i].delay_s > los);
        CHECK(a[i].delay_s <= los + cfg.delay_spread_s);
    }
    CHECK(sample_rician_paths(cfg, 6, 4)[1].amplitude != a[1].amplitude);
}

TEST_CASE("Channels - Cascade")
{
    const auto f = frequency_grid(1e7, 5e9, 1e7);
    ChannelResponse ones{f, std::vector<std::complex<double>>(f.size(), 1.0)};
    for (const auto &h : h_cplc(ones, ones, CouplingConfig{1.0}).h)
        REQUIRE(h == std::complex<double>(1.0, 0.0));
    for (const auto &h : h_cplc(ones, ones, CouplingConfig{0.5}).h)
        REQUIRE(std::abs(h) == 0.25);

    RicianConfig cfg;
    const auto plc = h_plc(default_plc_paths(3, 2.0), f, CableSpec{});
    const auto rf = h_rf(sample_rician_paths(cfg, 4, 0), f);
    const auto c = h_cplc(plc, rf, CouplingConfig{0.75});
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        const double expect = 0.75 * 0.75 * std::abs(plc.h[i]) * std::abs(rf.h[i]) * std::abs(rf.h[i]);
        REQUIRE_THAT(std::abs(c.h[i]), WithinRel(expect, 1e-14));
    }

    ChannelResponse shorter{{1e7}, {1.0}};
    CHECK_THROWS_AS(h_cplc(shorter, rf, CouplingConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(CouplingConfig{1.5}.validate(), std::invalid_argument);
}

TEST_CASE("Channels - Default path rule")
{
    const auto p = default_plc_paths(5, 2.0);
    REQUIRE(p.size() == 5);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        CHECK_THAT(p[i].g, WithinRel(p[0].g / double(i + 1), 1e-14));
        CHECK_THAT(p[i].length_m, WithinRel(2.0 * double(2 * i + 1), 1e-14));
        sum += p[i].g;
    }
    CHECK_THAT(sum, WithinRel(1.0, 1e-14));
    CHECK(default_plc_paths(1, 2.0)[0].g == 1.0);
}

TEST_CASE("Channels - Frequency grid")
{
    const auto f = frequency_grid(1e7, 5e9, 1e7);
    CHECK(f.size() == 500);
    CHECK(f.front() == 1e7);
    CHECK_THAT(f.back(), WithinRel(5e9, 1e-12));
    CHECK(frequency_grid(0.0, 5e9, 1e7).size() == 501);
}
