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

#pragma once

#include "cplc/cable.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cplc
{
    // One power-line propagation path: real weighting factor and travelled length.
    struct PlcPath
    {
        double g = 1.0;
        double length_m = 2.0;
        bool operator==(const PlcPath &) const = default;
    };

    struct RfPath
    {
        std::complex<double> amplitude;
        double delay_s = 0.0;
    };

    struct RicianConfig
    {
        double k_factor = 3.9810717055349722; // 6 dB
        double mean_power = 1.0;
        std::uint64_t seed = 1;
        double los_distance_m = 3.0;
        double delay_spread_s = 20e-9;

        void validate() const;
        bool operator==(const RicianConfig &) const = default;
    };

    struct ChannelResponse
    {
        std::vector<double> freqs_hz;
        std::vector<std::complex<double>> h;

        void validate() const;
    };

    struct CouplingConfig
    {
        double efficiency = 1.0; // amplitude fraction per PLC/RF interface
        void validate() const;
        bool operator==(const CouplingConfig &) const = default;
    };

    // start, start + step, ... up to stop (inclusive within half a step).
    std::vector<double> frequency_grid(double start_hz, double stop_hz, double step_hz);

    // length * sqrt(eps_r) / c
    double plc_delay(double length_m, double eps_r);

    /// sum_i g_i exp(-alpha(f) l_i) exp(-j 2 pi f tau_i), with alpha from the cable model and
    /// tau_i = plc_delay(l_i, insulation eps_r).
    ChannelResponse h_plc(std::span<const PlcPath> paths, std::span<const double> freqs_hz, const CableSpec &cable);

    // sum_i a_i exp(-j 2 pi f tau_i)
    ChannelResponse h_rf(std::span<const RfPath> paths, std::span<const double> freqs_hz);

    /// Generator for realization `realization` of the stream identified by `seed`. Distinct
    /// realizations never share state.
    std::mt19937_64 realization_rng(std::uint64_t seed, std::uint64_t realization);

    /// Rician multipath draw. Path 0 is the line-of-sight component with power K/(K+1) P at delay
    /// los_distance/c. The other m-1 paths split the scattered power P/(K+1) equally as circular
    /// complex Gaussian amplitudes with delays uniform in (los_delay, los_delay + delay_spread].
    /// With m = 1 the scattered part rides on the line-of-sight path so that E|a|^2 = P still holds.
    /// Bit-reproducible for a given (config, m_paths, realization).
    std::vector<RfPath> sample_rician_paths(const RicianConfig &config, int m_paths, std::uint64_t realization = 0);

    /// eps^2 * H_plc * H_rf^2: both RF hops share one response and each interface passes eps of
    /// the amplitude.
    ChannelResponse h_cplc(const ChannelResponse &plc, const ChannelResponse &rf, const CouplingConfig &coupling);

    /// Path set for path-count sweeps: g_i = g_1 / i with g_1 chosen so that sum g_i = g_total, and
    /// l_i = (2i - 1) l_1 (each further path adds one round trip along the cable).
    std::vector<PlcPath> default_plc_paths(int n_paths, double first_length_m, double g_total = 1.0);
}
