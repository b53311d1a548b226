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

#include "cplc/channels.hpp"
#include "cplc/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cplc
{
    using cdouble = std::complex<double>;

    namespace
    {
        constexpr cdouble j1{0.0, 1.0};

        void check_grid(std::span<const double> freqs)
        {
            for (std::size_t i = 0; i < freqs.size(); ++i)
            {
                if (!(freqs[i] >= 0.0) || !std::isfinite(freqs[i]))
                    throw std::invalid_argument("frequency grid values must be finite and non-negative");
                if (i > 0 && !(freqs[i] > freqs[i - 1]))
                    throw std::invalid_argument("frequency grid must be strictly increasing");
            }
        }
    }

    void RicianConfig::validate() const
    {
        if (!(k_factor >= 0.0) || std::isnan(k_factor))
            throw std::invalid_argument("Rician K-factor must be non-negative");
        if (!(mean_power > 0.0) || !std::isfinite(mean_power))
            throw std::invalid_argument("Rician mean power must be positive");
        if (!(los_distance_m >= 0.0) || !(delay_spread_s >= 0.0))
            throw std::invalid_argument("LOS distance and delay spread must be non-negative");
    }

    void ChannelResponse::validate() const
    {
        if (freqs_hz.size() != h.size())
            throw std::invalid_argument("channel response: frequency and value counts differ");
        check_grid(freqs_hz);
        for (const auto &v : h)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("channel response contains non-finite values");
    }

    void CouplingConfig::validate() const
    {
        if (!(efficiency >= 0.0 && efficiency <= 1.0))
            throw std::invalid_argument("coupling efficiency must lie in [0, 1]");
    }

    std::vector<double> frequency_grid(double start_hz, double stop_hz, double step_hz)
    {
        if (!(step_hz > 0.0) || !(stop_hz > start_hz) || !(start_hz >= 0.0))
            throw std::invalid_argument("frequency grid needs 0 <= start < stop and step > 0");
        const auto count = static_cast<std::size_t>(std::floor((stop_hz - start_hz) / step_hz + 0.5)) + 1;
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = start_hz + static_cast<double>(i) * step_hz;
        return grid;
    }

    double plc_delay(double length_m, double eps_r)
    {
        if (!(length_m >= 0.0))
            throw std::domain_error("plc_delay: length must be non-negative");
        if (!(eps_r >= 1.0))
            throw std::domain_error("plc_delay: relative permittivity must be >= 1");
        return length_m * std::sqrt(eps_r) / constants::speed_of_light;
    }

    ChannelResponse h_plc(std::span<const PlcPath> paths, std::span<const double> freqs_hz, const CableSpec &cable)
    {
        if (paths.empty())
            throw std::invalid_argument("h_plc: at least one path is required");
        for (const auto &p : paths)
            if (!(p.length_m > 0.0) || !(std::abs(p.g) <= 1.0))
                throw std::invalid_argument("h_plc: paths need length > 0 and |g| <= 1");
        check_grid(freqs_hz);
        cable.validate();

        ChannelResponse out;
        out.freqs_hz.assign(freqs_hz.begin(), freqs_hz.end());
        out.h.resize(freqs_hz.size());
        std::vector<double> delays;
        delays.reserve(paths.size());
        for (const auto &p : paths)
            delays.push_back(plc_delay(p.length_m, cable.eps_r_ins));

        for (std::size_t k = 0; k < freqs_hz.size(); ++k)
        {
            const double f = freqs_hz[k];
            const double alpha = propagation_constant(rlgc_at(cable, f)).alpha_np_per_m;
            cdouble sum = 0.0;
            for (std::size_t i = 0; i < paths.size(); ++i)
                sum += paths[i].g * std::exp(-alpha * paths[i].length_m) *
                       std::exp(-j1 * (2.0 * constants::pi * f * delays[i]));
            out.h[k] = sum;
        }
        return out;
    }

    ChannelResponse h_rf(std::span<const RfPath> paths, std::span<const double> freqs_hz)
    {
        if (paths.empty())
            throw std::invalid_argument("h_rf: at least one path is required");
        check_grid(freqs_hz);

        ChannelResponse out;
        out.freqs_hz.assign(freqs_hz.begin(), freqs_hz.end());
        out.h.resize(freqs_hz.size());
        for (std::size_t k = 0; k < freqs_hz.size(); ++k)
        {
            cdouble sum = 0.0;
            for (const auto &p : paths)
                sum += p.amplitude * std::exp(-j1 * (2.0 * constants::pi * freqs_hz[k] * p.delay_s));
            out.h[k] = sum;
        }
        return out;
    }

    std::mt19937_64 realization_rng(std::uint64_t seed, std::uint64_t realization)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(realization), static_cast<std::uint32_t>(realization >> 32)};
        return std::mt19937_64(seq);
    }

    std::vector<RfPath> sample_rician_paths(const RicianConfig &config, int m_paths, std::uint64_t realization)
    {
        config.validate();
        if (m_paths < 1)
            throw std::invalid_argument("sample_rician_paths: at least one path is required");

        auto rng = realization_rng(config.seed, realization);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        const double k = config.k_factor;
        // Written so that K -> infinity stays finite.
        const double los_power = config.mean_power / (1.0 + 1.0 / k);
        const double scattered_power = config.mean_power / (k + 1.0);
        const double los_delay = config.los_distance_m / constants::speed_of_light;

        std::vector<RfPath> paths;
        paths.reserve(static_cast<std::size_t>(m_paths));
        paths.push_back({std::sqrt(k > 0.0 ? los_power : 0.0), los_delay});

        if (m_paths == 1)
        {
            const double s = std::sqrt(scattered_power / 2.0);
            const double x = gauss(rng);
            const double y = gauss(rng);
            paths.front().amplitude += cdouble{s * x, s * y};
            return paths;
        }

        const double per_path = std::sqrt(scattered_power / (m_paths - 1) / 2.0);
        for (int i = 1; i < m_paths; ++i)
        {
            const double x = gauss(rng);
            const double y = gauss(rng);
            const double u = unit(rng);
            paths.push_back({cdouble{per_path * x, per_path * y}, los_delay + config.delay_spread_s * (1.0 - u)});
        }
        return paths;
    }

    ChannelResponse h_cplc(const ChannelResponse &plc, const ChannelResponse &rf, const CouplingConfig &coupling)
    {
        coupling.validate();
        plc.validate();
        rf.validate();
        if (plc.freqs_hz != rf.freqs_hz)
            throw std::invalid_argument("h_cplc: PLC and RF responses use different frequency grids");

        const double eps2 = coupling.efficiency * coupling.efficiency;
        ChannelResponse out;
        out.freqs_hz = plc.freqs_hz;
        out.h.resize(plc.h.size());
        for (std::size_t k = 0; k < plc.h.size(); ++k)
            out.h[k] = eps2 * plc.h[k] * (rf.h[k] * rf.h[k]);
        return out;
    }

    std::vector<PlcPath> default_plc_paths(int n_paths, double first_length_m, double g_total)
    {
        if (n_paths < 1)
            throw std::invalid_argument("default_plc_paths: at least one path is required");
        if (!(first_length_m > 0.0))
            throw std::invalid_argument("default_plc_paths: path length must be positive");
        if (!(std::abs(g_total) <= 1.0))
            throw std::invalid_argument("default_plc_paths: |g_total| must not exceed 1");

        double harmonic = 0.0;
        for (int i = 1; i <= n_paths; ++i)
            harmonic += 1.0 / i;
        const double g1 = g_total / harmonic;

        std::vector<PlcPath> paths;
        paths.reserve(static_cast<std::size_t>(n_paths));
        for (int i = 1; i <= n_paths; ++i)
            paths.push_back({g1 / i, (2.0 * i - 1.0) * first_length_m});
        return paths;
    }
}
