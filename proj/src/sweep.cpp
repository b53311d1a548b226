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

#include "cplc/sweep.hpp"
#include "cplc/constants.hpp"
#include "cplc/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cplc
{
    using constants::pi;
    using cdouble = std::complex<double>;

    std::string to_string(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::directivity_vs_freq: return "directivity_vs_freq";
        case SweepKind::pattern_polar: return "pattern_polar";
        case SweepKind::cplc_vs_coupling: return "cplc_vs_coupling";
        case SweepKind::cplc_vs_length: return "cplc_vs_length";
        case SweepKind::cplc_vs_paths: return "cplc_vs_paths";
        }
        return "unknown";
    }

    std::optional<SweepKind> sweep_kind_from_string(const std::string &text)
    {
        for (auto k : {SweepKind::directivity_vs_freq, SweepKind::pattern_polar, SweepKind::cplc_vs_coupling,
                       SweepKind::cplc_vs_length, SweepKind::cplc_vs_paths})
            if (to_string(k) == text)
                return k;
        return std::nullopt;
    }

    std::string varied_column(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::cplc_vs_coupling: return "efficiency";
        case SweepKind::cplc_vs_length: return "length_m";
        case SweepKind::cplc_vs_paths: return "paths";
        default: return "value";
        }
    }

    std::optional<GroundParameters> Scenario::ground_or_none() const
    {
        switch (ground_model)
        {
        case GroundModel::none: return std::nullopt;
        case GroundModel::perfect:
        {
            GroundParameters g = ground;
            g.perfect = true;
            return g;
        }
        case GroundModel::lossy: break;
        }
        GroundParameters g = ground;
        g.perfect = false;
        return g;
    }

    std::vector<PlcPath> Scenario::plc_path_set() const
    {
        if (!plc_explicit.empty())
            return plc_explicit;
        return default_plc_paths(plc_paths, plc_length_m, plc_g_total);
    }

    namespace
    {
        bool is_channel_sweep(SweepKind kind)
        {
            return kind == SweepKind::cplc_vs_coupling || kind == SweepKind::cplc_vs_length ||
                   kind == SweepKind::cplc_vs_paths;
        }

        void check_varied(SweepKind kind, double v)
        {
            switch (kind)
            {
            case SweepKind::cplc_vs_coupling:
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::invalid_argument("coupling efficiency " + std::to_string(v) + " outside [0, 1]");
                break;
            case SweepKind::cplc_vs_length:
                if (!(v > 0.0) || !std::isfinite(v))
                    throw std::invalid_argument("cable length " + std::to_string(v) + " must be positive");
                break;
            case SweepKind::cplc_vs_paths:
                if (!(v >= 1.0) || v != std::floor(v) || v > 1e6)
                    throw std::invalid_argument("path count " + std::to_string(v) + " must be a positive integer");
                break;
            default: break;
            }
        }

        Scenario apply(const Scenario &base, SweepKind kind, double v)
        {
            Scenario s = base;
            switch (kind)
            {
            case SweepKind::cplc_vs_coupling: s.coupling.efficiency = v; break;
            case SweepKind::cplc_vs_length: s.plc_length_m = v; break;
            case SweepKind::cplc_vs_paths: s.plc_paths = static_cast<int>(v); break;
            default: break;
            }
            return s;
        }

        double current_value(const Scenario &s, SweepKind kind)
        {
            switch (kind)
            {
            case SweepKind::cplc_vs_coupling: return s.coupling.efficiency;
            case SweepKind::cplc_vs_length: return s.plc_length_m;
            case SweepKind::cplc_vs_paths: return s.plc_paths;
            default: return 0.0;
            }
        }

        double magnitude_db(const cdouble &h)
        {
            return 20.0 * std::log10(std::max(std::abs(h), std::numeric_limits<double>::min()));
        }

        SweepResult channel_sweep(const SweepPlan &plan)
        {
            const auto grid = frequency_grid(plan.freq_grid.start_hz, plan.freq_grid.stop_hz, plan.freq_grid.step_hz);
            const bool has_dc = grid.front() == 0.0;
            const std::vector<double> eval(grid.begin() + (has_dc ? 1 : 0), grid.end());
            if (eval.empty())
                throw std::invalid_argument("sweep: frequency grid has no non-zero point");

            const std::vector<double> values =
                plan.varied_values.empty() ? std::vector<double>{current_value(plan.fixed, plan.kind)} : plan.varied_values;

            RicianConfig rician = plan.fixed.rician;
            rician.seed = plan.seed;
            std::vector<ChannelResponse> rf;
            rf.reserve(static_cast<std::size_t>(plan.realizations));
            for (int r = 0; r < plan.realizations; ++r)
                rf.push_back(h_rf(sample_rician_paths(rician, plan.fixed.rf_paths, static_cast<std::uint64_t>(r)), eval));

            SweepResult out;
            out.plan = plan;
            out.table.columns = {varied_column(plan.kind), "freq_hz", "mean_mag_db", "std_mag_db",
                                 "mean_phase_rad", "mean_power_db"};
            out.table.rows.reserve(values.size() * grid.size());

            const std::size_t nf = eval.size();
            const double inv_r = 1.0 / plan.realizations;
            for (double v : values)
            {
                const Scenario s = apply(plan.fixed, plan.kind, v);
                ChannelResponse plc;
                try
                {
                    const auto paths = s.plc_path_set();
                    plc = h_plc(paths, eval, s.cable);
                }
                catch (const std::exception &e)
                {
                    throw numerical_error("sweep value " + std::to_string(v) + ": " + e.what());
                }

                std::vector<double> sum_db(nf, 0.0), sum_db2(nf, 0.0), sum_pow(nf, 0.0);
                std::vector<cdouble> sum_phasor(nf, 0.0);
                for (const auto &rf_r : rf)
                {
                    const ChannelResponse h = h_cplc(plc, rf_r, s.coupling);
                    for (std::size_t k = 0; k < nf; ++k)
                    {
                        const cdouble hk = h.h[k];
                        if (!std::isfinite(hk.real()) || !std::isfinite(hk.imag()))
                            throw numerical_error("sweep value " + std::to_string(v) + " at " +
                                                  std::to_string(eval[k]) + " Hz: non-finite response");
                        const double db = magnitude_db(hk);
                        sum_db[k] += db;
                        sum_db2[k] += db * db;
                        sum_pow[k] += std::norm(hk);
                        const double mag = std::abs(hk);
                        if (mag > 0.0)
                            sum_phasor[k] += hk / mag;
                    }
                }

                std::vector<std::vector<double>> rows(nf);
                for (std::size_t k = 0; k < nf; ++k)
                {
                    const double mean = sum_db[k] * inv_r;
                    const double var = std::max(0.0, sum_db2[k] * inv_r - mean * mean);
                    const double power = sum_pow[k] * inv_r;
                    const double power_db = 10.0 * std::log10(std::max(power, std::numeric_limits<double>::min()));
                    rows[k] = {v, eval[k], mean, std::sqrt(var), std::arg(sum_phasor[k]), power_db};
                }
                if (has_dc)
                {
                    auto dc = rows.front();
                    dc[1] = 0.0;
                    out.table.rows.push_back(std::move(dc));
                }
                for (auto &row : rows)
                    out.table.rows.push_back(std::move(row));
            }
            return out;
        }
    }

    void SweepPlan::validate() const
    {
        if (!(freq_grid.step_hz > 0.0) || !(freq_grid.stop_hz > freq_grid.start_hz) || !(freq_grid.start_hz >= 0.0))
            throw std::invalid_argument("sweep: frequency grid needs 0 <= start < stop and step > 0");
        if (realizations < 1)
            throw std::invalid_argument("sweep: realizations must be >= 1");
        fixed.wire.validate();
        fixed.cable.validate();
        fixed.rician.validate();
        fixed.coupling.validate();
        if (fixed.ground_model != GroundModel::none)
            fixed.ground.validate();
        if (fixed.rf_paths < 1 || fixed.plc_paths < 1)
            throw std::invalid_argument("sweep: path counts must be >= 1");
        if (!(fixed.plc_length_m > 0.0))
            throw std::invalid_argument("sweep: cable length must be positive");
        if (!fixed.plc_explicit.empty() &&
            (kind == SweepKind::cplc_vs_length || kind == SweepKind::cplc_vs_paths))
            throw std::invalid_argument("sweep: explicit PLC paths cannot be combined with length or path-count sweeps");
        if (is_channel_sweep(kind))
            for (double v : varied_values)
                check_varied(kind, v);
        if (!(pattern_resolution_deg > 0.0) || !(pattern_freq_hz > 0.0))
            throw std::invalid_argument("sweep: pattern frequency and resolution must be positive");
        if (!(quad_resolution_deg > 0.0 && quad_resolution_deg <= 1.0) || !(phi_resolution_deg > 0.0))
            throw std::invalid_argument("sweep: quadrature resolution must be in (0, 1] degrees");
    }

    SweepResult run_sweep(const SweepPlan &plan)
    {
        plan.validate();
        SweepResult out;
        switch (plan.kind)
        {
        case SweepKind::directivity_vs_freq:
        {
            const auto grid = frequency_grid(plan.freq_grid.start_hz, plan.freq_grid.stop_hz, plan.freq_grid.step_hz);
            out = directivity_sweep(plan.fixed.wire, grid, plan.quad_resolution_deg * pi / 180.0,
                                    plan.phi_resolution_deg * pi / 180.0);
            break;
        }
        case SweepKind::pattern_polar:
            out = pattern_sweep(plan.fixed.wire, plan.pattern_freq_hz, plan.pattern_resolution_deg);
            break;
        default:
            return channel_sweep(plan);
        }
        out.plan = plan;
        return out;
    }

    SweepResult directivity_sweep(const WireGeometry &geometry, std::span<const double> freqs_hz,
                                  double quad_resolution_rad, double phi_resolution_rad)
    {
        geometry.validate();
        SweepResult out;
        out.table.columns = {"freq_hz", "n", "dmax_quad_dbi", "dmax_approx_dbi", "theta_max_deg",
                             "theta_max_classical_deg", "theta_lobe_quad_deg"};
        constexpr double to_deg = 180.0 / pi;
        for (double f : freqs_hz)
        {
            if (!(f >= 1e9 * (1.0 - 1e-12) && f <= 20e9 * (1.0 + 1e-12)))
                throw std::domain_error("directivity_sweep: frequency " + std::to_string(f) +
                                        " Hz outside the 1-20 GHz band");
            const double n = electrical_length(geometry.length_m, f).n;
            const DirectivityResult d = directivity(geometry, f, quad_resolution_rad, phi_resolution_rad);
            out.table.rows.push_back({f, n, d.d_max_dbi, d_max_approx_dbi(n), theta_max(n) * to_deg,
                                      theta_max_classical(n) * to_deg, d.theta_max_rad * to_deg});
        }
        return out;
    }

    SweepResult pattern_sweep(const WireGeometry &geometry, double freq_hz, double resolution_deg)
    {
        geometry.validate();
        const double n = electrical_length(geometry.length_m, freq_hz).n;
        const double res = resolution_deg * pi / 180.0;

        SweepResult out;
        out.lobe_count = lobe_count(n, res); // enforces the resolution contract
        const auto circle = pattern_circle(n, res);
        double peak = 0.0;
        for (const auto &s : circle)
            peak = std::max(peak, s.value);
        if (!(peak > 0.0))
            throw numerical_error("pattern_sweep: pattern vanishes on the whole grid");

        out.table.columns = {"angle_deg", "magnitude"};
        out.table.rows.reserve(circle.size());
        for (const auto &s : circle)
            out.table.rows.push_back({s.theta_rad * 180.0 / pi, s.value / peak});
        return out;
    }
}
