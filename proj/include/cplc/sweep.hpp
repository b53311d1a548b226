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

#include "cplc/antenna.hpp"
#include "cplc/cable.hpp"
#include "cplc/channels.hpp"
#include "cplc/mom.hpp"

#include <cstdint>
#include <numbers>
#include <span>
#include <optional>
#include <string>
#include <vector>

namespace cplc
{
    enum class GroundModel
    {
        none,
        lossy,
        perfect
    };

    enum class SweepKind
    {
        directivity_vs_freq,
        pattern_polar,
        cplc_vs_coupling,
        cplc_vs_length,
        cplc_vs_paths
    };

    std::string to_string(SweepKind kind);
    std::optional<SweepKind> sweep_kind_from_string(const std::string &text);

    // Everything a model evaluation needs apart from the swept quantity.
    struct Scenario
    {
        WireGeometry wire;
        GroundModel ground_model = GroundModel::lossy;
        GroundParameters ground;
        CableSpec cable;

        double plc_length_m = 2.0;      // first (direct) path length
        int plc_paths = 1;
        double plc_g_total = 1.0;
        std::vector<PlcPath> plc_explicit; // replaces the generated path set when non-empty

        RicianConfig rician;            // seed is taken from the plan
        int rf_paths = 4;
        CouplingConfig coupling;

        std::optional<GroundParameters> ground_or_none() const;
        std::vector<PlcPath> plc_path_set() const;
        bool operator==(const Scenario &) const = default;
    };

    struct FrequencyGrid
    {
        double start_hz = 0.0;
        double stop_hz = 5e9;
        double step_hz = 1e7;
        bool operator==(const FrequencyGrid &) const = default;
    };

    struct SweepPlan
    {
        SweepKind kind = SweepKind::cplc_vs_coupling;
        FrequencyGrid freq_grid;
        std::vector<double> varied_values; // empty: the scenario's own value
        Scenario fixed;
        int realizations = 100;
        std::uint64_t seed = 1;

        double pattern_freq_hz = 10e9;
        double pattern_resolution_deg = 0.01;
        double quad_resolution_deg = 0.5;
        double phi_resolution_deg = 2.0;

        void validate() const;
        bool operator==(const SweepPlan &) const = default;
    };

    // Column-labelled numeric table; serialized as CSV by the CLI.
    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
    };

    struct SweepResult
    {
        Table table;
        SweepPlan plan;
        std::optional<int> lobe_count; // pattern sweeps only
    };

    // Name of the first CSV column for a channel sweep (efficiency, length_m, paths).
    std::string varied_column(SweepKind kind);

    /// Channel sweeps average 20 log10|H_cplc| over `realizations` Rician draws. Draw r uses the
    /// stream (seed, r) for every varied value, so curves differ only through the varied
    /// quantity. A 0 Hz grid point repeats the first non-zero bin. Columns:
    ///   <varied>, freq_hz, mean_mag_db, std_mag_db, mean_phase_rad, mean_power_db
    /// where mean_phase_rad is the circular mean and mean_power_db is 10 log10 of the mean |H|^2.
    SweepResult run_sweep(const SweepPlan &plan);

    /// Closed-form directivity per frequency. Columns:
    ///   freq_hz, n, dmax_quad_dbi, dmax_approx_dbi, theta_max_deg, theta_max_classical_deg, theta_lobe_quad_deg
    SweepResult directivity_sweep(const WireGeometry &geometry, std::span<const double> freqs_hz,
                                  double quad_resolution_rad = 0.5 * std::numbers::pi / 180.0,
                                  double phi_resolution_rad = 2.0 * std::numbers::pi / 180.0);

    /// Normalized |F| around the full circle (angle from the wire axis, cell-centred samples).
    /// Columns: angle_deg, magnitude. Also reports the lobe count of the emitted samples.
    SweepResult pattern_sweep(const WireGeometry &geometry, double freq_hz, double resolution_deg);
}
