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

#include "cplc/mom.hpp"
#include "cplc/sweep.hpp"

#include <complex>
#include <cstdint>
#include <optional>

#include <string>
#include <string_view>
#include <vector>

namespace cplc
{
    enum class MomFeed
    {
        end,   // source between the first wire end and ground
        center // delta gap in the middle of an open wire
    };

    enum class MomTermination
    {
        matched, // wire_over_ground_impedance()
        cable,   // characteristic impedance of the cable model at the run frequency
        open,
        load     // mom.load_ohm
    };

    struct ScenarioConfig
    {
        Scenario scenario;

        SweepKind sweep_kind = SweepKind::cplc_vs_coupling;
        FrequencyGrid sweep_grid{0.0, 5e9, 1e7};
        std::vector<double> sweep_values;
        int realizations = 100;
        std::uint64_t seed = 1;

        FrequencyGrid directivity_grid{1e9, 20e9, 1e9};
        double quad_resolution_deg = 0.5;
        double phi_resolution_deg = 2.0;

        double pattern_freq_hz = 10e9;
        double pattern_resolution_deg = 0.01;

        double mom_freq_hz = 449.685e6; // 3 wavelengths on the default 2 m wire
        int mom_segments = 0;           // 0: derived from mom_per_wavelength
        double mom_per_wavelength = 40.0;
        MomFeed mom_feed = MomFeed::end;
        MomTermination mom_termination = MomTermination::matched;
        double mom_load_ohm = 50.0;

        FrequencyGrid impedance_grid{100e6, 2e9, 100e6};

        bool operator==(const ScenarioConfig &) const = default;
    };

    /// Parses the sectioned key = value format described in docs/formats.md. Missing keys keep
    /// their defaults. In strict mode unknown keys are errors; otherwise they are reported through
    /// `warnings`. Throws config_error carrying the line number and key.
    ScenarioConfig parse_config(std::string_view text, bool strict = true, std::vector<std::string> *warnings = nullptr);

    // Writes every key, so the output reparses to an equal config.
    std::string serialize_config(const ScenarioConfig &config);

    // Cross-field validation; throws config_error.
    void validate_config(const ScenarioConfig &config);

    SweepPlan make_plan(const ScenarioConfig &config, SweepKind kind);

    // Solves the configured MoM problem at freq_hz.
    struct MomRun
    {
        MomSolution solution;
        std::optional<GroundParameters> ground;
        std::complex<double> load_ohm{0.0, 0.0};
    };
    MomRun run_mom(const ScenarioConfig &config, double freq_hz);
}
