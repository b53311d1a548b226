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

// cplc-sim <subcommand> --config <file> --out <file> [--seed N] [--strict]
//
// Exit status: 0 success, 1 configuration or usage error, 2 numerical or runtime failure.

#include "cplc/antenna.hpp"
#include "cplc/cable.hpp"
#include "cplc/channels.hpp"
#include "cplc/config.hpp"
#include "cplc/errors.hpp"
#include "cplc/mom.hpp"
#include "cplc/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    using namespace cplc;

    struct Output
    {
        Table table;
        std::string note; // appended to the summary line
    };

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw config_error("cannot open config file '" + path + "'", "");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string csv(const Table &t)
    {
        std::string out;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out += (i ? "," : "") + t.columns[i];
        out += '\n';
        char buf[40];
        for (const auto &row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                std::snprintf(buf, sizeof(buf), "%.15g", row[i]);
                if (i)
                    out += ',';
                out += buf;
            }
            out += '\n';
        }
        return out;
    }

    // Writes through a temporary sibling and renames, so a failed run never leaves a partial file.
    void write_atomic(const std::filesystem::path &path, const std::string &content)
    {
        auto tmp = path;
        tmp += ".part";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write '" + tmp.string() + "'");
            out << content;
            out.flush();
            if (!out)
            {
                out.close();
                std::filesystem::remove(tmp);
                throw std::runtime_error("write to '" + tmp.string() + "' failed");
            }
        }
        std::filesystem::rename(tmp, path);
    }

    double to_db(double mag) { return 20.0 * std::log10(std::max(mag, 1e-300)); }

    Table response_table(const ChannelResponse &r)
    {
        Table t{{"freq_hz", "mag_db", "phase_rad", "re", "im"}, {}};
        for (std::size_t i = 0; i < r.freqs_hz.size(); ++i)
            t.rows.push_back({r.freqs_hz[i], to_db(std::abs(r.h[i])), std::arg(r.h[i]), r.h[i].real(), r.h[i].imag()});
        return t;
    }

    std::vector<double> grid_of(const FrequencyGrid &g) { return frequency_grid(g.start_hz, g.stop_hz, g.step_hz); }

    Output cmd_pattern(const ScenarioConfig &c)
    {
        auto r = pattern_sweep(c.scenario.wire, c.pattern_freq_hz, c.pattern_resolution_deg);
        const auto n = electrical_length(c.scenario.wire.length_m, c.pattern_freq_hz).n;
        char note[96];
        std::snprintf(note, sizeof(note), "n = %.4g, %d lobes", n, r.lobe_count.value_or(0));
        return {std::move(r.table), note};
    }

    Output cmd_directivity(const ScenarioConfig &c)
    {
        const auto f = grid_of(c.directivity_grid);
        constexpr double deg = std::numbers::pi / 180.0;
        auto r = directivity_sweep(c.scenario.wire, f, c.quad_resolution_deg * deg, c.phi_resolution_deg * deg);
        return {std::move(r.table), ""};
    }

    Output cmd_impedance(const ScenarioConfig &c)
    {
        const auto &w = c.scenario.wire;
        Table t{{"freq_hz", "n", "r_rad_ohm", "r_ohmic_ohm", "mom_z_re_ohm", "mom_z_im_ohm", "mom_swr",
                 "cable_z0_re_ohm", "cable_z0_im_ohm"},
                {}};
        const double r_rad = radiation_resistance(w);
        for (double f : grid_of(c.impedance_grid))
        {
            if (f <= 0.0)
                continue;
            const auto zin = input_impedance(w, f, c.scenario.cable.sigma_c_s_per_m, c.scenario.cable.mu_c);
            const auto mom = run_mom(c, f);
            const auto z0 = characteristic_impedance(rlgc_at(c.scenario.cable, f));
            t.rows.push_back({f, electrical_length(w.length_m, f).n, r_rad, zin.r_ohmic_ohm,
                              mom.solution.z_in.real(), mom.solution.z_in.imag(), current_swr(mom.solution),
                              z0.real(), z0.imag()});
        }
        return {std::move(t), ""};
    }

    Output cmd_mom(const ScenarioConfig &c)
    {
        const auto run = run_mom(c, c.mom_freq_hz);
        const auto &s = run.solution;
        const auto &w = c.scenario.wire;
        Table t{{"unknown", "z_m", "i_re_a", "i_im_a", "i_mag_a"}, {}};
        for (int k = 0; k < s.mesh.segments; ++k)
        {
            const auto i = s.currents[static_cast<std::size_t>(k)];
            t.rows.push_back({double(k), s.mesh.node_position(w, k), i.real(), i.imag(), std::abs(i)});
        }
        constexpr double deg = std::numbers::pi / 180.0;
        const auto d = mom_directivity(s, w, run.ground, c.quad_resolution_deg * deg, c.phi_resolution_deg * deg);
        char note[200];
        std::snprintf(note, sizeof(note), "z_in = %.4g%+.4gj ohm, load = %.4g%+.4gj ohm, SWR = %.3g, D_max = %.2f dBi",
                      s.z_in.real(), s.z_in.imag(), run.load_ohm.real(), run.load_ohm.imag(), current_swr(s), d.d_max_dbi);
        return {std::move(t), note};
    }

    Output cmd_plc(const ScenarioConfig &c)
    {
        const auto f = grid_of(c.sweep_grid);
        const auto paths = c.scenario.plc_path_set();
        return {response_table(h_plc(paths, f, c.scenario.cable)), std::to_string(paths.size()) + " paths"};
    }

    Output cmd_rf(const ScenarioConfig &c)
    {
        auto rician = c.scenario.rician;
        rician.seed = c.seed;
        const auto paths = sample_rician_paths(rician, c.scenario.rf_paths, 0);
        char note[64];
        std::snprintf(note, sizeof(note), "K = %.2f dB", 10.0 * std::log10(rician.k_factor));
        return {response_table(h_rf(paths, grid_of(c.sweep_grid))), note};
    }

    bool channel_kind(SweepKind k)
    {
        return k == SweepKind::cplc_vs_coupling || k == SweepKind::cplc_vs_length || k == SweepKind::cplc_vs_paths;
    }

    // Realization-averaged cascade over the configured channel sweep.
    Output cmd_cplc(const ScenarioConfig &c)
    {
        if (!channel_kind(c.sweep_kind))
            throw config_error("cplc needs sweep.kind cplc_vs_coupling, cplc_vs_length or cplc_vs_paths", "sweep.kind");
        auto r = run_sweep(make_plan(c, c.sweep_kind));
        return {std::move(r.table), to_string(c.sweep_kind) + ", " + std::to_string(c.realizations) + " realizations"};
    }

    Output cmd_sweep(const ScenarioConfig &c)
    {
        switch (c.sweep_kind)
        {
        case SweepKind::directivity_vs_freq:
            return cmd_directivity(c);
        case SweepKind::pattern_polar:
            return cmd_pattern(c);
        default:
            return cmd_cplc(c);
        }
    }

    std::string metadata(const std::string &subcommand, const ScenarioConfig &c)
    {
        char k[96];
        std::snprintf(k, sizeof(k), "# rician K = %.17g (%.4f dB)\n", c.scenario.rician.k_factor,
                      10.0 * std::log10(c.scenario.rician.k_factor));
        return "# cplc-sim " + subcommand + " run configuration\n" + std::string(k) + serialize_config(c);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Contactless power-line communication channel simulator"};
    std::string subcommand, config_path, out_path;
    std::optional<std::uint64_t> seed;
    bool strict = false;

    const std::vector<std::string> subcommands{"pattern", "directivity", "impedance", "mom", "plc", "rf", "cplc", "sweep"};
    app.add_option("subcommand", subcommand, "pattern|directivity|impedance|mom|plc|rf|cplc|sweep")
        ->required()
        ->check(CLI::IsMember(subcommands));
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_path, "CSV output file")->required();
    app.add_option("--seed", seed, "override sweep.seed");
    app.add_flag("--strict", strict, "reject unknown configuration keys");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::filesystem::path out(out_path);
    ScenarioConfig config;
    try
    {
        std::vector<std::string> warnings;
        config = parse_config(read_file(config_path), strict, &warnings);
        for (const auto &w : warnings)
            std::cerr << "warning: " << config_path << ": " << w << '\n';
        if (seed)
            config.seed = *seed;
        if (subcommand == "cplc" || subcommand == "sweep")
            validate_config(config);
    }
    catch (const config_error &e)
    {
        std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
        return 1;
    }

    try
    {
        Output result;
        if (subcommand == "pattern")
            result = cmd_pattern(config);
        else if (subcommand == "directivity")
            result = cmd_directivity(config);
        else if (subcommand == "impedance")
            result = cmd_impedance(config);
        else if (subcommand == "mom")
            result = cmd_mom(config);
        else if (subcommand == "plc")
            result = cmd_plc(config);
        else if (subcommand == "rf")
            result = cmd_rf(config);
        else if (subcommand == "cplc")
            result = cmd_cplc(config);
        else
            result = cmd_sweep(config);

        write_atomic(out, csv(result.table));
        auto meta = out;
        meta += ".meta.cfg";
        write_atomic(meta, metadata(subcommand, config));

        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s: %zu rows -> %s in %.1f ms%s%s\n", subcommand.c_str(), result.table.rows.size(),
                    out.string().c_str(), ms, result.note.empty() ? "" : ", ", result.note.c_str());
        return 0;
    }
    catch (const config_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
