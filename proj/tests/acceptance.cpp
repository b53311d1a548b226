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

// Acceptance suite: one PASS/FAIL line per criterion, with the measured value, its tolerance
// and the runtime against its budget. Exit status is the number of failed criteria.

#include "cplc/antenna.hpp"
#include "cplc/cable.hpp"
#include "cplc/channels.hpp"
#include "cplc/config.hpp"
#include "cplc/constants.hpp"
#include "cplc/mom.hpp"
#include "cplc/sweep.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace cplc;

namespace
{
    constexpr double pi = std::numbers::pi;
    constexpr double deg = pi / 180.0;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    void criterion(int id, const std::string &name, double budget_s, const std::function<Outcome()> &body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = body();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = budget_s <= 0.0 || s < budget_s;
        const bool pass = o.pass && in_time;
        if (!pass)
            ++failures;
        char timing[64];
        if (budget_s > 0.0)
            std::snprintf(timing, sizeof(timing), "%.2f s / %.0f s", s, budget_s);
        else
            std::snprintf(timing, sizeof(timing), "%.2f s", s);
        std::printf("[%s] %2d %-28s %s (%s)%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), timing,
                    in_time ? "" : " over budget");
        std::fflush(stdout);
    }

    std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof(buf), f, a, b, c);
        return buf;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    ScenarioConfig load(const std::string &name)
    {
        return parse_config(slurp(std::filesystem::path(CPLC_CONFIG_DIR) / name), true);
    }

    std::map<double, std::vector<double>> mean_db_by_value(const Table &t)
    {
        std::map<double, std::vector<double>> out;
        for (const auto &row : t.rows)
            out[row[0]].push_back(row[2]);
        return out;
    }

    // Subcommand named on the "# Run: cplc-sim <subcommand>" line of a shipped config.
    std::string subcommand_of(const std::string &text)
    {
        const auto at = text.find("cplc-sim ");
        if (at == std::string::npos)
            return "sweep";
        std::istringstream ss(text.substr(at + 9));
        std::string sub;
        ss >> sub;
        return sub;
    }
}

int main()
{
    std::printf("cplc-sim acceptance suite\n");

    criterion(1, "lobe structure", 1.0, []
              {
                  std::string got;
                  bool ok = true;
                  for (int n = 1; n <= 8; ++n)
                  {
                      const int count = lobe_count(n, pi / (64.0 * n));
                      ok = ok && count == 2 * n && count == oracle::lobes_from_nulls(n);
                      got += (n > 1 ? "," : "") + std::to_string(count);
                  }
                  return Outcome{ok, "lobe_count(n=1..8) = {" + got + "}, expected 2n"}; });

    criterion(2, "directivity normalization", 5.0, []
              {
                  // Integral of D over the sphere, summed here from the returned pattern grid.
                  double worst = 0.0;
                  for (double n : {1.0, 2.0, 5.0, 10.0})
                  {
                      WireGeometry g;
                      g.length_m = 1.0;
                      g.diameter_m = 1e-3;
                      const auto r = directivity(g, n * constants::speed_of_light, 0.5 * deg, 2.0 * deg);
                      std::set<double> thetas, phis;
                      for (const auto &s : r.pattern_grid)
                          thetas.insert(s.theta_rad), phis.insert(s.phi_rad);
                      const double dt = pi / double(thetas.size()), dp = 2.0 * pi / double(phis.size());
                      double integral = 0.0;
                      for (const auto &s : r.pattern_grid)
                          integral += r.d_max_linear * s.value * s.value * std::sin(s.theta_rad) * dt * dp;
                      worst = std::max(worst, std::abs(integral / (4.0 * pi) - 1.0));
                  }
                  return Outcome{worst < 1e-3, fmt("max |int D dOmega / 4pi - 1| = %.2e over n = 1,2,5,10 (tol 1e-3)", worst)}; });

    criterion(3, "directivity trend 1-20 GHz", 5.0, []
              {
                  const auto c5 = load("fig4.cfg"), c10 = load("fig4_10m.cfg");
                  const auto f = frequency_grid(c5.directivity_grid.start_hz, c5.directivity_grid.stop_hz, c5.directivity_grid.step_hz);
                  const auto a = directivity_sweep(c5.scenario.wire, f, c5.quad_resolution_deg * deg, c5.phi_resolution_deg * deg);
                  const auto b = directivity_sweep(c10.scenario.wire, f, c10.quad_resolution_deg * deg, c10.phi_resolution_deg * deg);
                  std::vector<double> q5, q10;
                  bool above = f.size() == 20;
                  for (std::size_t i = 0; i < a.table.rows.size(); ++i)
                  {
                      q5.push_back(a.table.rows[i][2]);
                      q10.push_back(b.table.rows[i][2]);
                      above = above && b.table.rows[i][3] > a.table.rows[i][3] && b.table.rows[i][2] > a.table.rows[i][3];
                  }
                  const double s5 = oracle::slope(f, q5) * 1e9, s10 = oracle::slope(f, q10) * 1e9;
                  return Outcome{s5 > 0.0 && s10 > 0.0 && above,
                                 fmt("slope 5 m %+.4f dB/GHz, 10 m %+.4f dB/GHz; 10 m above 5 m approx at all %g freqs: ", s5, s10, double(f.size())) +
                                     (above ? "yes" : "no")}; });

    criterion(4, "pattern 5 m at 10 GHz", 10.0, []
              {
                  const auto c = load("fig5.cfg");
                  const auto r = pattern_sweep(c.scenario.wire, c.pattern_freq_hz, c.pattern_resolution_deg);
                  const double n = electrical_length(c.scenario.wire.length_m, c.pattern_freq_hz).n;
                  const int lobes = r.lobe_count.value_or(-1);
                  return Outcome{std::abs(lobes - 334) <= 2, fmt("n = %.2f, lobes = %.0f (334 +- 2)", n, lobes)}; });

    criterion(5, "MoM half-wave dipole", 30.0, []
              {
                  const double f = 3e8, lambda = constants::speed_of_light / f;
                  WireGeometry g;
                  g.length_m = 0.5 * lambda;
                  g.diameter_m = 2e-5 * lambda;
                  const auto z = build_impedance_matrix(g, center_fed_mesh(g, 101), f, std::nullopt);
                  const double asym = (z - z.transpose()).cwiseAbs().maxCoeff() / z.cwiseAbs().maxCoeff();
                  auto s101 = solve_currents(z, center_fed_mesh(g, 101).feed_segment);
                  const auto z51 = solve(g, center_fed_mesh(g, 51), f, std::nullopt).z_in;
                  const std::complex<double> ref(73.0, 42.5);
                  const double err = std::abs(s101.z_in - ref) / std::abs(ref);
                  const double conv = std::abs(s101.z_in - z51) / std::abs(s101.z_in);
                  char buf[256];
                  std::snprintf(buf, sizeof(buf), "z_in = %.2f%+.2fj ohm, error %.1f%% (tol 10%%), 51->101 change %.2f%% (tol 5%%), asymmetry %.1e (tol 1e-10)",
                                s101.z_in.real(), s101.z_in.imag(), 100 * err, 100 * conv, asym);
                  return Outcome{err < 0.10 && conv < 0.05 && asym < 1e-10, buf}; });

    criterion(6, "traveling-wave contract", 30.0, []
              {
                  WireGeometry g; // default 2 m wire over the default lossy ground
                  const GroundParameters ground;
                  const double f = 3.0 * constants::speed_of_light / g.length_m;
                  const int segs = segments_for(g, f, 40, false);
                  const auto matched = solve(g, end_fed_mesh(g, segs, wire_over_ground_impedance(g)), f, ground);
                  const auto open = solve(g, end_fed_mesh(g, segs, std::nullopt), f, ground);
                  const double sm = current_swr(matched), so = current_swr(open);
                  return Outcome{sm < 2.0 && so > 5.0, fmt("n = 3: matched SWR %.2f (< 2), open SWR %.2f (> 5), load %.1f ohm", sm, so, wire_over_ground_impedance(g))}; });

    criterion(7, "cascade exactness", 5.0, []
              {
                  const auto c = load("coupling.cfg");
                  const auto f = frequency_grid(c.sweep_grid.start_hz, c.sweep_grid.stop_hz, c.sweep_grid.step_hz);
                  auto rician = c.scenario.rician;
                  rician.seed = c.seed;
                  const auto plc = h_plc(c.scenario.plc_path_set(), f, c.scenario.cable);
                  const auto rf = h_rf(sample_rician_paths(rician, c.scenario.rf_paths, 0), f);
                  double worst = 0.0;
                  for (double eps : {1.0, 0.75, 0.5})
                  {
                      const auto h = h_cplc(plc, rf, CouplingConfig{eps});
                      for (std::size_t k = 0; k < f.size(); ++k)
                      {
                          const double expect = eps * eps * std::abs(plc.h[k]) * std::abs(rf.h[k]) * std::abs(rf.h[k]);
                          worst = std::max(worst, std::abs(std::abs(h.h[k]) - expect) / expect);
                      }
                  }
                  const auto sweep = run_sweep(make_plan(c, SweepKind::cplc_vs_coupling));
                  auto m = mean_db_by_value(sweep.table);
                  double dev = 0.0;
                  for (std::size_t k = 0; k < m[1.0].size(); ++k)
                      dev = std::max(dev, std::abs(m[0.5][k] - m[1.0][k] - 20.0 * std::log10(0.25)));
                  const bool ok = worst < 1e-14 && dev < 1e-9 && m[1.0].size() == f.size();
                  return Outcome{ok, fmt("max rel |H| error %.1e on %g bins; eps 0.5 offset deviates from -12.0412 dB by %.1e", worst, double(f.size()), dev)}; });

    criterion(8, "cable length ordering", 10.0, []
              {
                  const auto c = load("fig6.cfg");
                  const auto r = run_sweep(make_plan(c, c.sweep_kind));
                  auto m = mean_db_by_value(r.table);
                  std::size_t ordered = 0;
                  double margin = 1e300;
                  for (std::size_t k = 0; k < m[2.0].size(); ++k)
                  {
                      if (m[2.0][k] > m[5.0][k] && m[5.0][k] > m[10.0][k])
                          ++ordered;
                      margin = std::min({margin, m[2.0][k] - m[5.0][k], m[5.0][k] - m[10.0][k]});
                  }
                  return Outcome{ordered == m[2.0].size() && !m[2.0].empty(),
                                 fmt("2 m > 5 m > 10 m at %g of %g bins, smallest gap %.3f dB", double(ordered), double(m[2.0].size()), margin)}; });

    criterion(9, "path count ordering", 10.0, []
              {
                  const auto c = load("fig7.cfg");
                  const auto r = run_sweep(make_plan(c, c.sweep_kind));
                  auto m = mean_db_by_value(r.table);
                  auto avg = [](const std::vector<double> &v)
                  {
                      double s = 0;
                      for (double x : v)
                          s += x;
                      return s / double(v.size());
                  };
                  const double a1 = avg(m[1.0]), a3 = avg(m[3.0]), a5 = avg(m[5.0]);
                  return Outcome{a3 <= a1 && a5 <= a3, fmt("band-average mean |H|: N=1 %.3f dB, N=3 %.3f dB, N=5 %.3f dB", a1, a3, a5)}; });

    criterion(10, "Rician generator", 10.0, []
              {
                  std::string detail;
                  bool ok = true;
                  for (double k : {1.0, 5.0, 10.0})
                  {
                      RicianConfig cfg;
                      cfg.k_factor = k;
                      cfg.seed = 1;
                      std::vector<double> env;
                      double power = 0.0;
                      const int draws = 100000;
                      env.reserve(draws);
                      for (int i = 0; i < draws; ++i)
                      {
                          std::complex<double> s = 0.0;
                          for (const auto &p : sample_rician_paths(cfg, 4, std::uint64_t(i)))
                          {
                              s += p.amplitude;
                              power += std::norm(p.amplitude);
                          }
                          env.push_back(std::abs(s));
                      }
                      const double est = oracle::rician_k(env);
                      power /= draws;
                      ok = ok && std::abs(est / k - 1.0) < 0.05 && std::abs(power - 1.0) < 0.01;
                      detail += fmt("K=%g: est %.3f, E[P] %.4f; ", k, est, power);
                  }
                  return Outcome{ok, detail + "(tol 5%, 1%)"}; });

    criterion(11, "determinism", 0.0, []
              {
                  namespace fs = std::filesystem;
                  const fs::path work = fs::temp_directory_path() / ("cplc_acceptance_" + std::to_string(::getpid()));
                  fs::create_directories(work);
                  int checked = 0, identical = 0;
                  std::string first_bad;
                  std::vector<fs::path> configs;
                  for (const auto &e : fs::directory_iterator(CPLC_CONFIG_DIR))
                      if (e.path().extension() == ".cfg")
                          configs.push_back(e.path());
                  std::sort(configs.begin(), configs.end());
                  for (const auto &cfg : configs)
                  {
                      const auto sub = subcommand_of(slurp(cfg));
                      std::string runs[2];
                      for (int r = 0; r < 2; ++r)
                      {
                          const auto out = work / (cfg.stem().string() + "_" + std::to_string(r) + ".csv");
                          const std::string cmd = std::string("\"") + CPLC_SIM_EXE + "\" " + sub + " --config \"" + cfg.string() +
                                                  "\" --out \"" + out.string() + "\" --seed 7 > /dev/null";
                          if (std::system(cmd.c_str()) == 0)
                              runs[r] = slurp(out);
                      }
                      ++checked;
                      if (!runs[0].empty() && runs[0] == runs[1])
                          ++identical;
                      else if (first_bad.empty())
                          first_bad = cfg.filename().string();
                  }
                  fs::remove_all(work);
                  return Outcome{checked > 0 && identical == checked,
                                 fmt("%g of %g shipped configs byte-identical across two runs", identical, checked) +
                                     (first_bad.empty() ? "" : ", first mismatch " + first_bad)}; });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures;
}
