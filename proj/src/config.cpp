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

#include "cplc/config.hpp"
#include "cplc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace cplc
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto *ws = " \t\r\n";
            const auto b = s.find_first_not_of(ws);
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(ws);
            return std::string(s.substr(b, e - b + 1));
        }

        std::string lower(std::string s)
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c)
                           { return char(std::tolower(c)); });
            return s;
        }

        std::string fmt(double v)
        {
            char buf[64];
            auto r = std::to_chars(buf, buf + sizeof(buf), v); // shortest round-trip form
            return std::string(buf, r.ptr);
        }

        struct Ctx
        {
            std::string key;
            int line;
            [[noreturn]] void fail(const std::string &msg) const { throw config_error(key + ": " + msg, key, line); }
        };

        double to_double(const std::string &text, const Ctx &ctx)
        {
            double v = 0.0;
            const char *b = text.data(), *e = text.data() + text.size();
            if (!text.empty() && *b == '+')
                ++b;
            auto r = std::from_chars(b, e, v);
            if (r.ec != std::errc() || r.ptr != e || text.empty())
                ctx.fail("expected a number, got '" + text + "'");
            if (!std::isfinite(v))
                ctx.fail("value must be finite");
            return v;
        }

        std::int64_t to_int(const std::string &text, const Ctx &ctx)
        {
            std::int64_t v = 0;
            auto r = std::from_chars(text.data(), text.data() + text.size(), v);
            if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty())
                ctx.fail("expected an integer, got '" + text + "'");
            return v;
        }

        std::vector<std::string> split_list(const std::string &text)
        {
            std::vector<std::string> out;
            std::size_t pos = 0;
            while (true)
            {
                auto comma = text.find(',', pos);
                out.push_back(trim(std::string_view(text).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
            if (out.size() == 1 && out[0].empty())
                out.clear();
            return out;
        }

        std::vector<double> to_list(const std::string &text, const Ctx &ctx)
        {
            std::vector<double> out;
            for (const auto &item : split_list(text))
                out.push_back(to_double(item, ctx));
            return out;
        }

        std::string fmt_list(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + fmt(v[i]);
            return s;
        }

        // Range helpers. Messages name the key through Ctx::fail.
        double positive(double v, const Ctx &ctx)
        {
            if (!(v > 0.0))
                ctx.fail("must be > 0, got " + fmt(v));
            return v;
        }
        double non_negative(double v, const Ctx &ctx)
        {
            if (!(v >= 0.0))
                ctx.fail("must be >= 0, got " + fmt(v));
            return v;
        }
        double unit_interval(double v, const Ctx &ctx)
        {
            if (!(v >= 0.0 && v <= 1.0))
                ctx.fail("must lie in [0, 1], got " + fmt(v));
            return v;
        }
        double at_least(double v, double lo, const Ctx &ctx)
        {
            if (!(v >= lo))
                ctx.fail("must be >= " + fmt(lo) + ", got " + fmt(v));
            return v;
        }

        struct Entry
        {
            std::string key;
            std::function<void(ScenarioConfig &, const std::string &, const Ctx &)> set;
            std::function<std::string(const ScenarioConfig &)> get; // empty: input-only alias
        };

        using C = ScenarioConfig;

        template <class Getter>
        Entry number(std::string key, Getter ref, std::function<double(double, const Ctx &)> check = {})
        {
            Entry e;
            e.key = std::move(key);
            e.set = [ref, check](C &c, const std::string &v, const Ctx &ctx)
            {
                double x = to_double(v, ctx);
                ref(c) = check ? check(x, ctx) : x;
            };
            e.get = [ref](const C &c)
            { return fmt(ref(const_cast<C &>(c))); };
            return e;
        }

        template <class Getter>
        Entry integer(std::string key, Getter ref, std::int64_t lo, std::int64_t hi)
        {
            Entry e;
            e.key = std::move(key);
            e.set = [ref, lo, hi](C &c, const std::string &v, const Ctx &ctx)
            {
                auto x = to_int(v, ctx);
                if (x < lo || x > hi)
                    ctx.fail("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + v);
                ref(c) = static_cast<std::remove_reference_t<decltype(ref(c))>>(x);
            };
            e.get = [ref](const C &c)
            { return std::to_string(ref(const_cast<C &>(c))); };
            return e;
        }

        template <class Enum>
        Entry choice(std::string key, std::function<Enum &(C &)> ref, std::vector<std::pair<std::string, Enum>> names)
        {
            Entry e;
            e.key = std::move(key);
            e.set = [ref, names](C &c, const std::string &v, const Ctx &ctx)
            {
                const auto lv = lower(v);
                for (const auto &[n, val] : names)
                    if (n == lv)
                    {
                        ref(c) = val;
                        return;
                    }
                std::string allowed;
                for (const auto &[n, val] : names)
                    allowed += (allowed.empty() ? "" : "|") + n;
                ctx.fail("expected one of " + allowed + ", got '" + v + "'");
            };
            e.get = [ref, names](const C &c)
            {
                const auto cur = ref(const_cast<C &>(c));
                for (const auto &[n, val] : names)
                    if (val == cur)
                        return n;
                return std::string("?");
            };
            return e;
        }

        Entry grid(std::string key, std::function<FrequencyGrid &(C &)> ref, int which)
        {
            Entry e;
            e.key = std::move(key);
            auto field = [which](FrequencyGrid &g) -> double &
            { return which == 0 ? g.start_hz : which == 1 ? g.stop_hz : g.step_hz; };
            e.set = [ref, field, which](C &c, const std::string &v, const Ctx &ctx)
            {
                double x = to_double(v, ctx);
                field(ref(c)) = which == 2 ? positive(x, ctx) : non_negative(x, ctx);
            };
            e.get = [ref, field](const C &c)
            { return fmt(field(ref(const_cast<C &>(c)))); };
            return e;
        }

        const std::vector<Entry> &registry()
        {
            static const std::vector<Entry> entries = []
            {
                std::vector<Entry> r;
#define REF(expr) [](C & c) -> auto & { return c.expr; }
                r.push_back(number("wire.length_m", REF(scenario.wire.length_m), positive));
                r.push_back(number("wire.diameter_m", REF(scenario.wire.diameter_m), positive));
                r.push_back(number("wire.height_m", REF(scenario.wire.height_m), positive));
                {
                    Entry e;
                    e.key = "wire.axis";
                    e.set = [](C &c, const std::string &v, const Ctx &ctx)
                    {
                        auto xs = to_list(v, ctx);
                        if (xs.size() != 3)
                            ctx.fail("expected three components");
                        const double n = std::hypot(xs[0], xs[1], xs[2]);
                        if (std::abs(n - 1.0) > 1e-9)
                            ctx.fail("must be a unit vector");
                        c.scenario.wire.axis = {xs[0], xs[1], xs[2]};
                    };
                    e.get = [](const C &c)
                    {
                        const auto &a = c.scenario.wire.axis;
                        return fmt_list({a[0], a[1], a[2]});
                    };
                    r.push_back(e);
                }

                r.push_back(choice<GroundModel>("ground.model", REF(scenario.ground_model),
                                                {{"lossy", GroundModel::lossy}, {"perfect", GroundModel::perfect}, {"none", GroundModel::none}}));
                r.push_back(number("ground.eps_r", REF(scenario.ground.eps_r), [](double v, const Ctx &x)
                                   { return at_least(v, 1.0, x); }));
                r.push_back(number("ground.sigma_s_per_m", REF(scenario.ground.sigma_s_per_m), non_negative));

                r.push_back(number("cable.a_m", REF(scenario.cable.a_m), positive));
                r.push_back(number("cable.b_m", REF(scenario.cable.b_m), positive));
                r.push_back(number("cable.c_m", REF(scenario.cable.c_m), positive));
                r.push_back(number("cable.x_m", REF(scenario.cable.x_m), positive));
                r.push_back(number("cable.z_m", REF(scenario.cable.z_m), positive));
                r.push_back(number("cable.eps_r_ins", REF(scenario.cable.eps_r_ins), [](double v, const Ctx &x)
                                   { return at_least(v, 1.0, x); }));
                r.push_back(number("cable.mu_c", REF(scenario.cable.mu_c), positive));
                r.push_back(number("cable.sigma_c_s_per_m", REF(scenario.cable.sigma_c_s_per_m), positive));
                r.push_back(number("cable.sigma_ins_s_per_m", REF(scenario.cable.sigma_ins_s_per_m), non_negative));
                r.push_back(number("cable.mu_a", REF(scenario.cable.mu_a), positive));
                r.push_back(number("cable.tan_delta", REF(scenario.cable.tan_delta), non_negative));

                r.push_back(number("plc.length_m", REF(scenario.plc_length_m), positive));
                r.push_back(integer("plc.paths", REF(scenario.plc_paths), 1, 10000));
                r.push_back(number("plc.g_total", REF(scenario.plc_g_total), unit_interval));
                {
                    // Explicit path set: weights and lengths given as two lists of equal size.
                    Entry w;
                    w.key = "plc.weights";
                    w.set = [](C &c, const std::string &v, const Ctx &ctx)
                    {
                        auto xs = to_list(v, ctx);
                        auto &p = c.scenario.plc_explicit;
                        if (p.size() < xs.size())
                            p.resize(xs.size(), PlcPath{0.0, 0.0});
                        for (std::size_t i = 0; i < xs.size(); ++i)
                        {
                            if (std::abs(xs[i]) > 1.0)
                                ctx.fail("weights must satisfy |g| <= 1");
                            p[i].g = xs[i];
                        }
                    };
                    w.get = [](const C &c)
                    {
                        std::vector<double> v;
                        for (const auto &p : c.scenario.plc_explicit)
                            v.push_back(p.g);
                        return fmt_list(v);
                    };
                    r.push_back(w);
                    Entry l;
                    l.key = "plc.lengths_m";
                    l.set = [](C &c, const std::string &v, const Ctx &ctx)
                    {
                        auto xs = to_list(v, ctx);
                        auto &p = c.scenario.plc_explicit;
                        if (p.size() < xs.size())
                            p.resize(xs.size(), PlcPath{0.0, 0.0});
                        for (std::size_t i = 0; i < xs.size(); ++i)
                            p[i].length_m = positive(xs[i], ctx);
                    };
                    l.get = [](const C &c)
                    {
                        std::vector<double> v;
                        for (const auto &p : c.scenario.plc_explicit)
                            v.push_back(p.length_m);
                        return fmt_list(v);
                    };
                    r.push_back(l);
                }

                r.push_back(number("rf.k_factor", REF(scenario.rician.k_factor), non_negative));
                {
                    Entry e; // input-only: K in dB
                    e.key = "rf.k_factor_db";
                    e.set = [](C &c, const std::string &v, const Ctx &ctx)
                    { c.scenario.rician.k_factor = std::pow(10.0, to_double(v, ctx) / 10.0); };
                    r.push_back(e);
                }
                r.push_back(number("rf.mean_power", REF(scenario.rician.mean_power), positive));
                r.push_back(integer("rf.paths", REF(scenario.rf_paths), 1, 100000));
                r.push_back(number("rf.los_distance_m", REF(scenario.rician.los_distance_m), non_negative));
                r.push_back(number("rf.delay_spread_s", REF(scenario.rician.delay_spread_s), non_negative));

                r.push_back(number("coupling.efficiency", REF(scenario.coupling.efficiency), unit_interval));

                r.push_back(choice<SweepKind>("sweep.kind", REF(sweep_kind),
                                              {{"directivity_vs_freq", SweepKind::directivity_vs_freq},
                                               {"pattern_polar", SweepKind::pattern_polar},
                                               {"cplc_vs_coupling", SweepKind::cplc_vs_coupling},
                                               {"cplc_vs_length", SweepKind::cplc_vs_length},
                                               {"cplc_vs_paths", SweepKind::cplc_vs_paths}}));
                r.push_back(grid("sweep.start_hz", REF(sweep_grid), 0));
                r.push_back(grid("sweep.stop_hz", REF(sweep_grid), 1));
                r.push_back(grid("sweep.step_hz", REF(sweep_grid), 2));
                {
                    Entry e;
                    e.key = "sweep.values";
                    e.set = [](C &c, const std::string &v, const Ctx &ctx)
                    { c.sweep_values = to_list(v, ctx); };
                    e.get = [](const C &c)
                    { return fmt_list(c.sweep_values); };
                    r.push_back(e);
                }
                r.push_back(integer("sweep.realizations", REF(realizations), 1, 100000000));
                {
                    Entry e;
                    e.key = "sweep.seed";
                    e.set = [](C &c, const std::string &v, const Ctx &ctx)
                    {
                        std::uint64_t s = 0;
                        auto res = std::from_chars(v.data(), v.data() + v.size(), s);
                        if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.empty())
                            ctx.fail("expected an unsigned 64-bit integer, got '" + v + "'");
                        c.seed = s;
                    };
                    e.get = [](const C &c)
                    { return std::to_string(c.seed); };
                    r.push_back(e);
                }

                r.push_back(grid("directivity.start_hz", REF(directivity_grid), 0));
                r.push_back(grid("directivity.stop_hz", REF(directivity_grid), 1));
                r.push_back(grid("directivity.step_hz", REF(directivity_grid), 2));
                r.push_back(number("directivity.quad_resolution_deg", REF(quad_resolution_deg), positive));
                r.push_back(number("directivity.phi_resolution_deg", REF(phi_resolution_deg), positive));

                r.push_back(number("pattern.freq_hz", REF(pattern_freq_hz), positive));
                r.push_back(number("pattern.resolution_deg", REF(pattern_resolution_deg), positive));

                r.push_back(number("mom.freq_hz", REF(mom_freq_hz), positive));
                r.push_back(integer("mom.segments", REF(mom_segments), 0, 20000));
                r.push_back(number("mom.per_wavelength", REF(mom_per_wavelength), [](double v, const Ctx &x)
                                   { return at_least(v, 10.0, x); }));
                r.push_back(choice<MomFeed>("mom.feed", REF(mom_feed), {{"end", MomFeed::end}, {"center", MomFeed::center}}));
                r.push_back(choice<MomTermination>("mom.termination", REF(mom_termination),
                                                   {{"matched", MomTermination::matched},
                                                    {"cable", MomTermination::cable},
                                                    {"open", MomTermination::open},
                                                    {"load", MomTermination::load}}));
                r.push_back(number("mom.load_ohm", REF(mom_load_ohm), positive));

                r.push_back(grid("impedance.start_hz", REF(impedance_grid), 0));
                r.push_back(grid("impedance.stop_hz", REF(impedance_grid), 1));
                r.push_back(grid("impedance.step_hz", REF(impedance_grid), 2));
#undef REF
                return r;
            }();
            return entries;
        }

        void check_grid(const FrequencyGrid &g, const std::string &section)
        {
            if (g.stop_hz < g.start_hz)
                throw config_error(section + ".stop_hz must not be below " + section + ".start_hz", section + ".stop_hz");
            if (!(g.step_hz > 0.0))
                throw config_error(section + ".step_hz must be > 0", section + ".step_hz");
            if ((g.stop_hz - g.start_hz) / g.step_hz > 1e7)
                throw config_error(section + ": grid has more than 1e7 points", section + ".step_hz");
        }

        // Wraps model-level std::invalid_argument as config_error naming the section.
        template <class F>
        void as_config(const std::string &section, F &&f)
        {
            try
            {
                f();
            }
            catch (const config_error &)
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw config_error(section + ": " + e.what(), section);
            }
        }
    }

    void validate_config(const ScenarioConfig &c)
    {
        as_config("wire", [&]
                  { c.scenario.wire.validate(); });
        as_config("ground", [&]
                  { if (c.scenario.ground_model == GroundModel::lossy) c.scenario.ground.validate(); });
        as_config("cable", [&]
                  { c.scenario.cable.validate(); });
        if (!c.scenario.plc_explicit.empty())
            for (const auto &p : c.scenario.plc_explicit)
                if (!(p.length_m > 0.0))
                    throw config_error("plc.weights and plc.lengths_m must have the same number of entries", "plc.lengths_m");
        as_config("rf", [&]
                  { c.scenario.rician.validate(); });
        as_config("coupling", [&]
                  { c.scenario.coupling.validate(); });
        check_grid(c.sweep_grid, "sweep");
        check_grid(c.directivity_grid, "directivity");
        check_grid(c.impedance_grid, "impedance");
        if (c.directivity_grid.start_hz < 1e9 || c.directivity_grid.stop_hz > 20e9)
            throw config_error("directivity grid must lie within 1-20 GHz", "directivity.start_hz");
        if (c.quad_resolution_deg > 1.0)
            throw config_error("directivity.quad_resolution_deg must be <= 1", "directivity.quad_resolution_deg");
        if (c.mom_segments != 0 && c.mom_segments < 3)
            throw config_error("mom.segments must be 0 (auto) or >= 3", "mom.segments");
        if (c.mom_feed == MomFeed::end && c.scenario.ground_model == GroundModel::none)
            throw config_error("mom.feed = end needs a ground plane (ground.model lossy or perfect)", "mom.feed");
        for (auto kind : {SweepKind::cplc_vs_coupling, SweepKind::cplc_vs_length, SweepKind::cplc_vs_paths})
            if (kind == c.sweep_kind)
                as_config("sweep", [&]
                          { make_plan(c, kind).validate(); });
    }

    ScenarioConfig parse_config(std::string_view text, bool strict, std::vector<std::string> *warnings)
    {
        ScenarioConfig cfg;
        std::map<std::string, const Entry *> by_key;
        for (const auto &e : registry())
            by_key[e.key] = &e;

        std::string section;
        std::set<std::string> seen;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            auto nl = text.find('\n', pos);
            auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;

            auto hash = raw.find('#');
            auto line = trim(raw.substr(0, hash));
            if (line.empty() || line[0] == ';')
                continue;

            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw config_error("unterminated section header", "", line_no);
                section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
                if (section.empty() || section.find_first_of(" \t.=") != std::string::npos)
                    throw config_error("invalid section name '" + section + "'", "", line_no);
                continue;
            }

            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("expected 'key = value', got '" + line + "'", "", line_no);
            auto key = lower(trim(std::string_view(line).substr(0, eq)));
            auto value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty())
                throw config_error("missing key before '='", "", line_no);
            if (key.find('.') == std::string::npos)
            {
                if (section.empty())
                    throw config_error("key '" + key + "' outside a section needs a 'section.' prefix", key, line_no);
                key = section + "." + key;
            }

            auto it = by_key.find(key);
            if (it == by_key.end())
            {
                if (strict)
                    throw config_error("unknown key '" + key + "'", key, line_no);
                if (warnings)
                    warnings->push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "' ignored");
                continue;
            }
            if (!seen.insert(key).second)
                throw config_error("duplicate key '" + key + "'", key, line_no);
            it->second->set(cfg, value, Ctx{key, line_no});
        }
        if (seen.count("rf.k_factor") && seen.count("rf.k_factor_db"))
            throw config_error("give only one of rf.k_factor and rf.k_factor_db", "rf.k_factor_db");

        validate_config(cfg);
        return cfg;
    }

    std::string serialize_config(const ScenarioConfig &config)
    {
        std::string out;
        std::string section;
        for (const auto &e : registry())
        {
            if (!e.get)
                continue;
            const auto dot = e.key.find('.');
            const auto sec = e.key.substr(0, dot);
            if (sec != section)
            {
                out += (section.empty() ? "[" : "\n[") + sec + "]\n";
                section = sec;
            }
            const auto value = e.get(config);
            if (value.empty() && (e.key == "plc.weights" || e.key == "plc.lengths_m" || e.key == "sweep.values"))
                continue; // empty lists are the default
            out += e.key.substr(dot + 1) + " = " + value + "\n";
        }
        return out;
    }

    SweepPlan make_plan(const ScenarioConfig &config, SweepKind kind)
    {
        SweepPlan plan;
        plan.kind = kind;
        plan.freq_grid = kind == SweepKind::directivity_vs_freq ? config.directivity_grid : config.sweep_grid;
        plan.varied_values = config.sweep_values;
        plan.fixed = config.scenario;
        plan.fixed.rician.seed = config.seed;
        plan.realizations = config.realizations;
        plan.seed = config.seed;
        plan.pattern_freq_hz = config.pattern_freq_hz;
        plan.pattern_resolution_deg = config.pattern_resolution_deg;
        plan.quad_resolution_deg = config.quad_resolution_deg;
        plan.phi_resolution_deg = config.phi_resolution_deg;
        return plan;
    }

    MomRun run_mom(const ScenarioConfig &config, double freq_hz)
    {
        const auto &wire = config.scenario.wire;
        MomRun run;
        run.ground = config.scenario.ground_or_none();
        const bool center = config.mom_feed == MomFeed::center;
        int segments = config.mom_segments;
        if (segments == 0)
            segments = segments_for(wire, freq_hz, config.mom_per_wavelength, center);

        MomMesh mesh;
        if (center)
        {
            if (segments % 2 == 0)
                ++segments;
            mesh = center_fed_mesh(wire, segments);
        }
        else
        {
            std::optional<std::complex<double>> load;
            switch (config.mom_termination)
            {
            case MomTermination::matched:
                load = wire_over_ground_impedance(wire);
                break;
            case MomTermination::cable:
                load = characteristic_impedance(rlgc_at(config.scenario.cable, freq_hz));
                break;
            case MomTermination::load:
                load = config.mom_load_ohm;
                break;
            case MomTermination::open:
                break;
            }
            if (load)
                run.load_ohm = *load;
            mesh = end_fed_mesh(wire, segments, load);
        }
        run.solution = solve(wire, mesh, freq_hz, run.ground);
        return run;
    }
}
