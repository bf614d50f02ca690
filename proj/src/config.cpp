// SPDX-License-Identifier: Apache-2.0
//
// rdcc: range-Doppler compensation and cancellation for dual-channel
// moving target detection.
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

#include "rdcc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rdcc/errors.hpp"

namespace rdcc
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double to_double(const std::string &key, std::string text)
        {
            text = trim(text);
            if (!text.empty() && text[0] == '+')
                text.erase(0, 1);
            double v = 0.0;
            const auto *end = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(text.data(), end, v);
            if (text.empty() || ec != std::errc() || ptr != end)
                throw ConfigError(key, "expected a number, got '" + text + "'");
            return v;
        }

        /// Typed access that records which keys were consumed.
        class Reader
        {
        public:
            explicit Reader(const ConfigFile &cfg) : cfg_(cfg) {}

            bool has(const std::string &key) const { return cfg_.values.count(key) != 0; }

            const std::string *raw(const std::string &key)
            {
                const auto it = cfg_.values.find(key);
                if (it == cfg_.values.end())
                    return nullptr;
                used_.insert(key);
                return &it->second;
            }

            double num(const std::string &key, double def)
            {
                const std::string *v = raw(key);
                return v ? to_double(key, *v) : def;
            }

            double required(const std::string &key)
            {
                const std::string *v = raw(key);
                if (!v)
                    throw ConfigError(key, "required key is missing");
                return to_double(key, *v);
            }

            std::uint64_t count(const std::string &key, std::uint64_t def)
            {
                const std::string *v = raw(key);
                if (!v)
                    return def;
                const std::string t = trim(*v);
                std::uint64_t out = 0;
                const auto *end = t.data() + t.size();
                const auto [ptr, ec] = std::from_chars(t.data(), end, out);
                if (t.empty() || ec != std::errc() || ptr != end)
                    throw ConfigError(key, "expected a non-negative integer, got '" + t + "'");
                return out;
            }

            bool flag(const std::string &key, bool def)
            {
                const std::string *v = raw(key);
                if (!v)
                    return def;
                const std::string t = trim(*v);
                if (t == "true" || t == "1" || t == "yes")
                    return true;
                if (t == "false" || t == "0" || t == "no")
                    return false;
                throw ConfigError(key, "expected true or false, got '" + t + "'");
            }

            std::string word(const std::string &key, const std::string &def)
            {
                const std::string *v = raw(key);
                return v ? trim(*v) : def;
            }

            void reject_unused() const
            {
                for (const auto &[k, v] : cfg_.values)
                    if (!used_.count(k))
                    {
                        const auto line = cfg_.lines.find(k);
                        std::string where = cfg_.source;
                        if (line != cfg_.lines.end())
                            where += ":" + std::to_string(line->second);
                        throw ConfigError(k, "unknown key (" + where + ")");
                    }
            }

        private:
            const ConfigFile &cfg_;
            std::set<std::string> used_;
        };

        template <typename E>
        E choose(const std::string &key, const std::string &value,
                 std::initializer_list<std::pair<const char *, E>> options)
        {
            std::string names;
            for (const auto &[name, e] : options)
            {
                if (value == name)
                    return e;
                names += names.empty() ? name : std::string(", ") + name;
            }
            throw ConfigError(key, "expected one of {" + names + "}, got '" + value + "'");
        }

        const char *name_of(Domain d) { return d == Domain::Raw ? "raw" : "range_compressed"; }
        const char *name_of(PhaseModel m) { return m == PhaseModel::Exact ? "exact" : "quadratic"; }
        const char *name_of(Indexing i) { return i == Indexing::ZeroBased ? "zero_based" : "one_based"; }
        const char *name_of(PhaseDiffMode m)
        {
            return m == PhaseDiffMode::FirstPrinciples ? "first_principles" : "closed_form";
        }
        const char *name_of(BalanceMode m) { return m == BalanceMode::UnitEnergy ? "unit_energy" : "literal"; }
    }

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    ConfigFile parse_config_text(const std::string &text, const std::string &source)
    {
        ConfigFile cfg;
        cfg.source = source;
        std::istringstream in(text);
        std::string line;
        int number = 0;
        while (std::getline(in, line))
        {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            const std::string where = source + ":" + std::to_string(number);
            if (eq == std::string::npos)
                throw ConfigError("", where + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("", where + ": empty key");
            if (cfg.values.count(key))
                throw ConfigError(key, "duplicate key (" + where + ")");
            cfg.values[key] = value;
            cfg.lines[key] = number;
        }
        return cfg;
    }

    ConfigFile read_config_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str(), path);
    }

    void apply_override(ConfigFile &cfg, const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "override '" + assignment + "' is not key=value");
        const std::string key = trim(assignment.substr(0, eq));
        if (key.empty())
            throw ConfigError("", "override '" + assignment + "' has an empty key");
        cfg.values[key] = trim(assignment.substr(eq + 1));
        cfg.lines.erase(key);
    }

    std::vector<double> parse_number_list(const std::string &text, const std::string &key)
    {
        std::vector<double> out;
        if (trim(text).empty())
            return out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(to_double(key, item));
        return out;
    }

    bool Scenario::has_moving_target() const
    {
        for (const Target &t : scene.targets)
            if (!t.is_stationary())
                return true;
        return false;
    }

    Scenario scenario_from_config(const ConfigFile &cfg)
    {
        Reader r(cfg);
        Scenario s;
        Scene &sc = s.scene;

        sc.radar.f0_hz = r.required("radar.f0_hz");
        sc.radar.bandwidth_hz = r.num("radar.bandwidth_hz", 500e6);
        sc.radar.pulse_width_s = r.num("radar.pulse_width_s", 1e-6);
        sc.radar.prf_hz = r.num("radar.prf_hz", 100.0);
        sc.radar.fs_hz = r.num("radar.fs_hz", 600e6);

        sc.array.n_rx = static_cast<int>(r.count("array.n_rx", 2));
        sc.array.d_m = r.num("array.d_m", 0.06);
        sc.array.d_r_m = r.num("array.d_r_m", 0.1);
        sc.array.indexing = choose<Indexing>("array.indexing", r.word("array.indexing", "zero_based"),
                                             {{"zero_based", Indexing::ZeroBased}, {"one_based", Indexing::OneBased}});

        sc.platform.vp_mps = r.num("platform.vp_mps", 3.0);
        sc.platform.height_m = r.required("platform.height_m");
        sc.platform.x_start_m = r.num("platform.x_start_m", 0.0);
        sc.platform.jitter_std_m = r.num("platform.jitter_std_m", 0.0);
        sc.platform.jitter_seed = r.count("platform.jitter_seed", 0);

        sc.wall.thickness_m = r.num("wall.thickness_m", 0.0);
        sc.wall.eps_r = r.num("wall.eps_r", 1.0);

        sc.n_pulses = r.count("grid.n_pulses", 256);
        sc.eta_c_s = r.num("scene.eta_c_s", 0.0);
        sc.ta_s = r.num("scene.ta_s", static_cast<double>(sc.n_pulses) / sc.radar.prf_hz);
        if (r.has("grid.tau0_s"))
            s.grid.tau0_s = r.num("grid.tau0_s", 0.0);
        if (r.has("grid.n_fast"))
            s.grid.n_fast = r.count("grid.n_fast", 0);

        s.domain = choose<Domain>("sim.domain", r.word("sim.domain", "range_compressed"),
                                  {{"raw", Domain::Raw}, {"range_compressed", Domain::RangeCompressed}});
        s.phase_model = choose<PhaseModel>("sim.phase_model", r.word("sim.phase_model", "exact"),
                                           {{"exact", PhaseModel::Exact}, {"quadratic", PhaseModel::Quadratic}});
        s.snr_db = r.num("sim.snr_db", kNoNoise);
        if (std::isnan(s.snr_db) || s.snr_db == -std::numeric_limits<double>::infinity())
            throw ConfigError("sim.snr_db", "must be finite or inf");
        s.seed = r.count("sim.seed", 1);

        // Targets: target.<K>.<field>, K a positive integer, ordered by K.
        std::set<unsigned long> ids;
        for (const auto &[key, value] : cfg.values)
        {
            if (key.rfind("target.", 0) != 0)
                continue;
            const auto dot = key.find('.', 7);
            const std::string id = key.substr(7, dot == std::string::npos ? std::string::npos : dot - 7);
            unsigned long k = 0;
            const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), k);
            if (id.empty() || ec != std::errc() || ptr != id.data() + id.size() || k == 0 || dot == std::string::npos)
                throw ConfigError(key, "target keys look like target.<K>.<field> with K >= 1");
            ids.insert(k);
        }
        for (unsigned long k : ids)
        {
            const std::string p = "target." + std::to_string(k) + ".";
            Target t;
            t.x0_m = r.required(p + "x0_m");
            t.y0_m = r.required(p + "y0_m");
            t.vx_mps = r.num(p + "vx_mps", 0.0);
            t.vy_mps = r.num(p + "vy_mps", 0.0);
            t.amplitude = {r.num(p + "amp_re", 1.0), r.num(p + "amp_im", 0.0)};
            t.behind_wall = r.flag(p + "behind_wall", false);
            sc.targets.push_back(t);
        }

        s.suppress.kappa = r.num("suppress.kappa", 0.5);
        s.suppress.eps = r.num("suppress.eps", 1e-6);
        s.suppress.phase_diff_mode = choose<PhaseDiffMode>(
            "suppress.phase_diff_mode", r.word("suppress.phase_diff_mode", "first_principles"),
            {{"first_principles", PhaseDiffMode::FirstPrinciples}, {"closed_form", PhaseDiffMode::ClosedForm}});
        s.suppress.balance_mode =
            choose<BalanceMode>("suppress.balance_mode", r.word("suppress.balance_mode", "unit_energy"),
                                {{"unit_energy", BalanceMode::UnitEnergy}, {"literal", BalanceMode::Literal}});

        s.imaging.vx_mps = r.num("imaging.vx_mps", 0.0);
        s.imaging.vy_mps = r.num("imaging.vy_mps", 0.0);
        s.imaging.include_linear_term = r.flag("imaging.linear_term", false);
        s.imaging.vr = r.num("imaging.vr", 0.0);
        s.imaging.linear_channel = static_cast<int>(r.count("imaging.linear_channel", 1));
        s.imaging.rcmc_mode =
            choose<RcmcMode>("imaging.rcmc_mode", r.word("imaging.rcmc_mode", "scene_center"),
                             {{"scene_center", RcmcMode::SceneCenter}, {"per_bin", RcmcMode::PerBin}});

        s.box_half_width = r.count("metrics.box_half_width", 3);
        s.guard = r.count("metrics.guard", 3);
        s.scan_vy = parse_number_list(r.word("scan.vy_list", "0,0.3,0.6,0.9"), "scan.vy_list");

        r.reject_unused();

        sc.validate(false);
        s.suppress.validate();
        s.imaging.validate(sc.platform);
        if (s.imaging.linear_channel < 1 || s.imaging.linear_channel > sc.array.n_rx)
            throw ConfigError("imaging.linear_channel", "must name a receiver in [1, array.n_rx]");
        if (s.scan_vy.empty())
            throw ConfigError("scan.vy_list", "must list at least one velocity");
        return s;
    }

    Scenario load_scenario(const std::string &path, const std::vector<std::string> &overrides)
    {
        ConfigFile cfg = read_config_file(path);
        for (const auto &o : overrides)
            apply_override(cfg, o);
        return scenario_from_config(cfg);
    }

    std::map<std::string, std::string> effective_params(const Scenario &s)
    {
        const Scene &sc = s.scene;
        std::map<std::string, std::string> m;
        const auto num = [&](const std::string &k, double v) { m[k] = format_number(v); };
        num("radar.f0_hz", sc.radar.f0_hz);
        num("radar.bandwidth_hz", sc.radar.bandwidth_hz);
        num("radar.pulse_width_s", sc.radar.pulse_width_s);
        num("radar.prf_hz", sc.radar.prf_hz);
        num("radar.fs_hz", sc.radar.fs_hz);
        m["array.n_rx"] = std::to_string(sc.array.n_rx);
        num("array.d_m", sc.array.d_m);
        num("array.d_r_m", sc.array.d_r_m);
        m["array.indexing"] = name_of(sc.array.indexing);
        num("platform.vp_mps", sc.platform.vp_mps);
        num("platform.height_m", sc.platform.height_m);
        num("platform.x_start_m", sc.platform.x_start_m);
        num("platform.jitter_std_m", sc.platform.jitter_std_m);
        m["platform.jitter_seed"] = std::to_string(sc.platform.jitter_seed);
        num("wall.thickness_m", sc.wall.thickness_m);
        num("wall.eps_r", sc.wall.eps_r);
        num("scene.eta_c_s", sc.eta_c_s);
        num("scene.ta_s", sc.ta_s);
        m["grid.n_pulses"] = std::to_string(sc.n_pulses);
        m["grid.tau0_s"] = s.grid.tau0_s ? format_number(*s.grid.tau0_s) : "auto";
        m["grid.n_fast"] = s.grid.n_fast ? std::to_string(*s.grid.n_fast) : "auto";
        m["sim.domain"] = name_of(s.domain);
        m["sim.phase_model"] = name_of(s.phase_model);
        num("sim.snr_db", s.snr_db);
        m["sim.seed"] = std::to_string(s.seed);
        for (std::size_t i = 0; i < sc.targets.size(); ++i)
        {
            const Target &t = sc.targets[i];
            const std::string p = "target." + std::to_string(i + 1) + ".";
            num(p + "x0_m", t.x0_m);
            num(p + "y0_m", t.y0_m);
            num(p + "vx_mps", t.vx_mps);
            num(p + "vy_mps", t.vy_mps);
            num(p + "amp_re", t.amplitude.real());
            num(p + "amp_im", t.amplitude.imag());
            m[p + "behind_wall"] = t.behind_wall ? "true" : "false";
        }
        num("suppress.kappa", s.suppress.kappa);
        num("suppress.eps", s.suppress.eps);
        m["suppress.phase_diff_mode"] = name_of(s.suppress.phase_diff_mode);
        m["suppress.balance_mode"] = name_of(s.suppress.balance_mode);
        for (const auto &[k, v] : s.imaging.echo())
            m[k] = v;
        m["metrics.box_half_width"] = std::to_string(s.box_half_width);
        m["metrics.guard"] = std::to_string(s.guard);
        std::string list;
        for (double v : s.scan_vy)
            list += (list.empty() ? "" : ",") + format_number(v);
        m["scan.vy_list"] = list;
        return m;
    }
}
