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

#include "rdcc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rdcc/echo.hpp"
#include "rdcc/errors.hpp"
#include "rdcc/rangecomp.hpp"
#include "rdcc/suppress.hpp"

namespace rdcc
{
    namespace
    {
        void enter(std::string *stage, const char *name)
        {
            if (stage)
                *stage = name;
        }

        nlohmann::json number(double v)
        {
            if (std::isfinite(v))
                return v;
            return format_number(v);
        }

        nlohmann::json optional_number(const std::optional<double> &v)
        {
            return v ? number(*v) : nlohmann::json(nullptr);
        }

        /// Single-channel cube on the full pulse grid with the DPCA output placed
        /// at its channel-1 pulse indices; the unmatched pulses stay zero.
        DataCube embed_dpca(const DataCube &balanced, const DpcaResult &dpca)
        {
            DataCube out = balanced.zeros_like(1);
            for (std::size_t m = 0; m < dpca.cube.pulses(); ++m)
            {
                const auto src = dpca.cube.pulse(0, m);
                std::copy(src.begin(), src.end(), out.pulse(0, dpca.first_pulse + m).begin());
            }
            return out;
        }
    }

    Method parse_method(const std::string &name)
    {
        if (name == "proposed")
            return Method::Proposed;
        if (name == "dpca")
            return Method::Dpca;
        if (name == "none")
            return Method::None;
        throw InvalidArgument("unknown method '" + name + "' (expected proposed, dpca or none)");
    }

    const char *to_string(Method m)
    {
        switch (m)
        {
        case Method::Proposed:
            return "proposed";
        case Method::Dpca:
            return "dpca";
        case Method::None:
            return "none";
        }
        return "?";
    }

    DataCube simulate(const Scenario &s)
    {
        s.scene.validate();
        const SamplingGrid grid = make_grid(s.scene, s.domain, s.phase_model, s.grid);
        DataCube cube = s.domain == Domain::Raw ? synthesize_raw(s.scene, grid, s.phase_model)
                                                 : synthesize_compressed(s.scene, grid, s.phase_model);
        return add_noise(cube, s.scene, s.snr_db, s.seed);
    }

    MethodResult run_method(const DataCube &cube, Method method, const Scenario &s, std::string *stage)
    {
        const ArrayGeometry &geometry = s.scene.array;
        const PlatformState &platform = s.scene.platform;
        if (cube.channels() != static_cast<std::size_t>(geometry.n_rx))
            throw DimensionMismatch("cube has " + std::to_string(cube.channels()) + " channels, scenario has " +
                                    std::to_string(geometry.n_rx) + " receivers");
        MethodResult r;
        r.method = method;

        DataCube compressed;
        if (cube.domain() == Domain::Raw)
        {
            enter(stage, "pulse_compress");
            compressed = pulse_compress(cube);
        }
        else
        {
            require_domain(cube, Domain::RangeCompressed, "process");
            compressed = cube;
        }

        enter(stage, "balance");
        r.balanced = channel_balance(compressed, s.suppress.balance_mode);

        switch (method)
        {
        case Method::None:
            r.cancelled = r.balanced.extract_channel(0);
            r.suppressed = r.cancelled;
            break;
        case Method::Dpca:
        {
            enter(stage, "dpca");
            const DpcaResult d = dpca_baseline(r.balanced, geometry, platform);
            r.cancelled = embed_dpca(r.balanced, d);
            r.suppressed = r.cancelled;
            break;
        }
        case Method::Proposed:
        {
            enter(stage, "range_doppler");
            const DataCube rd = to_range_doppler(r.balanced);
            enter(stage, "compensate_cancel");
            const DataCube cs = compensate_cancel(rd, geometry, platform, s.suppress);
            enter(stage, "range_doppler");
            const DataCube cs_time = from_range_doppler(cs);
            enter(stage, "ratio_filter");
            const RatioFilterResult rf = ratio_filter(cs_time, r.balanced, s.suppress);
            r.cancelled = cs_time.extract_channel(0);
            r.suppressed = rf.filtered.extract_channel(0);
            break;
        }
        }

        enter(stage, "focus");
        r.image = focus(r.suppressed, geometry, platform, s.imaging);
        r.image.method = to_string(method);
        return r;
    }

    RegionMask scenario_mask(const Scenario &s, const ImagingConfig &imaging, const Image &image)
    {
        return region_from_truth(s.scene, image.calibration, image.n_range, image.n_azimuth, imaging,
                                 s.box_half_width, s.guard);
    }

    RunReport evaluate(const Scenario &s, const MethodResult &result, const Image &reference)
    {
        RunReport rep;
        rep.method = to_string(result.method);
        rep.params = effective_params(s);
        if (s.has_moving_target())
        {
            rep.scores = improvement_factor(reference, result.image, scenario_mask(s, s.imaging, result.image));
            rep.scores->method = rep.method;
        }
        const bool has_static =
            std::any_of(s.scene.targets.begin(), s.scene.targets.end(), [](const Target &t) { return t.is_stationary(); });
        if (has_static)
        {
            const GateRegion gates = gates_from_truth(s.scene, result.balanced.grid(), s.phase_model,
                                                      TargetSelect::Stationary, kResidualGateMargin);
            rep.residual_db = residual_db(result.balanced.extract_channel(0), result.suppressed, gates);
        }
        return rep;
    }

    std::vector<ScanEntry> run_scan(const DataCube &cube, Method method, const Scenario &s,
                                    const std::vector<double> &vy_list, std::string *stage)
    {
        if (vy_list.empty())
            throw InvalidArgument("velocity list is empty");
        if (!s.has_moving_target())
            throw InvalidArgument("velocity scan needs a moving target in the scenario");
        const MethodResult base = run_method(cube, method, s, stage);
        ScanContext ctx;
        ctx.reference = base.balanced.extract_channel(0);
        ctx.mask_for = [&s](const ImagingConfig &cfg, const Image &img) { return scenario_mask(s, cfg, img); };
        enter(stage, "velocity_scan");
        std::vector<ScanEntry> out =
            velocity_scan(base.suppressed, s.scene.array, s.scene.platform, s.imaging, vy_list, ctx);
        for (auto &e : out)
        {
            e.image.method = to_string(method);
            e.report.method = e.image.method;
        }
        return out;
    }

    std::string report_json(const RunReport &r)
    {
        nlohmann::json j;
        j["method"] = r.method;
        j["params"] = r.params;
        if (r.scores)
        {
            j["scnr_in_db"] = number(r.scores->scnr_in_db);
            j["scnr_out_db"] = number(r.scores->scnr_out_db);
            j["if_db"] = number(r.scores->if_db);
            j["clutter_free"] = r.scores->clutter_free;
            j["mask"] = {{"signal_pixels", r.scores->signal_pixels},
                         {"guard_pixels", r.scores->guard_pixels},
                         {"clutter_pixels", r.scores->clutter_pixels}};
        }
        else
        {
            j["scnr_in_db"] = nullptr;
            j["scnr_out_db"] = nullptr;
            j["if_db"] = nullptr;
        }
        j["residual_db"] = optional_number(r.residual_db);
        j["runtime_ms"] = optional_number(r.runtime_ms);
        return j.dump(2) + "\n";
    }

    std::string scan_csv(const std::vector<ScanEntry> &entries)
    {
        std::ostringstream out;
        out << "vy_mps,scnr_in_db,scnr_out_db,if_db\n";
        for (const auto &e : entries)
            out << format_number(e.vy_mps) << ',' << format_number(e.report.scnr_in_db) << ','
                << format_number(e.report.scnr_out_db) << ',' << format_number(e.report.if_db) << '\n';
        return out.str();
    }

    std::string image_csv(const Image &image)
    {
        std::string out;
        for (std::size_t r = 0; r < image.n_range; ++r)
        {
            for (std::size_t a = 0; a < image.n_azimuth; ++a)
            {
                if (a)
                    out += ',';
                out += format_number(std::abs(image.at(r, a)));
            }
            out += '\n';
        }
        return out;
    }

    std::string image_pgm(const Image &image)
    {
        std::string out = "P5\n" + std::to_string(image.n_azimuth) + " " + std::to_string(image.n_range) + "\n255\n";
        const double peak = image.peak_magnitude();
        out.reserve(out.size() + image.pixels.size());
        for (const auto &z : image.pixels)
        {
            double level = 0.0;
            if (peak > 0.0 && std::abs(z) > 0.0)
            {
                const double db = 20.0 * std::log10(std::abs(z) / peak);
                level = std::clamp((db + 60.0) / 60.0, 0.0, 1.0) * 255.0;
            }
            out += static_cast<char>(static_cast<unsigned char>(std::lround(level)));
        }
        return out;
    }

    void write_text_file(const std::string &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + path + "' for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f)
            throw IoError("write to '" + path + "' failed");
    }
}
