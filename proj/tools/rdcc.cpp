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

// rdcc command line: simulate, process, scan, e2e.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdcc/config.hpp"
#include "rdcc/cube_io.hpp"
#include "rdcc/errors.hpp"
#include "rdcc/pipeline.hpp"

namespace fs = std::filesystem;
using namespace rdcc;

namespace
{
    enum Exit
    {
        kOk = 0,
        kUsage = 1,
        kData = 2,
        kInternal = 3,
    };

    class UsageError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct Common
    {
        std::string config;
        std::vector<std::string> overrides;
        std::optional<std::uint64_t> seed;
        bool timing = false;
    };

    Scenario scenario(const Common &c)
    {
        std::vector<std::string> ov = c.overrides;
        if (c.seed)
            ov.push_back("sim.seed=" + std::to_string(*c.seed));
        return load_scenario(c.config, ov);
    }

    std::string hex64(std::uint64_t v)
    {
        char buf[19];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    std::string digest(const DataCube &cube)
    {
        return "channels=" + std::to_string(cube.channels()) + " pulses=" + std::to_string(cube.pulses()) +
               " fast=" + std::to_string(cube.fast()) + " domain=" + to_string(cube.domain()) +
               " energy=" + format_number(cube.energy()) + " checksum=" + hex64(cube_checksum(cube));
    }

    Method method_arg(const std::string &name)
    {
        try
        {
            return parse_method(name);
        }
        catch (const InvalidArgument &e)
        {
            throw UsageError(e.what());
        }
    }

    double elapsed_ms(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }

    void write_image(const Image &img, const std::string &prefix)
    {
        write_text_file(prefix + ".csv", image_csv(img));
        write_text_file(prefix + ".pgm", image_pgm(img));
    }

    std::string stage;

    int cmd_simulate(const Common &c, const std::string &out)
    {
        stage = "config";
        const Scenario s = scenario(c);
        stage = "simulate";
        const DataCube cube = simulate(s);
        stage = "write";
        write_cube(cube, out);
        std::cout << digest(decode_cube(encode_cube(cube))) << "\n";
        return kOk;
    }

    int cmd_process(const Common &c, const std::string &in, const std::string &method_name,
                    const std::string &out_image, const std::string &out_report)
    {
        const Method method = method_arg(method_name);
        stage = "config";
        const Scenario s = scenario(c);
        stage = "read";
        const DataCube cube = read_cube(in);
        const auto t0 = std::chrono::steady_clock::now();
        const MethodResult res = run_method(cube, method, s, &stage);
        const double ms = elapsed_ms(t0);
        stage = "evaluate";
        const MethodResult ref = method == Method::None ? res : run_method(cube, Method::None, s, &stage);
        RunReport rep = evaluate(s, res, ref.image);
        if (c.timing)
            rep.runtime_ms = ms;
        stage = "write";
        write_image(res.image, out_image);
        write_text_file(out_report, report_json(rep));
        if (rep.scores)
            std::cout << rep.method << ": if_db=" << format_number(rep.scores->if_db) << "\n";
        else
            std::cout << rep.method << ": no moving target in the scenario, IF not computed\n";
        return kOk;
    }

    int cmd_scan(const Common &c, const std::string &in, const std::string &method_name,
                 const std::optional<std::string> &vy_list, const std::string &out_report)
    {
        const Method method = method_arg(method_name);
        stage = "config";
        const Scenario s = scenario(c);
        std::vector<double> vys = s.scan_vy;
        if (vy_list)
        {
            vys = parse_number_list(*vy_list, "--vy-list");
            if (vys.empty())
                throw UsageError("--vy-list is empty");
        }
        stage = "read";
        const DataCube cube = read_cube(in);
        const auto entries = run_scan(cube, method, s, vys, &stage);
        stage = "write";
        write_text_file(out_report, scan_csv(entries));
        std::cout << scan_csv(entries);
        return kOk;
    }

    int cmd_e2e(const Common &c, const std::string &out_dir, bool force)
    {
        stage = "config";
        const Scenario s = scenario(c);
        const fs::path dir(out_dir);
        if (fs::exists(dir))
        {
            if (!fs::is_directory(dir))
                throw UsageError("'" + out_dir + "' exists and is not a directory");
            if (!fs::is_empty(dir) && !force)
                throw UsageError("output directory '" + out_dir + "' is not empty (use --force)");
        }
        fs::create_directories(dir);

        stage = "simulate";
        const DataCube simulated = simulate(s);
        stage = "write";
        write_cube(simulated, (dir / "cube.rdc").string());
        // Process what a reader of the file sees.
        const DataCube cube = decode_cube(encode_cube(simulated));

        nlohmann::json summary;
        summary["cube"] = {{"channels", cube.channels()},
                           {"pulses", cube.pulses()},
                           {"fast", cube.fast()},
                           {"checksum", hex64(cube_checksum(cube))}};
        summary["params"] = effective_params(s);

        const MethodResult none = run_method(cube, Method::None, s, &stage);
        for (Method m : {Method::Proposed, Method::Dpca, Method::None})
        {
            const auto t0 = std::chrono::steady_clock::now();
            const MethodResult res = m == Method::None ? none : run_method(cube, m, s, &stage);
            const double ms = elapsed_ms(t0);
            stage = "evaluate";
            RunReport rep = evaluate(s, res, none.image);
            if (c.timing)
                rep.runtime_ms = ms;
            stage = "write";
            const std::string name = to_string(m);
            write_image(res.image, (dir / name).string());
            write_text_file((dir / (name + ".json")).string(), report_json(rep));
            nlohmann::json entry = nlohmann::json::parse(report_json(rep));
            entry.erase("params");
            summary["methods"][name] = entry;
        }

        if (s.has_moving_target())
        {
            const auto entries = run_scan(cube, Method::Proposed, s, s.scan_vy, &stage);
            stage = "write";
            write_text_file((dir / "scan.csv").string(), scan_csv(entries));
            nlohmann::json rows = nlohmann::json::array();
            for (const auto &e : entries)
                rows.push_back({{"vy_mps", e.vy_mps}, {"if_db", e.report.if_db}});
            summary["scan"] = rows;
            const auto &ms = summary["methods"];
            if (ms["proposed"]["if_db"].is_number() && ms["dpca"]["if_db"].is_number())
                summary["proposed_beats_dpca"] =
                    ms["proposed"]["if_db"].get<double>() > ms["dpca"]["if_db"].get<double>();
        }
        stage = "write";
        write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
        std::cout << "wrote " << out_dir << "\n";
        return kOk;
    }

    void add_common(CLI::App *cmd, Common &c, bool timing)
    {
        cmd->add_option("-c,--config", c.config, "Scenario config file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--set", c.overrides, "Override a config key (key=value), repeatable");
        cmd->add_option("--seed", c.seed, "Override sim.seed");
        if (timing)
            cmd->add_flag("--timing", c.timing, "Record runtime_ms in reports");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"rdcc: range-Doppler compensation and cancellation for dual-channel moving target detection"};
    app.require_subcommand(1);

    Common common;
    std::string cube_out, cube_in, method = "proposed", out_image, out_report, out_dir;
    std::optional<std::string> vy_list;
    bool force = false;

    auto *sim = app.add_subcommand("simulate", "Synthesize a cube from a scenario");
    add_common(sim, common, false);
    sim->add_option("-o,--out", cube_out, "Output cube file")->required();

    auto *proc = app.add_subcommand("process", "Run one suppression method and focus");
    add_common(proc, common, true);
    proc->add_option("-i,--in", cube_in, "Input cube file")->required();
    proc->add_option("-m,--method", method, "proposed, dpca or none")->required();
    proc->add_option("--out-image", out_image, "Image output prefix (.csv and .pgm are appended)")->required();
    proc->add_option("--out-report", out_report, "JSON report path")->required();

    auto *scan = app.add_subcommand("scan", "Focus over a list of assumed v_y and tabulate IF");
    add_common(scan, common, false);
    scan->add_option("-i,--in", cube_in, "Input cube file")->required();
    scan->add_option("-m,--method", method, "Suppression method (default proposed)");
    scan->add_option("--vy-list", vy_list, "Comma-separated v_y values (default scan.vy_list)");
    scan->add_option("--out-report", out_report, "CSV output path")->required();

    auto *e2e = app.add_subcommand("e2e", "Simulate, process with every method, scan, summarize");
    add_common(e2e, common, true);
    e2e->add_option("-o,--out-dir", out_dir, "Output directory")->required();
    e2e->add_flag("--force", force, "Allow a non-empty output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try
    {
        if (*sim)
            return cmd_simulate(common, cube_out);
        if (*proc)
            return cmd_process(common, cube_in, method, out_image, out_report);
        if (*scan)
            return cmd_scan(common, cube_in, method, vy_list, out_report);
        if (*e2e)
            return cmd_e2e(common, out_dir, force);
    }
    catch (const UsageError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const rdcc::Error &e)
    {
        std::cerr << "error";
        if (!stage.empty())
            std::cerr << " in stage '" << stage << "'";
        std::cerr << ": " << e.what() << "\n";
        return kData;
    }
    catch (const std::exception &e)
    {
        std::cerr << "internal error";
        if (!stage.empty())
            std::cerr << " in stage '" << stage << "'";
        std::cerr << ": " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
