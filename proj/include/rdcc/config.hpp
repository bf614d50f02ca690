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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rdcc/cube.hpp"
#include "rdcc/echo.hpp"
#include "rdcc/imaging.hpp"
#include "rdcc/scene.hpp"
#include "rdcc/suppress.hpp"

namespace rdcc
{
    /// Parsed `key = value` lines, with the line each key came from.
    struct ConfigFile
    {
        std::string source;
        std::map<std::string, std::string> values;
        std::map<std::string, int> lines;
    };

    ConfigFile parse_config_text(const std::string &text, const std::string &source = "<string>");
    ConfigFile read_config_file(const std::string &path);

    /// Apply a `key=value` override (replaces an existing key).
    void apply_override(ConfigFile &cfg, const std::string &assignment);

    /// Everything a run needs: the scene plus simulation, suppression,
    /// imaging and scoring settings.
    struct Scenario
    {
        Scene scene;
        Domain domain = Domain::RangeCompressed;
        PhaseModel phase_model = PhaseModel::Exact;
        GridRequest grid;
        double snr_db = kNoNoise;
        std::uint64_t seed = 1;
        SuppressionConfig suppress;
        ImagingConfig imaging;
        std::size_t box_half_width = 3;
        std::size_t guard = 3;
        std::vector<double> scan_vy;

        bool has_moving_target() const;
    };

    /// Build and validate a scenario. Unknown keys, malformed values and missing
    /// required keys throw ConfigError naming the key.
    Scenario scenario_from_config(const ConfigFile &cfg);
    Scenario load_scenario(const std::string &path, const std::vector<std::string> &overrides = {});

    /// Every effective parameter, defaults included, as config-file strings.
    std::map<std::string, std::string> effective_params(const Scenario &s);

    /// Comma-separated list of numbers; empty input gives an empty list.
    std::vector<double> parse_number_list(const std::string &text, const std::string &key);

    std::string format_number(double v);
}
