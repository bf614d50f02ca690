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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdcc/config.hpp"
#include "rdcc/cube.hpp"
#include "rdcc/image.hpp"
#include "rdcc/imaging.hpp"
#include "rdcc/metrics.hpp"

namespace rdcc
{
    enum class Method
    {
        Proposed, ///< balance, RD compensation and cancellation, ratio filter, mismatch focus
        Dpca,     ///< balance, integer-pulse DPCA, focus
        None,     ///< balance, focus channel 1 (the IF input reference)
    };

    Method parse_method(const std::string &name);
    const char *to_string(Method m);

    /// Synthesize the scenario's cube, noise included.
    DataCube simulate(const Scenario &s);

    struct MethodResult
    {
        Method method = Method::None;
        DataCube balanced;   ///< range-compressed, all channels
        DataCube cancelled;  ///< single channel before the ratio filter (equal to `suppressed` except for proposed)
        DataCube suppressed; ///< single channel handed to focus
        Image image;
    };

    /// Run one processing chain. `stage`, when given, holds the name of the
    /// stage being run so callers can report where a failure happened.
    MethodResult run_method(const DataCube &cube, Method method, const Scenario &s, std::string *stage = nullptr);

    struct RunReport
    {
        std::string method;
        std::map<std::string, std::string> params;
        std::optional<IFReport> scores;
        std::optional<double> residual_db;
        std::optional<double> runtime_ms;
    };

    /// Fast-time gate margin around the stationary delays used for residual_db.
    inline constexpr std::size_t kResidualGateMargin = 2;

    /// Score a result against the scenario truth: IF when the scene has a
    /// moving target, clutter residual when it has a stationary one.
    RunReport evaluate(const Scenario &s, const MethodResult &result, const Image &reference);

    RegionMask scenario_mask(const Scenario &s, const ImagingConfig &imaging, const Image &image);

    /// Suppress once, then focus and score per candidate v_y.
    std::vector<ScanEntry> run_scan(const DataCube &cube, Method method, const Scenario &s,
                                    const std::vector<double> &vy_list, std::string *stage = nullptr);

    std::string report_json(const RunReport &r);
    std::string scan_csv(const std::vector<ScanEntry> &entries);

    /// Magnitudes, one line per range bin.
    std::string image_csv(const Image &image);
    /// 8-bit binary PGM of 20 log10(|p| / peak), mapped from [-60, 0] dB to [0, 255].
    std::string image_pgm(const Image &image);

    void write_text_file(const std::string &path, const std::string &content);
}
