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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rdcc/cube.hpp"
#include "rdcc/image.hpp"
#include "rdcc/metrics.hpp"
#include "rdcc/scene.hpp"

namespace rdcc
{
    enum class RcmcMode
    {
        SceneCenter, ///< one reference range c * tau_mid / 2 for the whole swath
        PerBin,      ///< reference range c * tau / 2 of each output bin
    };

    /// Assumed target motion for mismatch focusing.
    struct ImagingConfig
    {
        double vx_mps = 0.0;
        double vy_mps = 0.0;
        bool include_linear_term = false;
        double vr = 0.0;       ///< m^2/s, only used with the linear term
        int linear_channel = 1; ///< receiver whose d_n enters the linear term
        RcmcMode rcmc_mode = RcmcMode::SceneCenter;

        /// (vx - vp)^2 + vy^2.
        double relative_speed_sq(const PlatformState &platform) const;
        void validate(const PlatformState &platform) const;
        std::map<std::string, std::string> echo() const;
    };

    /// Fast-time path-length migration at Doppler f for reference range r0_ref.
    double range_migration(double lambda, double r0_ref, double v_sq, double f_hz);

    /// Removes the Doppler-dependent range walk of every channel.
    DataCube rcmc(const DataCube &rd, const PlatformState &platform, const ImagingConfig &config);

    /// Matched azimuth filter at range r0 and Doppler f.
    cdouble azimuth_filter(const RadarParams &params, const ArrayGeometry &geometry, const PlatformState &platform,
                           const ImagingConfig &config, double r0, double f_hz);

    /// Multiplies every (range bin, Doppler bin) of an RD cube by the azimuth filter.
    DataCube azimuth_compress(const DataCube &rd, const ArrayGeometry &geometry, const PlatformState &platform,
                              const ImagingConfig &config);

    /// Slow-time transform, RCMC, azimuth filter, inverse transform.
    Image focus(const DataCube &cube, const ArrayGeometry &geometry, const PlatformState &platform,
                const ImagingConfig &config);

    struct ScanEntry
    {
        double vy_mps = 0.0;
        Image image;
        IFReport report;
    };

    /// What velocity_scan needs to score each candidate: the un-suppressed
    /// reference cube and a mask builder for a given imaging configuration.
    struct ScanContext
    {
        DataCube reference;
        std::function<RegionMask(const ImagingConfig &, const Image &)> mask_for;
    };

    /// Focus `cube` once per candidate v_y (all other fields from `base`) and
    /// score each image against the reference focused the same way.
    std::vector<ScanEntry> velocity_scan(const DataCube &cube, const ArrayGeometry &geometry,
                                         const PlatformState &platform, const ImagingConfig &base,
                                         const std::vector<double> &vy_list, const ScanContext &context);
}
