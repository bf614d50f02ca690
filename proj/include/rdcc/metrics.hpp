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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rdcc/cube.hpp"
#include "rdcc/echo.hpp"
#include "rdcc/image.hpp"
#include "rdcc/scene.hpp"

namespace rdcc
{
    struct ImagingConfig;

    enum class PixelClass : std::uint8_t
    {
        Clutter = 0,
        Signal = 1,
        Guard = 2,
    };

    /// Pixel partition of an image into signal, guard and clutter sets.
    struct RegionMask
    {
        std::size_t n_range = 0;
        std::size_t n_azimuth = 0;
        std::vector<PixelClass> labels; ///< row-major like Image

        PixelClass at(std::size_t r, std::size_t a) const { return labels[r * n_azimuth + a]; }
        std::size_t count(PixelClass c) const;
        void validate_for(const Image &img) const;
    };

    struct ImageLocation
    {
        std::size_t range_bin = 0;
        std::size_t azimuth_bin = 0;
    };

    /// Expected focused position of a target: range from the minimum path
    /// a0 - a1^2 / (4 a2) of receiver 1, azimuth from its zero-Doppler time
    /// (plus the shift of the linear filter term when enabled). Azimuth wraps
    /// modulo the aperture length because the slow-time transform is circular.
    ImageLocation expected_location(const Scene &scene, const Target &target, const ImageCalibration &cal,
                                    std::size_t n_range, std::size_t n_azimuth, const ImagingConfig &imaging);

    /// Boxes of half-width `box_half_width` around every moving target, a guard
    /// ring `guard` bins wide around each box, clutter everywhere else.
    RegionMask region_from_truth(const Scene &scene, const ImageCalibration &cal, std::size_t n_range,
                                 std::size_t n_azimuth, const ImagingConfig &imaging, std::size_t box_half_width,
                                 std::size_t guard);

    /// 10 log10(mean signal power / mean clutter power). Throws DegenerateInput
    /// when the clutter power is zero.
    double scnr(const Image &image, const RegionMask &mask);

    struct IFReport
    {
        double scnr_in_db = 0.0;
        double scnr_out_db = 0.0;
        double if_db = 0.0;
        bool clutter_free = false; ///< output clutter power is exactly zero; IF reported as +inf
        std::size_t signal_pixels = 0;
        std::size_t clutter_pixels = 0;
        std::size_t guard_pixels = 0;
        std::string method;
        std::map<std::string, std::string> config;
    };

    IFReport improvement_factor(const Image &input, const Image &output, const RegionMask &mask);

    /// Fast-time gates of one channel, applied to every pulse.
    struct GateRegion
    {
        std::size_t channel = 0;
        std::vector<std::uint8_t> gates;

        std::size_t count() const;
    };

    enum class TargetSelect
    {
        Stationary,
        Moving,
        All,
    };

    /// Gates spanned by the selected targets' delays over their illuminated
    /// pulses at receiver `channel + 1`, widened by `margin` bins.
    GateRegion gates_from_truth(const Scene &scene, const SamplingGrid &grid, PhaseModel model, TargetSelect which,
                                std::size_t margin, std::size_t channel = 0);

    /// 10 log10(energy(after) / energy(before)) over the region. -inf when the
    /// after-energy is zero; DegenerateInput when the before-energy is zero.
    double residual_db(const DataCube &before, const DataCube &after, const GateRegion &region);
}
