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
#include <string>
#include <vector>

#include "rdcc/cube.hpp"

namespace rdcc
{
    struct ImageCalibration
    {
        double range_origin_m = 0.0;    ///< one-way range of bin 0, c tau0 / 2
        double range_m_per_bin = 0.0;   ///< c / (2 fs)
        double azimuth_m_per_bin = 0.0; ///< v_p PRI
        double tau0_s = 0.0;
        double fs_hz = 0.0;
        double prf_hz = 0.0;

        bool operator==(const ImageCalibration &) const = default;
    };

    /// Complex focused map, row-major over (range bin, azimuth bin).
    struct Image
    {
        std::size_t n_range = 0;
        std::size_t n_azimuth = 0;
        std::vector<cdouble> pixels;
        ImageCalibration calibration;
        std::string method;
        std::map<std::string, std::string> config;

        cdouble &at(std::size_t r, std::size_t a) { return pixels[r * n_azimuth + a]; }
        const cdouble &at(std::size_t r, std::size_t a) const { return pixels[r * n_azimuth + a]; }

        double peak_magnitude() const;
        double energy() const;
    };

    ImageCalibration calibration_for(const SamplingGrid &grid, double vp_mps);

    /// Transpose channel c of a time-domain cube into an image.
    Image image_from_cube(const DataCube &cube, std::size_t c, double vp_mps);
}
