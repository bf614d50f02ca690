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

#include "rdcc/image.hpp"

#include <algorithm>
#include <cmath>

#include "rdcc/errors.hpp"

namespace rdcc
{
    double Image::peak_magnitude() const
    {
        double m = 0.0;
        for (const auto &z : pixels)
            m = std::max(m, std::abs(z));
        return m;
    }

    double Image::energy() const
    {
        double e = 0.0;
        for (const auto &z : pixels)
            e += std::norm(z);
        return e;
    }

    ImageCalibration calibration_for(const SamplingGrid &grid, double vp_mps)
    {
        ImageCalibration cal;
        cal.range_origin_m = 0.5 * kSpeedOfLight * grid.tau0_s;
        cal.range_m_per_bin = 0.5 * kSpeedOfLight / grid.fs_hz;
        cal.azimuth_m_per_bin = std::abs(vp_mps) / grid.prf_hz;
        cal.tau0_s = grid.tau0_s;
        cal.fs_hz = grid.fs_hz;
        cal.prf_hz = grid.prf_hz;
        return cal;
    }

    Image image_from_cube(const DataCube &cube, std::size_t c, double vp_mps)
    {
        if (c >= cube.channels())
            throw InvalidArgument("image_from_cube: channel out of range");
        Image img;
        img.n_range = cube.fast();
        img.n_azimuth = cube.pulses();
        img.pixels.resize(img.n_range * img.n_azimuth);
        img.calibration = calibration_for(cube.grid(), vp_mps);
        for (std::size_t p = 0; p < cube.pulses(); ++p)
            for (std::size_t f = 0; f < cube.fast(); ++f)
                img.at(f, p) = cube.at(c, p, f);
        return img;
    }
}
