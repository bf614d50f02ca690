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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstddef>

#include "rdcc/config.hpp"
#include "rdcc/cube.hpp"
#include "rdcc/scene.hpp"

namespace rdcc::testing
{
    // Desk waveform at the 2.7 GHz carrier, 64 pulses at 100 Hz, platform at
    // x = 0 when eta = 0.
    inline Scene small_scene(std::size_t n_pulses = 64)
    {
        Scene s;
        s.radar = {2.7e9, 500e6, 1e-6, 100.0, 600e6};
        s.array.n_rx = 2;
        s.array.d_m = 0.06;
        s.array.d_r_m = 0.06;
        s.platform.vp_mps = 3.0;
        s.platform.height_m = 0.0;
        s.n_pulses = n_pulses;
        s.platform.x_start_m = -s.platform.vp_mps * static_cast<double>(n_pulses / 2) / s.radar.prf_hz;
        s.ta_s = static_cast<double>(n_pulses) / s.radar.prf_hz;
        return s;
    }

    inline Target point(double x0, double y0, double vx = 0.0, double vy = 0.0, cdouble a = {1.0, 0.0})
    {
        Target t;
        t.x0_m = x0;
        t.y0_m = y0;
        t.vx_mps = vx;
        t.vy_mps = vy;
        t.amplitude = a;
        return t;
    }

    inline double max_abs_diff(const DataCube &a, const DataCube &b)
    {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
        return m;
    }

    inline double max_abs(const DataCube &a)
    {
        double m = 0.0;
        for (const auto &v : a.samples())
            m = std::max(m, std::abs(v));
        return m;
    }

    // Relative L2 distance.
    inline double rel_error(const DataCube &a, const DataCube &b)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num += std::norm(a.samples()[i] - b.samples()[i]);
            den += std::norm(b.samples()[i]);
        }
        return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
    }

    inline double wrap_phase(double x)
    {
        return std::remainder(x, 2.0 * kPi);
    }
}
