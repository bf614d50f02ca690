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

#include "rdcc/rangecomp.hpp"

#include <cmath>

#include "rdcc/errors.hpp"
#include "rdcc/fft.hpp"

namespace rdcc
{
    std::vector<cdouble> reference_chirp(const RadarParams &params, std::size_t n_fast, double fs)
    {
        const double tp = params.pulse_width_s;
        if (tp * fs < 2.0)
            throw InvalidArgument("reference chirp: pulse spans fewer than 2 samples");
        const auto half = static_cast<std::size_t>(std::floor(0.5 * tp * fs));
        if (2 * half + 1 > n_fast)
            throw InvalidArgument("reference chirp: pulse longer than the fast-time window");

        const double kr = params.chirp_rate();
        std::vector<cdouble> ref(n_fast, cdouble{});
        ref[0] = cdouble(1.0, 0.0);
        for (std::size_t i = 1; i <= half; ++i)
        {
            const double t = static_cast<double>(i) / fs;
            if (t > 0.5 * tp)
                break;
            const cdouble v = std::polar(1.0, -kPi * kr * t * t);
            ref[i] = v;
            ref[n_fast - i] = v; // even in tau
        }
        return ref;
    }

    DataCube pulse_compress(const DataCube &raw)
    {
        require_domain(raw, Domain::Raw, "pulse_compress");
        const std::size_t nf = raw.fast();
        const RadarParams &radar = raw.radar();

        std::vector<cdouble> ref = reference_chirp(radar, nf, raw.grid().fs_hz);
        fft::transform(ref, fft::Direction::Forward);
        const double gain = 1.0 / (radar.pulse_width_s * raw.grid().fs_hz);
        for (auto &z : ref)
            z *= gain;

        DataCube out = raw;
        out.set_domain(Domain::RangeCompressed);
        const std::size_t rows = out.channels() * out.pulses();
        auto s = out.samples();
        fft::transform_many(s.data(), nf, rows, 1, nf, fft::Direction::Forward);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t i = 0; i < nf; ++i)
                s[r * nf + i] *= ref[i];
        fft::transform_many(s.data(), nf, rows, 1, nf, fft::Direction::Inverse);
        return out;
    }
}
