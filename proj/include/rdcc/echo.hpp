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
#include <optional>

#include "rdcc/cube.hpp"
#include "rdcc/scene.hpp"

namespace rdcc
{
    enum class PhaseModel
    {
        Exact,     ///< square-root range history
        Quadratic, ///< a0 + a1 eta + a2 eta^2
    };

    /// Fast-time window request. Unset fields are chosen automatically from the
    /// scene's delay span.
    struct GridRequest
    {
        std::optional<double> tau0_s;
        std::optional<std::size_t> n_fast;
    };

    /// Margin samples added on both sides of the delay span for compressed-domain
    /// synthesis (raw synthesis uses 2 Tp instead).
    inline constexpr std::size_t kCompressedMarginSamples = 32;

    /// Build the sampling grid for `scene` in `domain` (Raw or RangeCompressed).
    SamplingGrid make_grid(const Scene &scene, Domain domain, PhaseModel model, const GridRequest &request = {});

    /// Path length of target t, receiver n at pulse k under the given phase model.
    double path_length(const Scene &scene, const Target &t, int n, std::size_t k, PhaseModel model);

    /// Demodulated LFM echoes, one channel per receiver.
    DataCube synthesize_raw(const Scene &scene, const SamplingGrid &grid, PhaseModel model);

    /// Echoes after matched filtering: sinc range response with unit peak gain.
    DataCube synthesize_compressed(const Scene &scene, const SamplingGrid &grid, PhaseModel model);

    inline double sinc(double x)
    {
        if (x == 0.0)
            return 1.0;
        const double px = kPi * x;
        return std::sin(px) / px;
    }

    /// Noise disabled.
    inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

    /// Noise power per complex sample for a given SNR against reference peak power.
    double noise_power(double reference_peak_power, double snr_db);

    /// Adds circular complex Gaussian noise. SNR is relative to the strongest
    /// target's compressed peak power |A0|^2 (`reference_peak_power`).
    /// snr_db = +inf returns the cube unchanged.
    DataCube add_noise(const DataCube &cube, double reference_peak_power, double snr_db, std::uint64_t seed);

    /// Compressed peak power of the strongest target, max |A0|^2 (0 without targets).
    double strongest_peak_power(const Scene &scene);

    /// add_noise referenced to the scene's strongest target.
    DataCube add_noise(const DataCube &cube, const Scene &scene, double snr_db, std::uint64_t seed);
}
