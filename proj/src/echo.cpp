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

#include "rdcc/echo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdcc/errors.hpp"
#include "rdcc/random.hpp"

namespace rdcc
{
    namespace
    {
        constexpr std::uint64_t kNoiseStream = 0x4E015EULL;

        struct DelaySpan
        {
            double lo = 0.0;
            double hi = 0.0;
            bool any = false;
        };

        DelaySpan target_delay_span(const Scene &scene, const Target &t, PhaseModel model)
        {
            DelaySpan span;
            for (int n = 1; n <= scene.array.n_rx; ++n)
            {
                for (std::size_t k = 0; k < scene.n_pulses; ++k)
                {
                    if (!scene.illuminated(t, n, scene.slow_time(k)))
                        continue;
                    const double td = path_length(scene, t, n, k, model) / kSpeedOfLight;
                    if (!span.any)
                    {
                        span = {td, td, true};
                        continue;
                    }
                    span.lo = std::min(span.lo, td);
                    span.hi = std::max(span.hi, td);
                }
            }
            return span;
        }

        void check_window(const Scene &scene, const SamplingGrid &grid, PhaseModel model, double half_extent)
        {
            if (grid.n_fast < 2 || grid.n_pulses < 2)
                throw ConfigError("grid", "need at least 2 fast-time samples and 2 pulses");
            if (grid.n_pulses != scene.n_pulses)
                throw ConfigError("grid.n_pulses", "grid and scene pulse counts differ");
            const double first = grid.tau0_s;
            const double last = grid.fast_time(grid.n_fast - 1);
            for (std::size_t i = 0; i < scene.targets.size(); ++i)
            {
                const DelaySpan span = target_delay_span(scene, scene.targets[i], model);
                if (!span.any)
                    continue;
                if (span.lo - half_extent < first || span.hi + half_extent > last)
                    throw ConfigError("target." + std::to_string(i + 1),
                                      "echo delay falls outside the fast-time window");
            }
        }

        SamplingGrid base_grid(const Scene &scene)
        {
            SamplingGrid g;
            g.fs_hz = scene.radar.fs_hz;
            g.prf_hz = scene.radar.prf_hz;
            g.n_pulses = scene.n_pulses;
            return g;
        }
    }

    SamplingGrid make_grid(const Scene &scene, Domain domain, PhaseModel model, const GridRequest &request)
    {
        scene.validate(false);
        SamplingGrid g = base_grid(scene);
        const double fs = scene.radar.fs_hz;
        const double margin = domain == Domain::Raw ? 2.0 * scene.radar.pulse_width_s
                                                    : static_cast<double>(kCompressedMarginSamples) / fs;
        DelaySpan all;
        for (const auto &t : scene.targets)
        {
            const DelaySpan s = target_delay_span(scene, t, model);
            if (!s.any)
                continue;
            if (!all.any)
                all = s;
            all.lo = std::min(all.lo, s.lo);
            all.hi = std::max(all.hi, s.hi);
        }
        if (!all.any)
            all = {0.0, 0.0, true};
        g.tau0_s = request.tau0_s.value_or(all.lo - margin);
        if (request.n_fast)
            g.n_fast = *request.n_fast;
        else
            g.n_fast = static_cast<std::size_t>(std::ceil((all.hi + margin - g.tau0_s) * fs)) + 1;
        return g;
    }

    double path_length(const Scene &scene, const Target &t, int n, std::size_t k, PhaseModel model)
    {
        const double eta = scene.slow_time(k);
        const double offset = scene.jitter_offset(k);
        if (model == PhaseModel::Exact)
            return range_history_exact(scene, t, n, eta, offset);
        Target shifted = t;
        shifted.x0_m -= offset;
        return range_history_quadratic(phase_coeffs(scene, shifted, n, CoeffMode::General), eta);
    }

    DataCube synthesize_raw(const Scene &scene, const SamplingGrid &grid, PhaseModel model)
    {
        scene.validate(false);
        const RadarParams &radar = scene.radar;
        const double half = 0.5 * radar.pulse_width_s;
        check_window(scene, grid, model, half);

        DataCube cube(static_cast<std::size_t>(scene.array.n_rx), radar, grid, Domain::Raw);
        const double lambda = radar.wavelength();
        const double kr = radar.chirp_rate();
        for (int n = 1; n <= scene.array.n_rx; ++n)
        {
            for (std::size_t k = 0; k < grid.n_pulses; ++k)
            {
                auto pulse = cube.pulse(static_cast<std::size_t>(n - 1), k);
                const double eta = grid.slow_time(k);
                for (const Target &t : scene.targets)
                {
                    if (!scene.illuminated(t, n, eta))
                        continue;
                    const double r = path_length(scene, t, n, k, model);
                    const double td = r / kSpeedOfLight;
                    const cdouble carrier = t.amplitude * std::polar(1.0, -2.0 * kPi * r / lambda);
                    const double lo = std::ceil((td - half - grid.tau0_s) * grid.fs_hz);
                    const double hi = std::floor((td + half - grid.tau0_s) * grid.fs_hz);
                    const auto i0 = static_cast<std::size_t>(std::max(0.0, lo - 1.0));
                    const auto i1 = static_cast<std::size_t>(std::min(static_cast<double>(grid.n_fast - 1), hi + 1.0));
                    for (std::size_t i = i0; i <= i1; ++i)
                    {
                        const double dt = grid.fast_time(i) - td;
                        if (std::abs(dt) > half)
                            continue;
                        pulse[i] += carrier * std::polar(1.0, kPi * kr * dt * dt);
                    }
                }
            }
        }
        return cube;
    }

    DataCube synthesize_compressed(const Scene &scene, const SamplingGrid &grid, PhaseModel model)
    {
        scene.validate(false);
        const RadarParams &radar = scene.radar;
        check_window(scene, grid, model, 0.0);

        DataCube cube(static_cast<std::size_t>(scene.array.n_rx), radar, grid, Domain::RangeCompressed);
        const double lambda = radar.wavelength();
        const double b = radar.bandwidth_hz;
        for (int n = 1; n <= scene.array.n_rx; ++n)
        {
            for (std::size_t k = 0; k < grid.n_pulses; ++k)
            {
                auto pulse = cube.pulse(static_cast<std::size_t>(n - 1), k);
                const double eta = grid.slow_time(k);
                for (const Target &t : scene.targets)
                {
                    if (!scene.illuminated(t, n, eta))
                        continue;
                    const double r = path_length(scene, t, n, k, model);
                    const double td = r / kSpeedOfLight;
                    const cdouble carrier = t.amplitude * std::polar(1.0, -2.0 * kPi * r / lambda);
                    for (std::size_t i = 0; i < grid.n_fast; ++i)
                        pulse[i] += carrier * sinc(b * (grid.fast_time(i) - td));
                }
            }
        }
        return cube;
    }

    double noise_power(double reference_peak_power, double snr_db)
    {
        return reference_peak_power * std::pow(10.0, -snr_db / 10.0);
    }

    DataCube add_noise(const DataCube &cube, double reference_peak_power, double snr_db, std::uint64_t seed)
    {
        if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
            throw InvalidArgument("snr_db must be finite or +inf");
        if (cube.domain() == Domain::RangeDoppler)
            throw DomainMismatch("add_noise: expected raw or range_compressed cube");
        DataCube out = cube;
        if (snr_db == kNoNoise)
            return out;
        const double sigma = std::sqrt(0.5 * noise_power(reference_peak_power, snr_db));
        auto s = out.samples();
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            const auto [g1, g2] = counter_normal_pair(seed, kNoiseStream, i);
            s[i] += cdouble(sigma * g1, sigma * g2);
        }
        return out;
    }

    double strongest_peak_power(const Scene &scene)
    {
        double p = 0.0;
        for (const Target &t : scene.targets)
            p = std::max(p, std::norm(t.amplitude));
        return p;
    }

    DataCube add_noise(const DataCube &cube, const Scene &scene, double snr_db, std::uint64_t seed)
    {
        return add_noise(cube, strongest_peak_power(scene), snr_db, seed);
    }
}
