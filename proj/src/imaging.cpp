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

#include "rdcc/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rdcc/config.hpp"
#include "rdcc/errors.hpp"
#include "rdcc/fft.hpp"
#include "rdcc/suppress.hpp"

namespace rdcc
{
    namespace
    {
        double bin_range(const SamplingGrid &grid, std::size_t i)
        {
            return std::max(0.5 * kSpeedOfLight * grid.fast_time(i), 0.5 * kSpeedOfLight / grid.fs_hz);
        }

        /// Signed DFT frequency of bin k (Hz) for length n; the Nyquist bin of an
        /// even length is treated as zero so real-valued shifts stay symmetric.
        double dft_frequency(std::size_t k, std::size_t n, double fs)
        {
            const double step = fs / static_cast<double>(n);
            if (n % 2 == 0 && k == n / 2)
                return 0.0;
            return (k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n)) *
                   step;
        }

        /// Advance a fast-time row by dt seconds (y(t) = x(t + dt)), circularly.
        void shift_row(std::span<cdouble> row, double dt, double fs, std::vector<cdouble> &scratch)
        {
            if (dt == 0.0)
                return;
            const std::size_t n = row.size();
            scratch.assign(row.begin(), row.end());
            fft::transform(scratch, fft::Direction::Forward);
            for (std::size_t k = 0; k < n; ++k)
                scratch[k] *= std::polar(1.0, 2.0 * kPi * dft_frequency(k, n, fs) * dt);
            fft::transform(scratch, fft::Direction::Inverse);
            std::copy(scratch.begin(), scratch.end(), row.begin());
        }

        /// Per-output-bin trigonometric interpolation: y[i] = x(t_i + dt_i).
        void resample_row(std::span<cdouble> row, const std::vector<double> &dt, double fs,
                          std::vector<cdouble> &spectrum)
        {
            const std::size_t n = row.size();
            spectrum.assign(row.begin(), row.end());
            fft::transform(spectrum, fft::Direction::Forward);
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                const double t = static_cast<double>(i) / fs + dt[i];
                cdouble acc{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k)
                    acc += spectrum[k] * std::polar(1.0, 2.0 * kPi * dft_frequency(k, n, fs) * t);
                row[i] = acc * inv_n;
            }
        }
    }

    double ImagingConfig::relative_speed_sq(const PlatformState &platform) const
    {
        const double u = vx_mps - platform.vp_mps;
        return u * u + vy_mps * vy_mps;
    }

    void ImagingConfig::validate(const PlatformState &platform) const
    {
        if (!std::isfinite(vx_mps))
            throw ConfigError("imaging.vx_mps", "must be finite");
        if (!std::isfinite(vy_mps))
            throw ConfigError("imaging.vy_mps", "must be finite");
        if (!std::isfinite(vr))
            throw ConfigError("imaging.vr", "must be finite");
        if (!(relative_speed_sq(platform) > 0.0))
            throw ConfigError("imaging.vx_mps", "assumed relative speed is zero");
    }

    std::map<std::string, std::string> ImagingConfig::echo() const
    {
        return {
            {"imaging.vx_mps", format_number(vx_mps)},
            {"imaging.vy_mps", format_number(vy_mps)},
            {"imaging.linear_term", include_linear_term ? "true" : "false"},
            {"imaging.vr", format_number(vr)},
            {"imaging.linear_channel", std::to_string(linear_channel)},
            {"imaging.rcmc_mode", rcmc_mode == RcmcMode::SceneCenter ? "scene_center" : "per_bin"},
        };
    }

    double range_migration(double lambda, double r0_ref, double v_sq, double f_hz)
    {
        if (!(v_sq > 0.0))
            throw InvalidArgument("range_migration: zero assumed relative speed");
        return lambda * lambda * r0_ref * f_hz * f_hz / (4.0 * v_sq);
    }

    DataCube rcmc(const DataCube &rd, const PlatformState &platform, const ImagingConfig &config)
    {
        require_domain(rd, Domain::RangeDoppler, "rcmc");
        const double v_sq = config.relative_speed_sq(platform);
        if (!(v_sq > 0.0))
            throw InvalidArgument("rcmc: zero assumed relative speed");

        DataCube out = rd;
        const SamplingGrid &grid = rd.grid();
        const double lambda = rd.radar().wavelength();
        const DopplerGrid dg = doppler_grid(rd);
        const double r_mid = 0.5 * kSpeedOfLight * grid.fast_time_mid();
        std::vector<cdouble> scratch;
        std::vector<double> dt(rd.fast());

        for (std::size_t c = 0; c < out.channels(); ++c)
            for (std::size_t p = 0; p < out.pulses(); ++p)
            {
                const double f = dg.frequency(p);
                if (f == 0.0)
                    continue;
                if (config.rcmc_mode == RcmcMode::SceneCenter)
                {
                    shift_row(out.pulse(c, p), range_migration(lambda, r_mid, v_sq, f) / kSpeedOfLight, grid.fs_hz,
                              scratch);
                }
                else
                {
                    for (std::size_t i = 0; i < rd.fast(); ++i)
                        dt[i] = range_migration(lambda, bin_range(grid, i), v_sq, f) / kSpeedOfLight;
                    resample_row(out.pulse(c, p), dt, grid.fs_hz, scratch);
                }
            }
        return out;
    }

    cdouble azimuth_filter(const RadarParams &params, const ArrayGeometry &geometry, const PlatformState &platform,
                           const ImagingConfig &config, double r0, double f_hz)
    {
        const double lambda = params.wavelength();
        const double v_sq = config.relative_speed_sq(platform);
        double phase = -kPi * lambda * r0 * f_hz * f_hz / (2.0 * v_sq);
        if (config.include_linear_term)
        {
            const double u = config.vx_mps - platform.vp_mps;
            const double lever = geometry.offset(config.linear_channel) - geometry.d_r_m;
            phase -= kPi * f_hz * (2.0 * config.vr + u * lever) / v_sq;
        }
        return std::polar(1.0, phase);
    }

    DataCube azimuth_compress(const DataCube &rd, const ArrayGeometry &geometry, const PlatformState &platform,
                              const ImagingConfig &config)
    {
        require_domain(rd, Domain::RangeDoppler, "azimuth_compress");
        config.validate(platform);
        DataCube out = rd;
        const SamplingGrid &grid = rd.grid();
        const DopplerGrid dg = doppler_grid(rd);
        std::vector<double> r0(rd.fast());
        for (std::size_t i = 0; i < rd.fast(); ++i)
            r0[i] = bin_range(grid, i);
        for (std::size_t p = 0; p < rd.pulses(); ++p)
        {
            const double f = dg.frequency(p);
            for (std::size_t i = 0; i < rd.fast(); ++i)
            {
                const cdouble h = azimuth_filter(rd.radar(), geometry, platform, config, r0[i], f);
                for (std::size_t c = 0; c < rd.channels(); ++c)
                    out.at(c, p, i) *= h;
            }
        }
        return out;
    }

    Image focus(const DataCube &cube, const ArrayGeometry &geometry, const PlatformState &platform,
                const ImagingConfig &config)
    {
        if (cube.channels() != 1)
            throw DimensionMismatch("focus expects a single-channel cube, got " + std::to_string(cube.channels()));
        require_domain(cube, Domain::RangeCompressed, "focus");
        config.validate(platform);
        DataCube rd = to_range_doppler(cube);
        rd = rcmc(rd, platform, config);
        rd = azimuth_compress(rd, geometry, platform, config);
        const DataCube focused = from_range_doppler(rd);
        Image img = image_from_cube(focused, 0, platform.vp_mps);
        img.config = config.echo();
        return img;
    }

    std::vector<ScanEntry> velocity_scan(const DataCube &cube, const ArrayGeometry &geometry,
                                         const PlatformState &platform, const ImagingConfig &base,
                                         const std::vector<double> &vy_list, const ScanContext &context)
    {
        if (vy_list.empty())
            throw InvalidArgument("velocity_scan: empty velocity list");
        if (!context.mask_for)
            throw InvalidArgument("velocity_scan: no mask builder");
        std::vector<ScanEntry> out;
        out.reserve(vy_list.size());
        for (double vy : vy_list)
        {
            ImagingConfig cfg = base;
            cfg.vy_mps = vy;
            ScanEntry e;
            e.vy_mps = vy;
            e.image = focus(cube, geometry, platform, cfg);
            const Image ref = focus(context.reference, geometry, platform, cfg);
            const RegionMask mask = context.mask_for(cfg, e.image);
            e.report = improvement_factor(ref, e.image, mask);
            e.report.config = cfg.echo();
            out.push_back(std::move(e));
        }
        return out;
    }
}
