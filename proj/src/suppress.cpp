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

#include "rdcc/suppress.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdcc/errors.hpp"
#include "rdcc/fft.hpp"

namespace rdcc
{
    double DopplerGrid::frequency(std::size_t k) const
    {
        const double step = prf_hz / static_cast<double>(n_pulses);
        if (!center_shifted)
        {
            const auto kk = static_cast<double>(k);
            return (k < (n_pulses + 1) / 2 ? kk : kk - static_cast<double>(n_pulses)) * step;
        }
        return (static_cast<double>(k) - static_cast<double>(n_pulses / 2)) * step;
    }

    std::size_t DopplerGrid::bin_of(double f_hz) const
    {
        const auto n = static_cast<long long>(n_pulses);
        const double step = prf_hz / static_cast<double>(n_pulses);
        long long k = std::llround(f_hz / step);
        k = ((k % n) + n) % n; // fold to [0, N)
        // Frequency index k sits at centered position (k + N/2) mod N.
        return static_cast<std::size_t>(center_shifted ? (k + n / 2) % n : k);
    }

    DopplerGrid doppler_grid(const DataCube &cube)
    {
        return DopplerGrid{cube.pulses(), cube.grid().prf_hz, true};
    }

    void SuppressionConfig::validate() const
    {
        if (!(kappa >= 0.0) || !std::isfinite(kappa))
            throw ConfigError("suppress.kappa", "must be >= 0");
        if (!(eps > 0.0) || !std::isfinite(eps))
            throw ConfigError("suppress.eps", "must be > 0");
    }

    DataCube channel_balance(const DataCube &cube, BalanceMode mode)
    {
        require_domain(cube, Domain::RangeCompressed, "channel_balance");
        DataCube out = cube;
        for (std::size_t c = 0; c < out.channels(); ++c)
        {
            for (std::size_t p = 0; p < out.pulses(); ++p)
            {
                auto row = out.pulse(c, p);
                double e = 0.0;
                for (const auto &z : row)
                    e += std::norm(z);
                if (e == 0.0)
                    continue;
                const double scale = mode == BalanceMode::UnitEnergy ? 1.0 / std::sqrt(e) : 1.0 / e;
                for (auto &z : row)
                    z *= scale;
            }
        }
        return out;
    }

    namespace
    {
        void slow_time_transform(DataCube &cube, fft::Direction dir)
        {
            const std::size_t np = cube.pulses();
            const std::size_t nf = cube.fast();
            for (std::size_t c = 0; c < cube.channels(); ++c)
            {
                auto block = cube.channel(c);
                // Whole pulse rows move together, so rotate by row multiples.
                std::rotate(block.begin(), block.begin() + static_cast<std::ptrdiff_t>((np / 2) * nf), block.end());
                fft::transform_many(block.data(), np, nf, nf, 1, dir);
                std::rotate(block.begin(), block.begin() + static_cast<std::ptrdiff_t>((np - np / 2) * nf),
                            block.end());
            }
        }

        double bin_range(const SamplingGrid &grid, std::size_t i)
        {
            // Bins at or before tau = 0 carry no scatterers; keep R0 positive there.
            return std::max(0.5 * kSpeedOfLight * grid.fast_time(i), 0.5 * kSpeedOfLight / grid.fs_hz);
        }

        double coeff_phase_diff(const PhaseCoeffs &cn, const PhaseCoeffs &cm, double lambda, double f_hz)
        {
            if (!(cn.a2 > 0.0))
                throw InvalidArgument("zero relative speed: quadratic coefficient vanishes");
            // a2 does not depend on the receiver, so the f^2 terms cancel.
            const double da0 = cn.a0 - cm.a0;
            const double da1 = cn.a1 - cm.a1;
            const double constant = -da0 + da1 * (cn.a1 + cm.a1) / (4.0 * cn.a2);
            return 2.0 * kPi / lambda * constant + kPi * f_hz * da1 / cn.a2;
        }

        void check_channel(const ArrayGeometry &geometry, int n)
        {
            if (n < 2 || n > geometry.n_rx)
                throw InvalidArgument("phase difference needs n in [2, " + std::to_string(geometry.n_rx) + "], got " +
                                      std::to_string(n));
        }
    }

    DataCube to_range_doppler(const DataCube &cube)
    {
        require_domain(cube, Domain::RangeCompressed, "to_range_doppler");
        DataCube out = cube;
        slow_time_transform(out, fft::Direction::Forward);
        out.set_domain(Domain::RangeDoppler);
        return out;
    }

    DataCube from_range_doppler(const DataCube &cube)
    {
        require_domain(cube, Domain::RangeDoppler, "from_range_doppler");
        DataCube out = cube;
        slow_time_transform(out, fft::Direction::Inverse);
        out.set_domain(Domain::RangeCompressed);
        return out;
    }

    double rd_phase(const PhaseCoeffs &c, double lambda, double f_hz)
    {
        return 2.0 * kPi / lambda *
               ((-c.a0 + c.a1 * c.a1 / (4.0 * c.a2)) + lambda * c.a1 / (2.0 * c.a2) * f_hz +
                lambda * lambda / (4.0 * c.a2) * f_hz * f_hz);
    }

    double stationary_phase_diff(const RadarParams &params, const ArrayGeometry &geometry,
                                 const PlatformState &platform, double r0, double f_hz, int n, PhaseDiffMode mode)
    {
        check_channel(geometry, n);
        if (!(r0 > 0.0))
            throw InvalidArgument("stationary_phase_diff: R0 must be > 0");
        const double lambda = params.wavelength();
        const double vp = platform.vp_mps;
        const double d = geometry.d_m;
        const double dr = geometry.d_r_m;
        if (mode == PhaseDiffMode::ClosedForm)
        {
            const double nn = static_cast<double>(n);
            return 2.0 * kPi / lambda * ((-(2.0 * nn - 1.0) * d * d - 2.0 * dr * d) / (4.0 * r0)) +
                   kPi * f_hz * (-d / vp);
        }
        // The broadside offset x0 cancels between channels; evaluate at x0 = 0.
        const PhaseCoeffs cn = expansion_coeffs_at(0.0, r0, r0, 0.0, 0.0, vp, geometry.offset(n), dr, 0.0);
        const PhaseCoeffs cm = expansion_coeffs_at(0.0, r0, r0, 0.0, 0.0, vp, geometry.offset(n - 1), dr, 0.0);
        return coeff_phase_diff(cn, cm, lambda, f_hz);
    }

    double moving_phase_diff_general(const RadarParams &params, const ArrayGeometry &geometry,
                                     const PlatformState &platform, const Target &target, double r0,
                                     double f_hz, int n)
    {
        check_channel(geometry, n);
        const double k = 2.0 * kPi / params.wavelength();
        const double d = geometry.d_m;
        const double dr = geometry.d_r_m;
        const double u = target.vx_mps - platform.vp_mps;
        const double vy = target.vy_mps;
        const double v2 = u * u + vy * vy;
        const double nn = static_cast<double>(n);
        const double t1 = k * u * u * (-(2.0 * nn - 1.0) * d * d - 2.0 * dr * d) / (4.0 * v2 * r0);
        const double t2 =
            k * d * vy * (4.0 * u * target.y0_m - (4.0 * nn - 2.0) * d * vy - 4.0 * target.x0_m * vy) / (4.0 * v2 * r0);
        return t1 + t2 + kPi * f_hz * u * d / v2;
    }

    double moving_phase_diff(const RadarParams &params, const ArrayGeometry &geometry,
                             const PlatformState &platform, const Target &target, double r0, double f_hz, int n,
                             PhaseDiffMode mode)
    {
        check_channel(geometry, n);
        if (!(r0 > 0.0))
            throw InvalidArgument("moving_phase_diff: R0 must be > 0");
        if (mode == PhaseDiffMode::FirstPrinciples)
        {
            const double vp = platform.vp_mps;
            const double dr = geometry.d_r_m;
            const PhaseCoeffs cn = expansion_coeffs_at(target.x0_m, target.y0_m, r0, target.vx_mps, target.vy_mps,
                                                       vp, geometry.offset(n), dr, 0.0);
            const PhaseCoeffs cm = expansion_coeffs_at(target.x0_m, target.y0_m, r0, target.vx_mps, target.vy_mps,
                                                       vp, geometry.offset(n - 1), dr, 0.0);
            return coeff_phase_diff(cn, cm, params.wavelength(), f_hz);
        }
        if (target.vx_mps != 0.0)
            return moving_phase_diff_general(params, geometry, platform, target, r0, f_hz, n);

        // Range-direction motion.
        const double k = 2.0 * kPi / params.wavelength();
        const double d = geometry.d_m;
        const double dr = geometry.d_r_m;
        const double vp = platform.vp_mps;
        const double vy = target.vy_mps;
        const double v2 = vp * vp + vy * vy;
        const double nn = static_cast<double>(n);
        const double t1 = k * vp * vp * (-(2.0 * nn - 1.0) * d * d - 2.0 * dr * d) / (4.0 * v2 * r0);
        const double t2 = k * (vy * vy * ((4.0 * nn - 2.0) * d * d + 4.0 * target.x0_m * d) +
                               4.0 * d * target.y0_m * vy * vp) /
                          (4.0 * v2 * r0);
        return t1 - t2 + kPi * f_hz * (-vp * d) / v2;
    }

    DataCube compensate_cancel(const DataCube &balanced_rd, const ArrayGeometry &geometry,
                               const PlatformState &platform, const SuppressionConfig &config)
    {
        require_domain(balanced_rd, Domain::RangeDoppler, "compensate_cancel");
        if (balanced_rd.channels() < 2)
            throw InvalidArgument("compensate_cancel: need at least 2 channels");
        if (static_cast<int>(balanced_rd.channels()) != geometry.n_rx)
            throw DimensionMismatch("compensate_cancel: cube channels differ from receiver count");

        const DopplerGrid dg = doppler_grid(balanced_rd);
        const SamplingGrid &grid = balanced_rd.grid();
        DataCube out = balanced_rd.zeros_like(balanced_rd.channels() - 1);
        for (std::size_t c = 0; c + 1 < balanced_rd.channels(); ++c)
        {
            const int n = static_cast<int>(c) + 2;
            for (std::size_t i = 0; i < grid.n_fast; ++i)
            {
                const double r0 = bin_range(grid, i);
                for (std::size_t k = 0; k < grid.n_pulses; ++k)
                {
                    const double dphi = stationary_phase_diff(balanced_rd.radar(), geometry, platform, r0,
                                                              dg.frequency(k), n, config.phase_diff_mode);
                    out.at(c, k, i) =
                        balanced_rd.at(c, k, i) - balanced_rd.at(c + 1, k, i) * std::polar(1.0, -dphi);
                }
            }
        }
        return out;
    }

    RatioFilterResult ratio_filter(const DataCube &cancelled, const DataCube &balanced,
                                   const SuppressionConfig &config)
    {
        config.validate();
        require_domain(cancelled, Domain::RangeCompressed, "ratio_filter");
        require_domain(balanced, Domain::RangeCompressed, "ratio_filter");
        if (cancelled.channels() > balanced.channels() || cancelled.pulses() != balanced.pulses() ||
            cancelled.fast() != balanced.fast())
            throw DimensionMismatch("ratio_filter: cancelled and balanced cubes differ in shape");

        RatioFilterResult res{std::vector<std::uint8_t>(cancelled.size(), 0), cancelled};
        const std::size_t per_channel = cancelled.pulses() * cancelled.fast();
        for (std::size_t c = 0; c < cancelled.channels(); ++c)
        {
            const auto cs = cancelled.channel(c);
            const auto cb = balanced.channel(c);
            double power = 0.0;
            for (const auto &z : cb)
                power += std::norm(z);
            const double floor = config.eps * std::sqrt(power / static_cast<double>(cb.size()));
            auto out = res.filtered.channel(c);
            for (std::size_t j = 0; j < per_channel; ++j)
            {
                const double num = std::abs(cs[j]);
                const double den = std::max(std::abs(cb[j]), floor);
                bool keep;
                if (den > 0.0)
                    keep = num / den >= config.kappa;
                else
                    keep = num > 0.0 || config.kappa == 0.0;
                res.mask[c * per_channel + j] = keep ? 1 : 0;
                if (!keep)
                    out[j] = cdouble{};
            }
        }
        return res;
    }

    DpcaResult dpca_baseline(const DataCube &balanced, const ArrayGeometry &geometry, const PlatformState &platform)
    {
        require_domain(balanced, Domain::RangeCompressed, "dpca_baseline");
        if (balanced.channels() != 2)
            throw InvalidArgument("dpca_baseline: needs exactly 2 channels");
        if (platform.vp_mps == 0.0)
            throw InvalidArgument("dpca_baseline: platform velocity is zero");

        DpcaResult res;
        const double pri = 1.0 / balanced.grid().prf_hz;
        const double spacing = geometry.offset(2) - geometry.offset(1);
        res.k_star = spacing / (2.0 * std::abs(platform.vp_mps) * pri);
        res.shift = static_cast<std::size_t>(std::llround(res.k_star));
        const std::size_t np = balanced.pulses();
        if (res.shift >= np)
            throw InvalidArgument("dpca_baseline: alignment shift " + std::to_string(res.shift) +
                                  " pulses leaves no overlap");

        SamplingGrid grid = balanced.grid();
        grid.n_pulses = np - res.shift;
        res.cube = DataCube(1, balanced.radar(), grid, Domain::RangeCompressed);
        // For vp > 0 the second receiver trails: it reaches channel 1's phase
        // centre `shift` pulses later.
        const bool trailing = platform.vp_mps > 0.0;
        res.first_pulse = trailing ? 0 : res.shift;
        for (std::size_t m = 0; m < grid.n_pulses; ++m)
        {
            const std::size_t p1 = trailing ? m : m + res.shift;
            const std::size_t p2 = trailing ? m + res.shift : m;
            const auto a = balanced.pulse(0, p1);
            const auto b = balanced.pulse(1, p2);
            auto o = res.cube.pulse(0, m);
            for (std::size_t i = 0; i < o.size(); ++i)
                o[i] = a[i] - b[i];
        }
        return res;
    }
}
