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

#include "rdcc/scene.hpp"

#include <cmath>
#include <string>

#include "rdcc/errors.hpp"
#include "rdcc/random.hpp"

namespace rdcc
{
    namespace
    {
        constexpr std::uint64_t kJitterStream = 0x6A17'7E20ULL;

        void require(bool ok, const char *key, const char *what)
        {
            if (!ok)
                throw ConfigError(key, what);
        }

        bool finite(double x) { return std::isfinite(x); }
    }

    void RadarParams::validate() const
    {
        require(finite(f0_hz) && f0_hz > 0.0, "radar.f0_hz", "must be > 0");
        require(finite(bandwidth_hz) && bandwidth_hz > 0.0, "radar.bandwidth_hz", "must be > 0");
        require(finite(pulse_width_s) && pulse_width_s > 0.0, "radar.pulse_width_s", "must be > 0");
        require(finite(prf_hz) && prf_hz > 0.0, "radar.prf_hz", "must be > 0");
        require(finite(fs_hz) && fs_hz >= bandwidth_hz, "radar.fs_hz", "must be >= bandwidth");
        require(pulse_width_s * prf_hz < 1.0, "radar.pulse_width_s", "duty cycle Tp*PRF must be < 1");
    }

    double ArrayGeometry::offset(int n) const
    {
        if (n < 1 || n > n_rx)
            throw InvalidArgument("receiver index " + std::to_string(n) + " outside [1, " +
                                  std::to_string(n_rx) + "]");
        return indexing == Indexing::ZeroBased ? (n - 1) * d_m : n * d_m;
    }

    void ArrayGeometry::validate() const
    {
        require(n_rx >= 2, "array.n_rx", "need at least two receivers");
        // d = 0 is accepted: co-located receivers are the degenerate DPCA case.
        require(finite(d_m) && d_m >= 0.0, "array.d_m", "must be >= 0");
        require(finite(d_r_m) && d_r_m >= 0.0, "array.d_r_m", "must be >= 0");
    }

    void PlatformState::validate() const
    {
        require(finite(vp_mps) && vp_mps != 0.0, "platform.vp_mps", "must be non-zero");
        require(finite(height_m) && height_m >= 0.0, "platform.height_m", "must be >= 0");
        require(finite(x_start_m), "platform.x_start_m", "must be finite");
        require(finite(jitter_std_m) && jitter_std_m >= 0.0, "platform.jitter_std_m", "must be >= 0");
    }

    void WallModel::validate() const
    {
        require(finite(thickness_m) && thickness_m >= 0.0, "wall.thickness_m", "must be >= 0");
        require(finite(eps_r) && eps_r >= 1.0, "wall.eps_r", "must be >= 1");
    }

    void Scene::validate(bool require_targets) const
    {
        radar.validate();
        array.validate();
        platform.validate();
        wall.validate();
        require(finite(ta_s) && ta_s > 0.0, "scene.ta_s", "must be > 0");
        require(finite(eta_c_s), "scene.eta_c_s", "must be finite");
        require(n_pulses >= 2, "grid.n_pulses", "must be >= 2");
        require(!require_targets || !targets.empty(), "target", "scene has no targets");
        for (std::size_t i = 0; i < targets.size(); ++i)
        {
            const Target &t = targets[i];
            const std::string key = "target." + std::to_string(i + 1);
            if (!(finite(t.x0_m) && finite(t.y0_m) && finite(t.vx_mps) && finite(t.vy_mps) &&
                  finite(t.amplitude.real()) && finite(t.amplitude.imag())))
                throw ConfigError(key, "non-finite field");
            if (t.x0_m == 0.0 && t.y0_m == 0.0 && platform.height_m == 0.0)
                throw ConfigError(key, "target coincides with the array (R0 = 0)");
        }
    }

    double Scene::slow_time(std::size_t k) const
    {
        return (static_cast<double>(k) - static_cast<double>(n_pulses / 2)) * radar.pri();
    }

    double Scene::platform_center_x() const
    {
        return platform.x_start_m + platform.vp_mps * static_cast<double>(n_pulses / 2) * radar.pri();
    }

    double Scene::jitter_offset(std::size_t k) const
    {
        if (platform.jitter_std_m == 0.0)
            return 0.0;
        return platform.jitter_std_m * counter_normal_pair(platform.jitter_seed, kJitterStream, k).first;
    }

    double Scene::envelope_center(const Target &target, int n) const
    {
        // The beam is fixed to the platform: receiver n's phase centre trails the
        // first one by (d_n - d_1) / 2, which the relative azimuth motion covers
        // in (d_n - d_1) / (2 (vp - vx)).
        const double rel = platform.vp_mps - target.vx_mps;
        if (rel == 0.0)
            return eta_c_s;
        return eta_c_s + (array.offset(n) - array.offset(1)) / (2.0 * rel);
    }

    bool Scene::illuminated(const Target &target, int n, double eta) const
    {
        return std::abs(eta - envelope_center(target, n)) <= 0.5 * ta_s;
    }

    double wall_extra_path(const WallModel &wall)
    {
        return 2.0 * wall.thickness_m * (std::sqrt(wall.eps_r) - 1.0);
    }

    double range_history_exact(const Scene &scene, const Target &target, int n, double eta,
                               double platform_offset)
    {
        const double d_n = scene.array.offset(n);
        const double d_r = scene.array.d_r_m;
        const double h = scene.platform.height_m;
        // Target azimuth relative to the first receiver.
        const double x = target.x0_m - scene.platform_center_x() - platform_offset +
                         (target.vx_mps - scene.platform.vp_mps) * eta;
        const double y = target.y0_m + target.vy_mps * eta;
        const double tx = std::sqrt((x - d_r) * (x - d_r) + y * y + h * h);
        const double rx = std::sqrt((x + d_n) * (x + d_n) + y * y + h * h);
        const double wall = target.behind_wall ? wall_extra_path(scene.wall) : 0.0;
        return tx + rx + wall;
    }

    PhaseCoeffs expansion_coeffs(double x0, double y0, double h, double vx, double vy, double vp,
                                 double d_n, double d_r, double r_wall)
    {
        return expansion_coeffs_at(x0, y0, std::sqrt(x0 * x0 + y0 * y0 + h * h), vx, vy, vp, d_n, d_r, r_wall);
    }

    PhaseCoeffs expansion_coeffs_at(double x0, double y0, double r0, double vx, double vy, double vp, double d_n,
                                    double d_r, double r_wall)
    {
        PhaseCoeffs c;
        c.r0 = r0;
        c.vr = x0 * vx + y0 * vy;
        const double u = vx - vp;
        c.a0 = 2.0 * c.r0 + d_r * d_r / (2.0 * c.r0) + x0 / c.r0 * (d_n - d_r) + d_n * d_n / (2.0 * c.r0) +
               r_wall;
        c.a1 = (2.0 * (c.vr - x0 * vp) + u * (d_n - d_r)) / c.r0;
        c.a2 = (u * u + vy * vy) / c.r0;
        return c;
    }

    PhaseCoeffs phase_coeffs(const Scene &scene, const Target &target, int n, CoeffMode mode)
    {
        const double d_n = scene.array.offset(n);
        const double d_r = scene.array.d_r_m;
        const double vp = scene.platform.vp_mps;
        const double h = scene.platform.height_m;
        const double x0 = target.x0_m - scene.platform_center_x();
        const double r_wall = target.behind_wall ? wall_extra_path(scene.wall) : 0.0;

        if (x0 == 0.0 && target.y0_m == 0.0 && h == 0.0)
            throw InvalidArgument("R0 = 0: target coincides with the array");

        switch (mode)
        {
        case CoeffMode::General:
            return expansion_coeffs(x0, target.y0_m, h, target.vx_mps, target.vy_mps, vp, d_n, d_r, r_wall);
        case CoeffMode::Stationary:
            if (!target.is_stationary())
                throw InvalidArgument("stationary coefficients requested for a moving target");
            return expansion_coeffs(x0, target.y0_m, h, 0.0, 0.0, vp, d_n, d_r, r_wall);
        case CoeffMode::ZeroDoppler:
        {
            PhaseCoeffs c = expansion_coeffs(x0, target.y0_m, h, target.vx_mps, target.vy_mps, vp, d_n, d_r,
                                             r_wall);
            // Zero-Doppler form drops the squint terms.
            c.a0 = 2.0 * c.r0 + d_r * d_r / (2.0 * c.r0) + d_n * d_n / (2.0 * c.r0) + r_wall;
            c.a1 = (2.0 * c.vr + (target.vx_mps - vp) * (d_n - d_r)) / c.r0;
            return c;
        }
        }
        throw InvalidArgument("unknown coefficient mode");
    }

    double range_history_quadratic(const PhaseCoeffs &coeffs, double eta)
    {
        return coeffs.a0 + coeffs.a1 * eta + coeffs.a2 * eta * eta;
    }
}
