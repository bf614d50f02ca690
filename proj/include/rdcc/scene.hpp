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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace rdcc
{
    inline constexpr double kSpeedOfLight = 299792458.0;
    inline constexpr double kPi = std::numbers::pi;

    using cdouble = std::complex<double>;

    /// LFM pulse radar parameters. All members in SI units.
    struct RadarParams
    {
        double f0_hz = 0.0;
        double bandwidth_hz = 0.0;
        double pulse_width_s = 0.0;
        double prf_hz = 0.0;
        double fs_hz = 0.0;

        double wavelength() const { return kSpeedOfLight / f0_hz; }
        double chirp_rate() const { return bandwidth_hz / pulse_width_s; }
        double pri() const { return 1.0 / prf_hz; }

        /// Throws ConfigError on f0, B, Tp, PRF <= 0, fs < B or Tp*PRF >= 1.
        void validate() const;
    };

    /// Receiver offset convention: d_n = (n-1)*d or d_n = n*d.
    enum class Indexing
    {
        ZeroBased,
        OneBased,
    };

    struct ArrayGeometry
    {
        int n_rx = 2;
        double d_m = 0.0;   ///< adjacent receiver spacing
        double d_r_m = 0.0; ///< transmitter to first receiver
        Indexing indexing = Indexing::ZeroBased;

        /// Distance d_n of receiver n (1-based) from the first receiver.
        double offset(int n) const;
        void validate() const;
    };

    struct PlatformState
    {
        double vp_mps = 0.0;
        double height_m = 0.0;
        double x_start_m = 0.0; ///< azimuth position at the first pulse
        double jitter_std_m = 0.0;
        std::uint64_t jitter_seed = 0;

        void validate() const;
    };

    struct Target
    {
        double x0_m = 0.0;
        double y0_m = 0.0;
        double vx_mps = 0.0;
        double vy_mps = 0.0;
        cdouble amplitude{1.0, 0.0};
        bool behind_wall = false;

        bool is_stationary() const { return vx_mps == 0.0 && vy_mps == 0.0; }
    };

    struct WallModel
    {
        double thickness_m = 0.0;
        double eps_r = 1.0;

        void validate() const;
    };

    /// Quadratic slow-time range coefficients R(eta) ~ a0 + a1*eta + a2*eta^2
    /// for one (target, channel) pair, with the cached R0 and v_r they derive from.
    struct PhaseCoeffs
    {
        double a0 = 0.0; // m
        double a1 = 0.0; // m/s
        double a2 = 0.0; // m/s^2
        double r0 = 0.0; // m
        double vr = 0.0; // m^2/s
    };

    enum class CoeffMode
    {
        General,
        Stationary,
        ZeroDoppler,
    };

    struct Scene
    {
        RadarParams radar;
        ArrayGeometry array;
        PlatformState platform;
        WallModel wall;
        std::vector<Target> targets;
        double eta_c_s = 0.0;
        double ta_s = 0.0;
        std::size_t n_pulses = 0;

        void validate(bool require_targets = true) const;

        /// Slow time of pulse k; eta = 0 falls on pulse floor(n_pulses/2).
        double slow_time(std::size_t k) const;

        /// Platform azimuth position at eta = 0 (before jitter).
        double platform_center_x() const;

        /// Per-pulse platform position perturbation (0 when jitter is off).
        double jitter_offset(std::size_t k) const;

        /// Azimuth envelope centre of `target` as seen by receiver n.
        double envelope_center(const Target &target, int n) const;

        /// Rectangular azimuth envelope, 1 inside |eta - centre| <= Ta/2.
        bool illuminated(const Target &target, int n, double eta) const;
    };

    /// Two-way extra path through the wall, 2 d_w (sqrt(eps_r) - 1).
    double wall_extra_path(const WallModel &wall);

    /// Exact two-way path length transmitter -> target -> receiver n at slow time eta.
    /// `platform_offset` is an additional azimuth displacement of the whole array (jitter).
    double range_history_exact(const Scene &scene, const Target &target, int n, double eta,
                               double platform_offset = 0.0);

    /// Quadratic-expansion coefficients for the target relative to the aperture centre.
    PhaseCoeffs phase_coeffs(const Scene &scene, const Target &target, int n,
                             CoeffMode mode = CoeffMode::General);

    /// Coefficients from raw geometry: relative azimuth x0, range y0, altitude h,
    /// target velocity (vx, vy), platform velocity vp, receiver offset d_n,
    /// transmitter offset d_r and wall path r_wall.
    PhaseCoeffs expansion_coeffs(double x0, double y0, double h, double vx, double vy, double vp,
                                 double d_n, double d_r, double r_wall);

    /// Same expansion with R0 supplied instead of derived from (x0, y0, h).
    PhaseCoeffs expansion_coeffs_at(double x0, double y0, double r0, double vx, double vy, double vp, double d_n,
                                    double d_r, double r_wall);

    double range_history_quadratic(const PhaseCoeffs &coeffs, double eta);
}
