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
#include <vector>

#include "rdcc/cube.hpp"
#include "rdcc/scene.hpp"

namespace rdcc
{
    /// Doppler axis of a center-shifted slow-time transform:
    /// f_k = (k - floor(N/2)) * PRF / N.
    struct DopplerGrid
    {
        std::size_t n_pulses = 0;
        double prf_hz = 0.0;
        bool center_shifted = true;

        double frequency(std::size_t k) const;
        /// Bin whose frequency is nearest to f after folding into [-PRF/2, PRF/2).
        std::size_t bin_of(double f_hz) const;
    };

    DopplerGrid doppler_grid(const DataCube &cube);

    enum class PhaseDiffMode
    {
        FirstPrinciples, ///< difference of the stationary-phase spectra of channels n and n-1
        ClosedForm,      ///< closed form derived with d_n = n d
    };

    enum class BalanceMode
    {
        UnitEnergy, ///< divide each pulse by sqrt(sum |s|^2)
        Literal,    ///< divide each pulse by sum |s|^2
    };

    struct SuppressionConfig
    {
        double kappa = 0.5;
        double eps = 1e-6; ///< denominator floor, relative to the balanced cube RMS
        PhaseDiffMode phase_diff_mode = PhaseDiffMode::FirstPrinciples;
        BalanceMode balance_mode = BalanceMode::UnitEnergy;

        void validate() const;
    };

    /// Per-(channel, pulse) energy normalisation; zero-energy pulses pass through.
    DataCube channel_balance(const DataCube &cube, BalanceMode mode);

    /// Slow-time transform per (channel, fast bin), referenced to eta = 0 and
    /// center-shifted to the DopplerGrid ordering.
    DataCube to_range_doppler(const DataCube &cube);
    DataCube from_range_doppler(const DataCube &cube);

    /// Doppler at which a scatterer with slow-time phase -(2 pi / lambda)(a1 eta + a2 eta^2)
    /// sits at eta = 0 under the forward kernel exp(-j 2 pi f eta).
    inline double predict_doppler(const PhaseCoeffs &c, double lambda) { return -c.a1 / lambda; }

    /// Range-Doppler phase of one channel, stationary-phase form.
    double rd_phase(const PhaseCoeffs &c, double lambda, double f_hz);

    /// Phase of channel n minus channel n-1 for a stationary scatterer at range r0.
    double stationary_phase_diff(const RadarParams &params, const ArrayGeometry &geometry,
                                 const PlatformState &platform, double r0, double f_hz, int n,
                                 PhaseDiffMode mode = PhaseDiffMode::FirstPrinciples);

    /// Same for a moving target. Target x0 is relative to the aperture centre.
    /// ClosedForm uses the range-direction form when vx = 0.
    double moving_phase_diff(const RadarParams &params, const ArrayGeometry &geometry,
                             const PlatformState &platform, const Target &target, double r0, double f_hz, int n,
                             PhaseDiffMode mode = PhaseDiffMode::FirstPrinciples);

    /// General closed form without the vx = 0 specialisation.
    double moving_phase_diff_general(const RadarParams &params, const ArrayGeometry &geometry,
                                     const PlatformState &platform, const Target &target, double r0,
                                     double f_hz, int n);

    /// Channel n-1 minus phase-compensated channel n in the range-Doppler domain,
    /// with R0 = c tau / 2 per fast-time bin. Output has N-1 channels.
    DataCube compensate_cancel(const DataCube &balanced_rd, const ArrayGeometry &geometry,
                               const PlatformState &platform, const SuppressionConfig &config);

    struct RatioFilterResult
    {
        std::vector<std::uint8_t> mask; ///< same layout as `filtered`, values 0 or 1
        DataCube filtered;
    };

    /// Keep pixels with |cs| / max(|cb|, eps * rms(cb)) >= kappa. Channel j of
    /// `cancelled` is compared with channel j of `balanced`.
    RatioFilterResult ratio_filter(const DataCube &cancelled, const DataCube &balanced,
                                   const SuppressionConfig &config);

    struct DpcaResult
    {
        DataCube cube;            ///< single channel, n_pulses - shift pulses
        std::size_t shift = 0;    ///< round(k*)
        double k_star = 0.0;      ///< d / (2 v_p PRI)
        std::size_t first_pulse = 0; ///< channel-1 pulse index of output pulse 0
    };

    /// Displaced-phase-centre cancellation with nearest-integer pulse alignment.
    DpcaResult dpca_baseline(const DataCube &balanced, const ArrayGeometry &geometry, const PlatformState &platform);
}
