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

#include "rdcc/metrics.hpp"

#include <cmath>
#include <string>

#include "rdcc/errors.hpp"
#include "rdcc/imaging.hpp"

namespace rdcc
{
    namespace
    {
        long long wrap(long long k, long long n) { return ((k % n) + n) % n; }

        struct Means
        {
            double signal = 0.0;
            double clutter = 0.0;
        };

        Means region_means(const Image &image, const RegionMask &mask)
        {
            mask.validate_for(image);
            double ps = 0.0;
            double pc = 0.0;
            std::size_t ns = 0;
            std::size_t nc = 0;
            for (std::size_t i = 0; i < image.pixels.size(); ++i)
            {
                const double p = std::norm(image.pixels[i]);
                if (mask.labels[i] == PixelClass::Signal)
                {
                    ps += p;
                    ++ns;
                }
                else if (mask.labels[i] == PixelClass::Clutter)
                {
                    pc += p;
                    ++nc;
                }
            }
            return {ps / static_cast<double>(ns), pc / static_cast<double>(nc)};
        }
    }

    std::size_t RegionMask::count(PixelClass c) const
    {
        std::size_t n = 0;
        for (auto l : labels)
            n += l == c ? 1 : 0;
        return n;
    }

    void RegionMask::validate_for(const Image &img) const
    {
        if (img.n_range != n_range || img.n_azimuth != n_azimuth || labels.size() != n_range * n_azimuth)
            throw DimensionMismatch("region mask " + std::to_string(n_range) + "x" + std::to_string(n_azimuth) +
                                    " does not match image " + std::to_string(img.n_range) + "x" +
                                    std::to_string(img.n_azimuth));
        if (count(PixelClass::Signal) == 0)
            throw DegenerateInput("region mask has no signal pixels");
        if (count(PixelClass::Clutter) == 0)
            throw DegenerateInput("region mask has no clutter pixels");
    }

    ImageLocation expected_location(const Scene &scene, const Target &target, const ImageCalibration &cal,
                                    std::size_t n_range, std::size_t n_azimuth, const ImagingConfig &imaging)
    {
        const PhaseCoeffs c = phase_coeffs(scene, target, 1);
        if (!(c.a2 > 0.0))
            throw InvalidArgument("expected_location: target has zero relative speed");
        const double path = c.a0 - c.a1 * c.a1 / (4.0 * c.a2);
        const long long r = std::llround((path / kSpeedOfLight - cal.tau0_s) * cal.fs_hz);
        if (r < 0 || r >= static_cast<long long>(n_range))
            throw InvalidArgument("expected_location: range bin " + std::to_string(r) + " outside image");

        double shift = 0.0;
        if (imaging.include_linear_term)
        {
            const double u = imaging.vx_mps - scene.platform.vp_mps;
            const double lever = scene.array.offset(imaging.linear_channel) - scene.array.d_r_m;
            shift = (2.0 * imaging.vr + u * lever) / imaging.relative_speed_sq(scene.platform);
        }
        const double eta = -0.5 * (c.a1 / c.a2 - shift);
        const auto n = static_cast<long long>(n_azimuth);
        const long long a = std::llround(eta * cal.prf_hz) + n / 2;
        return {static_cast<std::size_t>(r), static_cast<std::size_t>(wrap(a, n))};
    }

    RegionMask region_from_truth(const Scene &scene, const ImageCalibration &cal, std::size_t n_range,
                                 std::size_t n_azimuth, const ImagingConfig &imaging, std::size_t box_half_width,
                                 std::size_t guard)
    {
        RegionMask m;
        m.n_range = n_range;
        m.n_azimuth = n_azimuth;
        m.labels.assign(n_range * n_azimuth, PixelClass::Clutter);
        const auto nr = static_cast<long long>(n_range);
        const auto na = static_cast<long long>(n_azimuth);
        const auto box = static_cast<long long>(box_half_width);
        const auto outer = box + static_cast<long long>(guard);
        if (2 * outer + 1 > na)
            throw InvalidArgument("region_from_truth: box and guard wider than the azimuth axis");

        bool any = false;
        for (const Target &t : scene.targets)
        {
            if (t.is_stationary())
                continue;
            any = true;
            const ImageLocation loc = expected_location(scene, t, cal, n_range, n_azimuth, imaging);
            const auto r0 = static_cast<long long>(loc.range_bin);
            const auto a0 = static_cast<long long>(loc.azimuth_bin);
            if (r0 - box < 0 || r0 + box >= nr)
                throw InvalidArgument("region_from_truth: signal box leaves the range axis");
            for (long long dr = -outer; dr <= outer; ++dr)
            {
                const long long r = r0 + dr;
                if (r < 0 || r >= nr)
                    continue;
                for (long long da = -outer; da <= outer; ++da)
                {
                    const auto idx = static_cast<std::size_t>(r * na + wrap(a0 + da, na));
                    const bool inner = std::abs(dr) <= box && std::abs(da) <= box;
                    if (inner)
                        m.labels[idx] = PixelClass::Signal;
                    else if (m.labels[idx] == PixelClass::Clutter)
                        m.labels[idx] = PixelClass::Guard;
                }
            }
        }
        if (!any)
            throw InvalidArgument("region_from_truth: scene has no moving target");
        return m;
    }

    double scnr(const Image &image, const RegionMask &mask)
    {
        const Means mu = region_means(image, mask);
        if (mu.clutter == 0.0)
            throw DegenerateInput("SCNR undefined: clutter power is zero");
        return 10.0 * std::log10(mu.signal / mu.clutter);
    }

    IFReport improvement_factor(const Image &input, const Image &output, const RegionMask &mask)
    {
        if (input.n_range != output.n_range || input.n_azimuth != output.n_azimuth)
            throw DimensionMismatch("improvement_factor: input and output images differ in size");
        if (!(input.calibration == output.calibration))
            throw DimensionMismatch("improvement_factor: input and output calibrations differ");
        IFReport rep;
        rep.method = output.method;
        rep.config = output.config;
        rep.signal_pixels = mask.count(PixelClass::Signal);
        rep.clutter_pixels = mask.count(PixelClass::Clutter);
        rep.guard_pixels = mask.count(PixelClass::Guard);
        rep.scnr_in_db = scnr(input, mask);
        const Means out = region_means(output, mask);
        if (out.clutter == 0.0)
        {
            rep.clutter_free = true;
            rep.scnr_out_db = std::numeric_limits<double>::infinity();
            rep.if_db = std::numeric_limits<double>::infinity();
            return rep;
        }
        rep.scnr_out_db = 10.0 * std::log10(out.signal / out.clutter);
        rep.if_db = rep.scnr_out_db - rep.scnr_in_db;
        return rep;
    }

    std::size_t GateRegion::count() const
    {
        std::size_t n = 0;
        for (auto g : gates)
            n += g ? 1 : 0;
        return n;
    }

    GateRegion gates_from_truth(const Scene &scene, const SamplingGrid &grid, PhaseModel model, TargetSelect which,
                                std::size_t margin, std::size_t channel)
    {
        GateRegion g;
        g.channel = channel;
        g.gates.assign(grid.n_fast, 0);
        const int n = static_cast<int>(channel) + 1;
        const auto nf = static_cast<long long>(grid.n_fast);
        const auto m = static_cast<long long>(margin);
        for (const Target &t : scene.targets)
        {
            const bool moving = !t.is_stationary();
            if ((which == TargetSelect::Stationary && moving) || (which == TargetSelect::Moving && !moving))
                continue;
            for (std::size_t k = 0; k < grid.n_pulses; ++k)
            {
                if (!scene.illuminated(t, n, scene.slow_time(k)))
                    continue;
                const double tau = path_length(scene, t, n, k, model) / kSpeedOfLight;
                const long long b = std::llround((tau - grid.tau0_s) * grid.fs_hz);
                for (long long i = std::max(0LL, b - m); i <= std::min(nf - 1, b + m); ++i)
                    g.gates[static_cast<std::size_t>(i)] = 1;
            }
        }
        return g;
    }

    double residual_db(const DataCube &before, const DataCube &after, const GateRegion &region)
    {
        if (before.pulses() != after.pulses() || before.fast() != after.fast())
            throw DimensionMismatch("residual_db: cubes differ in pulses or fast-time length");
        if (before.domain() != after.domain())
            throw DomainMismatch("residual_db: cubes are in different domains");
        if (region.channel >= before.channels() || region.channel >= after.channels())
            throw DimensionMismatch("residual_db: gate channel out of range");
        if (region.gates.size() != before.fast())
            throw DimensionMismatch("residual_db: gate mask length differs from fast-time length");
        double eb = 0.0;
        double ea = 0.0;
        for (std::size_t p = 0; p < before.pulses(); ++p)
            for (std::size_t f = 0; f < before.fast(); ++f)
            {
                if (!region.gates[f])
                    continue;
                eb += std::norm(before.at(region.channel, p, f));
                ea += std::norm(after.at(region.channel, p, f));
            }
        if (eb == 0.0)
            throw DegenerateInput("residual_db: reference energy in the region is zero");
        if (ea == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(ea / eb);
    }
}
