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


#include "support.hpp"

#include "rdcc/echo.hpp"
#include "rdcc/errors.hpp"
#include "rdcc/imaging.hpp"
#include "rdcc/metrics.hpp"
#include "rdcc/suppress.hpp"

using namespace rdcc;
using namespace rdcc::testing;
using Catch::Approx;

namespace
{
    // Broadside mover whose slow-time phase sweeps exactly one PRF over the
    // record, a2 = lambda / (2 N PRI^2), with the minimum delay on bin 40.
    struct FullBand
    {
        Scene scene;
        DataCube cube; // channel 1, range compressed
        ImagingConfig imaging;
        std::size_t bin = 40;
    };

    FullBand full_band(std::size_t n_pulses)
    {
        FullBand fb;
        Scene &s = fb.scene;
        s = small_scene(n_pulses);
        s.array.d_r_m = 0.0;
        const double r0 = 13.0;
        const double pri = s.radar.pri();
        const double a2 = s.radar.wavelength() / (2.0 * static_cast<double>(n_pulses) * pri * pri);
        s.targets = {point(0.0, r0, s.platform.vp_mps - std::sqrt(a2 * r0), 0.0)};
        const double td = 2.0 * r0 / kSpeedOfLight;
        const SamplingGrid g = make_grid(s, Domain::RangeCompressed, PhaseModel::Quadratic,
                                         {td - static_cast<double>(fb.bin) / s.radar.fs_hz, 80});
        fb.cube = synthesize_compressed(s, g, PhaseModel::Quadratic).extract_channel(0);
        fb.imaging.vx_mps = s.targets[0].vx_mps;
        fb.imaging.rcmc_mode = RcmcMode::PerBin;
        return fb;
    }

    double band_fraction(const DataCube &rd, std::size_t bin)
    {
        double in = 0.0, tot = 0.0;
        for (std::size_t p = 0; p < rd.pulses(); ++p)
            for (std::size_t i = 0; i < rd.fast(); ++i)
            {
                const double e = std::norm(rd.at(0, p, i));
                tot += e;
                if (i + 1 >= bin && i <= bin + 1)
                    in += e;
            }
        return in / tot;
    }

    // Naive slow-time DFT referenced to eta = 0, kernel exp(-j 2 pi f eta).
    std::vector<cdouble> naive_doppler(const std::vector<cdouble> &x, double prf, bool inverse)
    {
        const std::size_t n = x.size();
        const double half = static_cast<double>(n / 2);
        std::vector<cdouble> y(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t m = 0; m < n; ++m)
            {
                const double f = (static_cast<double>(inverse ? m : k) - half) * prf / static_cast<double>(n);
                const double eta = (static_cast<double>(inverse ? k : m) - half) / prf;
                y[k] += x[m] * std::polar(1.0, (inverse ? 2.0 : -2.0) * kPi * f * eta);
            }
        if (inverse)
            for (auto &v : y)
                v /= static_cast<double>(n);
        return y;
    }
}

TEST_CASE("range migration", "[imaging]")
{
    CHECK(range_migration(0.111034, 10.0, 10.0, 50.0) == Approx(7.7053432225).epsilon(1e-12));
    CHECK(range_migration(0.111034, 10.0, 10.0, 0.0) == 0.0);
    CHECK_THROWS_AS(range_migration(0.1, 10.0, 0.0, 5.0), InvalidArgument);
}

TEST_CASE("RCMC", "[imaging]")
{
    Scene s = small_scene(32);
    s.targets = {point(0.5, 6.0), point(-0.4, 7.0, 0.5, 1.0)};
    const SamplingGrid g = make_grid(s, Domain::RangeCompressed, PhaseModel::Quadratic);
    const DataCube rd = to_range_doppler(synthesize_compressed(s, g, PhaseModel::Quadratic));
    ImagingConfig ic;
    ic.vy_mps = 1.0;
    for (RcmcMode m : {RcmcMode::SceneCenter, RcmcMode::PerBin})
    {
        ic.rcmc_mode = m;
        const DataCube out = rcmc(rd, s.platform, ic);
        CHECK(out.domain() == Domain::RangeDoppler);
        const std::size_t zero = rd.pulses() / 2;
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t i = 0; i < rd.fast(); ++i)
                REQUIRE(out.at(c, zero, i) == rd.at(c, zero, i));
    }

    SECTION("scene-centre mode is a pure fast-time shift")
    {
        ic.rcmc_mode = RcmcMode::SceneCenter;
        const DataCube out = rcmc(rd, s.platform, ic);
        for (std::size_t p = 0; p < rd.pulses(); ++p)
        {
            double a = 0.0, b = 0.0;
            for (std::size_t i = 0; i < rd.fast(); ++i)
            {
                a += std::norm(rd.at(0, p, i));
                b += std::norm(out.at(0, p, i));
            }
            CHECK(b == Approx(a).epsilon(1e-12));
        }
    }

    SECTION("an integer-bin migration moves the row by whole bins")
    {
        // Pick the assumed speed so that row p = 0 migrates by exactly 3 bins.
        SamplingGrid g2{g.tau0_s, g.fs_hz, 64, 32, g.prf_hz};
        DataCube d(1, s.radar, g2, Domain::RangeDoppler);
        for (std::size_t i = 0; i < 64; ++i)
            d.at(0, 0, i) = std::polar(1.0, 2.0 * kPi * 5.0 * static_cast<double>(i) / 64.0) +
                            0.5 * std::polar(1.0, -2.0 * kPi * 11.0 * static_cast<double>(i) / 64.0);
        const double f = doppler_grid(d).frequency(0);
        const double lambda = s.radar.wavelength();
        const double r_mid = 0.5 * kSpeedOfLight * g2.fast_time_mid();
        const double path = 3.0 * kSpeedOfLight / g2.fs_hz;
        ImagingConfig c2;
        c2.vx_mps = s.platform.vp_mps;
        c2.vy_mps = std::sqrt(lambda * lambda * r_mid * f * f / (4.0 * path));
        const DataCube o = rcmc(d, s.platform, c2);
        for (std::size_t i = 0; i < 64; ++i)
            REQUIRE(std::abs(o.at(0, 0, i) - d.at(0, 0, (i + 3) % 64)) < 1e-9);
    }

    SECTION("errors")
    {
        ImagingConfig still;
        still.vx_mps = s.platform.vp_mps;
        CHECK_THROWS_AS(rcmc(rd, s.platform, still), InvalidArgument);
        CHECK_THROWS_AS(rcmc(from_range_doppler(rd), s.platform, ic), DomainMismatch);
    }
}

TEST_CASE("RCMC concentrates a matched mover within one range bin", "[imaging]")
{
    // tests/oracles/oracle.py, full_band_256.
    constexpr double kOracleFraction = 0.9035926921562183;
    const FullBand fb = full_band(256);
    const DataCube rd = rcmc(to_range_doppler(fb.cube), fb.scene.platform, fb.imaging);
    const double frac = band_fraction(rd, fb.bin);
    CHECK(frac == Approx(kOracleFraction).epsilon(1e-9));
    CHECK(frac >= 0.90);
}

TEST_CASE("azimuth filter", "[imaging]")
{
    const RadarParams radar{2.7e9, 500e6, 1e-6, 100.0, 600e6};
    ArrayGeometry g;
    g.d_m = 0.06;
    g.d_r_m = 0.06;
    PlatformState pl;
    pl.vp_mps = 3.0;
    ImagingConfig ic;
    ic.vy_mps = 1.0;

    CHECK(azimuth_filter(radar, g, pl, ic, 13.0, 0.0) == cdouble(1.0, 0.0));
    for (double f : {-49.0, -3.3, 0.7, 21.0})
    {
        const cdouble h = azimuth_filter(radar, g, pl, ic, 13.0, f);
        CHECK(std::abs(h) == Approx(1.0).epsilon(1e-15));
        CHECK(azimuth_filter(radar, g, pl, ic, 13.0, -f) == h);
        const double want = -kPi * radar.wavelength() * 13.0 * f * f / (2.0 * 10.0);
        CHECK(std::abs(wrap_phase(std::arg(h) - want)) < 1e-12);
    }

    SECTION("linear term")
    {
        ic.include_linear_term = true;
        ic.vr = 4.0;
        ic.linear_channel = 2;
        CHECK(azimuth_filter(radar, g, pl, ic, 13.0, 0.0) == cdouble(1.0, 0.0));
        const double f = 7.0;
        const cdouble h = azimuth_filter(radar, g, pl, ic, 13.0, f);
        CHECK(std::abs(h) == Approx(1.0).epsilon(1e-15));
        const double want = -kPi * radar.wavelength() * 13.0 * f * f / 20.0 -
                            kPi * f * (2.0 * 4.0 + (-3.0) * (0.06 - 0.06)) / 10.0;
        CHECK(std::abs(wrap_phase(std::arg(h) - want)) < 1e-12);
        ic.linear_channel = 1;
        const double want1 = -kPi * radar.wavelength() * 13.0 * f * f / 20.0 -
                             kPi * f * (2.0 * 4.0 + (-3.0) * (0.0 - 0.06)) / 10.0;
        CHECK(std::abs(wrap_phase(std::arg(azimuth_filter(radar, g, pl, ic, 13.0, f)) - want1)) < 1e-12);
    }
}

TEST_CASE("matched focusing gain", "[imaging]")
{
    // tests/oracles/oracle.py, full_band_256.
    constexpr double kOracleGainOverN = 0.919004842949362;
    const FullBand fb = full_band(256);
    const Image img = focus(fb.cube, fb.scene.array, fb.scene.platform, fb.imaging);
    const double g = std::pow(img.peak_magnitude() / max_abs(fb.cube), 2) / 256.0;
    CHECK(g == Approx(kOracleGainOverN).epsilon(1e-9));
    CHECK(g >= 0.8);
    CHECK(img.n_range == fb.cube.fast());
    CHECK(img.n_azimuth == 256);
    CHECK(std::abs(img.at(fb.bin, 128)) == Approx(img.peak_magnitude()));
    CHECK(img.config.at("imaging.rcmc_mode") == "per_bin");
}

TEST_CASE("matched quadratic phase focuses into two azimuth bins", "[imaging]")
{
    Scene s = small_scene(128);
    s.array.d_r_m = 0.0;
    const double lambda = s.radar.wavelength();
    const double pri = s.radar.pri();
    const double r0 = 13.0;
    SamplingGrid g{2.0 * r0 / kSpeedOfLight - 2.0 / s.radar.fs_hz, s.radar.fs_hz, 4, 128, s.radar.prf_hz};
    for (double band : {1.0})
        for (int m : {0, 5, -9})
            for (bool linear : {false, true})
            {
                const double a2 = band * lambda / (2.0 * 128.0 * pri * pri);
                const double a1 = lambda * m * s.radar.prf_hz / 128.0;
                DataCube c(1, s.radar, g, Domain::RangeCompressed);
                for (std::size_t p = 0; p < 128; ++p)
                {
                    const double eta = g.slow_time(p);
                    c.at(0, p, 2) = std::polar(1.0, -2.0 * kPi / lambda * (a1 * eta + a2 * eta * eta));
                }
                ImagingConfig ic;
                ic.vx_mps = s.platform.vp_mps - std::sqrt(a2 * r0);
                ic.include_linear_term = linear;
                ic.vr = a1 * r0 / 2.0;
                const Image img = image_from_cube(
                    from_range_doppler(azimuth_compress(to_range_doppler(c), s.array, s.platform, ic)), 0,
                    s.platform.vp_mps);
                std::vector<double> e(128);
                double tot = 0.0;
                for (std::size_t a = 0; a < 128; ++a)
                {
                    e[a] = std::norm(img.at(2, a));
                    tot += e[a];
                }
                double best = 0.0;
                for (std::size_t a = 0; a < 128; ++a)
                    best = std::max(best, e[a] + e[(a + 1) % 128]);
                INFO("band " << band << " m " << m << " linear " << linear);
                CHECK(best / tot >= 0.95);
            }
}

TEST_CASE("mover-matched filter defocuses stationary clutter", "[imaging]")
{
    Scenario sc = load_scenario("configs/clutter_only.cfg", {"sim.phase_model=quadratic"});
    sc.scene.targets.resize(1);
    const Scene &s = sc.scene;
    const SamplingGrid g = make_grid(s, Domain::RangeCompressed, PhaseModel::Quadratic);
    const DataCube c = synthesize_compressed(s, g, PhaseModel::Quadratic).extract_channel(0);
    ImagingConfig still, mover;
    mover.vy_mps = 1.0;
    const double p_still = focus(c, s.array, s.platform, still).peak_magnitude();
    const double p_mover = focus(c, s.array, s.platform, mover).peak_magnitude();
    CHECK(p_mover < p_still);
}

TEST_CASE("focus basics", "[imaging]")
{
    Scene s = small_scene(16);
    SamplingGrid g{1e-8, s.radar.fs_hz, 32, 16, s.radar.prf_hz};
    ImagingConfig ic;
    ic.vy_mps = 1.0;

    const DataCube zero(1, s.radar, g, Domain::RangeCompressed);
    const Image z = focus(zero, s.array, s.platform, ic);
    CHECK(std::all_of(z.pixels.begin(), z.pixels.end(), [](const cdouble &v) { return v == cdouble{}; }));
    CHECK(z.calibration.range_m_per_bin == Approx(kSpeedOfLight / (2.0 * s.radar.fs_hz)));
    CHECK(z.calibration.azimuth_m_per_bin == Approx(0.03));

    CHECK_THROWS_AS(focus(DataCube(2, s.radar, g, Domain::RangeCompressed), s.array, s.platform, ic),
                    DimensionMismatch);
    CHECK_THROWS_AS(focus(DataCube(1, s.radar, g, Domain::Raw), s.array, s.platform, ic), DomainMismatch);
    ImagingConfig bad;
    bad.vx_mps = s.platform.vp_mps;
    CHECK_THROWS_AS(focus(zero, s.array, s.platform, bad), ConfigError);

    SECTION("energy is preserved")
    {
        DataCube c = zero;
        std::size_t i = 0;
        for (auto &v : c.samples())
            v = std::polar(1.0 + 0.1 * static_cast<double>(i % 7), 0.9 * static_cast<double>(i++));
        ic.rcmc_mode = RcmcMode::SceneCenter;
        CHECK(focus(c, s.array, s.platform, ic).energy() == Approx(c.energy()).epsilon(1e-10));

        // Without migration every range line keeps its energy.
        const DataCube ac = from_range_doppler(azimuth_compress(to_range_doppler(c), s.array, s.platform, ic));
        for (std::size_t f = 0; f < 32; ++f)
        {
            double a = 0.0, b = 0.0;
            for (std::size_t p = 0; p < 16; ++p)
            {
                a += std::norm(c.at(0, p, f));
                b += std::norm(ac.at(0, p, f));
            }
            CHECK(b == Approx(a).epsilon(1e-10));
        }
    }
}

TEST_CASE("zero assumed target velocity is stationary-world range-Doppler imaging", "[imaging]")
{
    Scene s = small_scene(16);
    s.targets = {point(0.1, 4.0), point(-0.3, 4.5)};
    const SamplingGrid g = make_grid(s, Domain::RangeCompressed, PhaseModel::Quadratic, {std::nullopt, 48});
    const DataCube c = synthesize_compressed(s, g, PhaseModel::Quadratic).extract_channel(0);
    const Image img = focus(c, s.array, s.platform, ImagingConfig{});

    const double prf = g.prf_hz, fs = g.fs_hz, lambda = s.radar.wavelength(), vp2 = 9.0;
    const std::size_t np = 16, nf = 48;
    const double r_mid = 0.5 * kSpeedOfLight * g.fast_time_mid();
    // Slow-time transform per range bin.
    std::vector<std::vector<cdouble>> rd(nf);
    for (std::size_t i = 0; i < nf; ++i)
    {
        std::vector<cdouble> col(np);
        for (std::size_t p = 0; p < np; ++p)
            col[p] = c.at(0, p, i);
        rd[i] = naive_doppler(col, prf, false);
    }
    // Per Doppler row: shift to remove migration, then the stationary azimuth filter.
    for (std::size_t p = 0; p < np; ++p)
    {
        const double f = (static_cast<double>(p) - static_cast<double>(np / 2)) * prf / static_cast<double>(np);
        const double dt = lambda * lambda * r_mid * f * f / (4.0 * vp2) / kSpeedOfLight;
        std::vector<cdouble> spectrum(nf);
        for (std::size_t k = 0; k < nf; ++k)
            for (std::size_t i = 0; i < nf; ++i)
                spectrum[k] += rd[i][p] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k * i) / static_cast<double>(nf));
        std::vector<cdouble> row(nf);
        for (std::size_t i = 0; i < nf; ++i)
        {
            for (std::size_t k = 0; k < nf; ++k)
            {
                double fk = (k < nf / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(nf)) *
                            fs / static_cast<double>(nf);
                if (k == nf / 2)
                    fk = 0.0;
                row[i] += spectrum[k] * std::polar(1.0, 2.0 * kPi * (static_cast<double>(k * i) / static_cast<double>(nf) +
                                                                 fk * dt));
            }
            row[i] /= static_cast<double>(nf);
        }
        for (std::size_t i = 0; i < nf; ++i)
        {
            const double r0 = std::max(0.5 * kSpeedOfLight * g.fast_time(i), 0.5 * kSpeedOfLight / fs);
            rd[i][p] = row[i] * std::polar(1.0, -kPi * lambda * r0 * f * f / (2.0 * vp2));
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < nf; ++i)
    {
        const auto col = naive_doppler(rd[i], prf, true);
        for (std::size_t p = 0; p < np; ++p)
            worst = std::max(worst, std::abs(col[p] - img.at(i, p)));
    }
    CHECK(worst <= 1e-10 * img.peak_magnitude());
}

TEST_CASE("velocity scan", "[imaging]")
{
    Scene s = small_scene(64);
    s.targets = {point(0.0, 6.0), point(0.3, 5.0, 0.0, 1.0, {0.3, 0.0})};
    const SamplingGrid g = make_grid(s, Domain::RangeCompressed, PhaseModel::Quadratic);
    const DataCube both = synthesize_compressed(s, g, PhaseModel::Quadratic);
    Scene ms = s;
    ms.targets = {s.targets[1]};
    const DataCube mover = synthesize_compressed(ms, g, PhaseModel::Quadratic);
    // Suppressed stand-in: the mover alone plus a little clutter.
    DataCube out = mover.extract_channel(0);
    const DataCube ref = both.extract_channel(0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.samples()[i] += 0.01 * ref.samples()[i];

    ScanContext ctx;
    ctx.reference = ref;
    ctx.mask_for = [&](const ImagingConfig &ic, const Image &img) {
        return region_from_truth(s, img.calibration, img.n_range, img.n_azimuth, ic, 2, 2);
    };
    ImagingConfig base;

    const auto one = velocity_scan(out, s.array, s.platform, base, {1.0}, ctx);
    REQUIRE(one.size() == 1);
    base.vy_mps = 1.0;
    const Image direct = focus(out, s.array, s.platform, base);
    CHECK(one[0].image.pixels == direct.pixels);
    CHECK(one[0].vy_mps == 1.0);

    const auto many = velocity_scan(out, s.array, s.platform, base, {0.6, 0.0, 0.6}, ctx);
    REQUIRE(many.size() == 3);
    CHECK(many[0].vy_mps == 0.6);
    CHECK(many[1].vy_mps == 0.0);
    CHECK(many[0].report.if_db == many[2].report.if_db);
    CHECK(many[0].image.pixels == many[2].image.pixels);
    CHECK(many[0].report.config.at("imaging.vy_mps") == "0.6");
    CHECK(std::isfinite(many[1].report.if_db));

    CHECK_THROWS_AS(velocity_scan(out, s.array, s.platform, base, {}, ctx), InvalidArgument);
}
