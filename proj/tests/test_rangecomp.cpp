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

#include <algorithm>

#include "rdcc/echo.hpp"
#include "rdcc/errors.hpp"
#include "rdcc/rangecomp.hpp"

using namespace rdcc;
using namespace rdcc::testing;
using Catch::Approx;

namespace
{
    const RadarParams kRadar{2.7e9, 500e6, 1e-6, 100.0, 600e6};

    // One-pulse raw cube with unit chirps at the given delays (in samples).
    DataCube chirp_pulses(std::size_t n_fast, const std::vector<std::vector<double>> &delays)
    {
        SamplingGrid g{0.0, kRadar.fs_hz, n_fast, delays.size(), kRadar.prf_hz};
        DataCube c(1, kRadar, g, Domain::Raw);
        const double half = 0.5 * kRadar.pulse_width_s;
        for (std::size_t p = 0; p < delays.size(); ++p)
            for (double d : delays[p])
                for (std::size_t i = 0; i < n_fast; ++i)
                {
                    const double dt = (static_cast<double>(i) - d) / kRadar.fs_hz;
                    if (std::abs(dt) <= half)
                        c.at(0, p, i) += std::polar(1.0, kPi * kRadar.chirp_rate() * dt * dt);
                }
        return c;
    }

    std::size_t argmax(std::span<const cdouble> x)
    {
        std::size_t b = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i]) > std::abs(x[b]))
                b = i;
        return b;
    }
}

TEST_CASE("reference chirp", "[rangecomp]")
{
    const std::size_t n = 2048;
    const auto ref = reference_chirp(kRadar, n, kRadar.fs_hz);
    REQUIRE(ref.size() == n);
    CHECK(ref[0] == cdouble(1.0, 0.0));
    std::size_t inside = 0;
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double k = i <= n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
        const double t = k / kRadar.fs_hz;
        energy += std::norm(ref[i]);
        if (std::abs(t) <= 0.5 * kRadar.pulse_width_s * (1.0 + 1e-12))
        {
            ++inside;
            CHECK(std::abs(ref[i]) == Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(wrap_phase(std::arg(ref[i]) + kPi * kRadar.chirp_rate() * t * t)) < 1e-9);
        }
        else
            CHECK(ref[i] == cdouble(0.0, 0.0));
    }
    CHECK(inside == 601);
    CHECK(energy == Approx(static_cast<double>(inside)).epsilon(1e-12));

    RadarParams tiny = kRadar;
    tiny.pulse_width_s = 2e-9;
    CHECK_THROWS_AS(reference_chirp(tiny, n, kRadar.fs_hz), InvalidArgument);
    CHECK_THROWS_AS(reference_chirp(kRadar, 300, kRadar.fs_hz), InvalidArgument);
}

TEST_CASE("on-grid unit target compresses to a unit peak at its delay", "[rangecomp]")
{
    // Oracle peak: 601 / 600.
    constexpr double kOraclePeak = 1.0016666666666667;
    const DataCube pc = pulse_compress(chirp_pulses(2048, {{900.0}}));
    CHECK(pc.domain() == Domain::RangeCompressed);
    const auto pulse = pc.pulse(0, 0);
    CHECK(argmax(pulse) == 900);
    CHECK(std::abs(pulse[900]) == Approx(kOraclePeak).epsilon(1e-12));
    CHECK(std::abs(pulse[900]) == Approx(1.0).epsilon(0.02));
}

TEST_CASE("two separated equal targets", "[rangecomp]")
{
    const DataCube pc = pulse_compress(chirp_pulses(2048, {{700.0, 1300.0}}));
    const auto pulse = pc.pulse(0, 0);
    const double a = std::abs(pulse[700]);
    const double b = std::abs(pulse[1300]);
    CHECK(a == Approx(b).epsilon(0.02));
    for (std::size_t i = 0; i < pulse.size(); ++i)
        if (i != 700 && i != 1300)
            REQUIRE(std::abs(pulse[i]) < a);
}

TEST_CASE("-3 dB main lobe width", "[rangecomp]")
{
    // Oracle (64x band-limited interpolation): 1.046875 bins. Nominal fs / B = 1.2.
    constexpr double kOracleWidth = 1.046875;
    // Sweep the target across a fixed bin in 1/64 steps and read the response.
    std::vector<std::vector<double>> delays;
    for (int s = -64; s <= 64; ++s)
        delays.push_back({1024.0 + s / 64.0});
    const DataCube pc = pulse_compress(chirp_pulses(2048, delays));
    const double peak = std::abs(pc.at(0, 64, 1024));
    int above = 0;
    for (std::size_t p = 0; p < pc.pulses(); ++p)
        if (std::abs(pc.at(0, p, 1024)) >= peak / std::sqrt(2.0))
            ++above;
    const double width = above / 64.0;
    CHECK(width == Approx(kOracleWidth).margin(1.0 / 32.0));
    CHECK(width == Approx(kRadar.fs_hz / kRadar.bandwidth_hz).margin(0.3));
}

TEST_CASE("linearity and shift covariance", "[rangecomp]")
{
    const DataCube x = chirp_pulses(1024, {{400.3}});
    const DataCube y = chirp_pulses(1024, {{610.8}});
    DataCube xy = x;
    for (std::size_t i = 0; i < xy.size(); ++i)
        xy.samples()[i] = x.samples()[i] + cdouble(0.5, 2.0) * y.samples()[i];
    const DataCube px = pulse_compress(x), py = pulse_compress(y), pxy = pulse_compress(xy);
    DataCube sum = px;
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum.samples()[i] = px.samples()[i] + cdouble(0.5, 2.0) * py.samples()[i];
    CHECK(rel_error(pxy, sum) <= 1e-12);

    for (std::size_t k : {0, 1, 7, 123})
    {
        const DataCube s = pulse_compress(chirp_pulses(1024, {{400.0 + static_cast<double>(k)}}));
        CHECK(argmax(s.pulse(0, 0)) == 400 + k);
    }

    // Circular covariance: rotating the input rotates the output.
    const DataCube px0 = pulse_compress(x);
    for (std::size_t k : {1, 500, 1000})
    {
        DataCube r = x;
        auto p = r.pulse(0, 0);
        std::rotate(p.begin(), p.end() - static_cast<std::ptrdiff_t>(k), p.end());
        const DataCube pr = pulse_compress(r);
        double worst = 0.0;
        for (std::size_t i = 0; i < 1024; ++i)
            worst = std::max(worst, std::abs(pr.at(0, 0, (i + k) % 1024) - px0.at(0, 0, i)));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("pulse_compress rejects non-raw cubes", "[rangecomp]")
{
    DataCube c = chirp_pulses(1024, {{400.0}});
    c.set_domain(Domain::RangeCompressed);
    CHECK_THROWS_AS(pulse_compress(c), DomainMismatch);
}
