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

#include <cmath>
#include <cstdint>
#include <utility>

namespace rdcc
{
    // Counter-based noise: every draw is a pure function of (seed, stream, index),
    // so samples can be generated in any order.

    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
    }

    /// Uniform in (0, 1), never exactly 0.
    constexpr double to_unit_open(std::uint64_t bits)
    {
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Two independent standard normals (Box-Muller) for the given counter.
    inline std::pair<double, double> counter_normal_pair(std::uint64_t seed, std::uint64_t stream,
                                                         std::uint64_t index)
    {
        const std::uint64_t h1 = counter_hash(seed, stream, 2 * index);
        const std::uint64_t h2 = counter_hash(seed, stream, 2 * index + 1);
        const double u1 = to_unit_open(h1);
        const double u2 = to_unit_open(h2);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }
}
