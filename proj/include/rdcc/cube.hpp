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
#include <span>
#include <vector>

#include "rdcc/scene.hpp"

namespace rdcc
{
    enum class Domain : std::uint8_t
    {
        Raw = 0,
        RangeCompressed = 1,
        RangeDoppler = 2,
    };

    const char *to_string(Domain d);

    /// Discrete fast/slow time axes of a cube.
    struct SamplingGrid
    {
        double tau0_s = 0.0; ///< fast time of sample 0
        double fs_hz = 0.0;
        std::size_t n_fast = 0;
        std::size_t n_pulses = 0;
        double prf_hz = 0.0;

        double fast_time(std::size_t i) const { return tau0_s + static_cast<double>(i) / fs_hz; }
        /// eta = 0 at pulse floor(n_pulses / 2).
        double slow_time(std::size_t k) const
        {
            return (static_cast<double>(k) - static_cast<double>(n_pulses / 2)) / prf_hz;
        }
        double fast_time_mid() const { return fast_time(n_fast / 2); }
    };

    /// Complex samples indexed (channel, pulse, fast time), fast time contiguous.
    class DataCube
    {
    public:
        DataCube() = default;
        DataCube(std::size_t n_channels, const RadarParams &radar, const SamplingGrid &grid, Domain domain);

        std::size_t channels() const { return channels_; }
        std::size_t pulses() const { return grid_.n_pulses; }
        std::size_t fast() const { return grid_.n_fast; }
        std::size_t size() const { return data_.size(); }

        const RadarParams &radar() const { return radar_; }
        const SamplingGrid &grid() const { return grid_; }
        Domain domain() const { return domain_; }
        void set_domain(Domain d) { domain_ = d; }

        cdouble &at(std::size_t c, std::size_t p, std::size_t f) { return data_[index(c, p, f)]; }
        const cdouble &at(std::size_t c, std::size_t p, std::size_t f) const { return data_[index(c, p, f)]; }

        std::span<cdouble> pulse(std::size_t c, std::size_t p) { return {data_.data() + index(c, p, 0), fast()}; }
        std::span<const cdouble> pulse(std::size_t c, std::size_t p) const
        {
            return {data_.data() + index(c, p, 0), fast()};
        }
        std::span<cdouble> channel(std::size_t c) { return {data_.data() + index(c, 0, 0), pulses() * fast()}; }
        std::span<const cdouble> channel(std::size_t c) const
        {
            return {data_.data() + index(c, 0, 0), pulses() * fast()};
        }

        std::span<cdouble> samples() { return data_; }
        std::span<const cdouble> samples() const { return data_; }

        /// Single-channel copy of channel c.
        DataCube extract_channel(std::size_t c) const;

        /// Same metadata, zeroed samples, possibly a different channel count.
        DataCube zeros_like(std::size_t n_channels) const;

        double energy() const;

        bool same_shape(const DataCube &o) const
        {
            return channels_ == o.channels_ && pulses() == o.pulses() && fast() == o.fast();
        }

    private:
        std::size_t index(std::size_t c, std::size_t p, std::size_t f) const
        {
            return (c * grid_.n_pulses + p) * grid_.n_fast + f;
        }

        std::size_t channels_ = 0;
        RadarParams radar_;
        SamplingGrid grid_;
        Domain domain_ = Domain::Raw;
        std::vector<cdouble> data_;
    };

    /// Throws DomainMismatch unless cube.domain() == expected.
    void require_domain(const DataCube &cube, Domain expected, const char *operation);
}
