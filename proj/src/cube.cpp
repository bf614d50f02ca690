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

#include "rdcc/cube.hpp"

#include <string>

#include "rdcc/errors.hpp"

namespace rdcc
{
    const char *to_string(Domain d)
    {
        switch (d)
        {
        case Domain::Raw:
            return "raw";
        case Domain::RangeCompressed:
            return "range_compressed";
        case Domain::RangeDoppler:
            return "range_doppler";
        }
        return "unknown";
    }

    DataCube::DataCube(std::size_t n_channels, const RadarParams &radar, const SamplingGrid &grid, Domain domain)
        : channels_(n_channels), radar_(radar), grid_(grid), domain_(domain)
    {
        if (n_channels == 0 || grid.n_pulses == 0 || grid.n_fast == 0)
            throw DimensionMismatch("cube dimensions must be non-zero");
        data_.assign(n_channels * grid.n_pulses * grid.n_fast, cdouble{});
    }

    DataCube DataCube::extract_channel(std::size_t c) const
    {
        if (c >= channels_)
            throw InvalidArgument("channel " + std::to_string(c) + " out of range");
        DataCube out(1, radar_, grid_, domain_);
        const auto src = channel(c);
        std::copy(src.begin(), src.end(), out.data_.begin());
        return out;
    }

    DataCube DataCube::zeros_like(std::size_t n_channels) const
    {
        return DataCube(n_channels, radar_, grid_, domain_);
    }

    double DataCube::energy() const
    {
        double e = 0.0;
        for (const auto &z : data_)
            e += std::norm(z);
        return e;
    }

    void require_domain(const DataCube &cube, Domain expected, const char *operation)
    {
        if (cube.domain() != expected)
            throw DomainMismatch(std::string(operation) + ": expected " + to_string(expected) + " cube, got " +
                                 to_string(cube.domain()));
    }
}
