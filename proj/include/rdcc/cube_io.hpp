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
#include <iosfwd>
#include <string>
#include <vector>

#include "rdcc/cube.hpp"

namespace rdcc
{
    // Cube file, little-endian:
    //   "RDC1" | u16 version | u8 domain | u8 pad | u32 channels, pulses, fast |
    //   f64 prf_hz, fs_hz, tau0_s, f0_hz, bandwidth_hz, pulse_width_s |
    //   f32 (re, im) samples, fast time fastest, then pulse, then channel.
    inline constexpr char kCubeMagic[4] = {'R', 'D', 'C', '1'};
    inline constexpr std::uint16_t kCubeVersion = 1;
    inline constexpr std::size_t kCubeHeaderBytes = 68;
    /// Upper bound on complex samples a reader will accept.
    inline constexpr std::uint64_t kMaxCubeSamples = 1ULL << 33;

    std::vector<std::uint8_t> encode_cube(const DataCube &cube);
    DataCube decode_cube(const std::vector<std::uint8_t> &bytes);

    void write_cube(const DataCube &cube, const std::string &path);
    DataCube read_cube(const std::string &path);

    /// FNV-1a 64 over the encoded file bytes.
    std::uint64_t cube_checksum(const DataCube &cube);
}
