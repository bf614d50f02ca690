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

#include "rdcc/cube_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "rdcc/errors.hpp"

namespace rdcc
{
    namespace
    {
        class Writer
        {
        public:
            explicit Writer(std::vector<std::uint8_t> &out) : out_(out) {}

            void bytes(const void *p, std::size_t n)
            {
                const auto *b = static_cast<const std::uint8_t *>(p);
                for (std::size_t i = 0; i < n; ++i)
                    out_.push_back(b[i]);
            }
            template <typename U> void le(U v)
            {
                for (std::size_t i = 0; i < sizeof(U); ++i)
                    out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
            }
            void u8(std::uint8_t v) { out_.push_back(v); }
            void u16(std::uint16_t v) { le(v); }
            void u32(std::uint32_t v) { le(v); }
            void f32(float v) { le(std::bit_cast<std::uint32_t>(v)); }
            void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }

        private:
            std::vector<std::uint8_t> &out_;
        };

        class Reader
        {
        public:
            Reader(const std::vector<std::uint8_t> &in) : in_(in) {}

            std::size_t remaining() const { return in_.size() - pos_; }

            template <typename U> U le()
            {
                if (remaining() < sizeof(U))
                    throw TruncatedPayload("cube file ends inside the header");
                U v = 0;
                for (std::size_t i = 0; i < sizeof(U); ++i)
                    v |= static_cast<U>(static_cast<U>(in_[pos_ + i]) << (8 * i));
                pos_ += sizeof(U);
                return v;
            }
            std::uint8_t u8() { return le<std::uint8_t>(); }
            std::uint16_t u16() { return le<std::uint16_t>(); }
            std::uint32_t u32() { return le<std::uint32_t>(); }
            float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }
            double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }

        private:
            const std::vector<std::uint8_t> &in_;
            std::size_t pos_ = 0;
        };
    }

    std::vector<std::uint8_t> encode_cube(const DataCube &cube)
    {
        const auto max32 = std::numeric_limits<std::uint32_t>::max();
        if (cube.channels() > max32 || cube.pulses() > max32 || cube.fast() > max32)
            throw DimensionOverflow("cube dimension exceeds 32 bits");

        std::vector<std::uint8_t> out;
        out.reserve(kCubeHeaderBytes + cube.size() * 8);
        Writer w(out);
        w.bytes(kCubeMagic, 4);
        w.u16(kCubeVersion);
        w.u8(static_cast<std::uint8_t>(cube.domain()));
        w.u8(0);
        w.u32(static_cast<std::uint32_t>(cube.channels()));
        w.u32(static_cast<std::uint32_t>(cube.pulses()));
        w.u32(static_cast<std::uint32_t>(cube.fast()));
        const RadarParams &r = cube.radar();
        const SamplingGrid &g = cube.grid();
        w.f64(g.prf_hz);
        w.f64(g.fs_hz);
        w.f64(g.tau0_s);
        w.f64(r.f0_hz);
        w.f64(r.bandwidth_hz);
        w.f64(r.pulse_width_s);
        for (const cdouble &z : cube.samples())
        {
            w.f32(static_cast<float>(z.real()));
            w.f32(static_cast<float>(z.imag()));
        }
        return out;
    }

    DataCube decode_cube(const std::vector<std::uint8_t> &bytes)
    {
        if (bytes.size() < 4 || std::memcmp(bytes.data(), kCubeMagic, 4) != 0)
            throw BadMagic("not a cube file (bad magic)");
        Reader rd(bytes);
        for (int i = 0; i < 4; ++i)
            rd.u8();
        const std::uint16_t version = rd.u16();
        if (version != kCubeVersion)
            throw VersionMismatch("unsupported cube version " + std::to_string(version));
        const std::uint8_t tag = rd.u8();
        if (tag > static_cast<std::uint8_t>(Domain::RangeDoppler))
            throw FormatError("unknown domain tag " + std::to_string(tag));
        rd.u8();
        const std::uint64_t nc = rd.u32();
        const std::uint64_t np = rd.u32();
        const std::uint64_t nf = rd.u32();
        if (nc == 0 || np == 0 || nf == 0)
            throw FormatError("cube dimension is zero");
        // Each factor < 2^32, so nc * np can't overflow; check the rest stepwise.
        const std::uint64_t cp = nc * np;
        if (cp > kMaxCubeSamples || nf > kMaxCubeSamples / cp)
            throw DimensionOverflow("cube dimensions overflow the sample limit");
        const std::uint64_t n = cp * nf;

        RadarParams radar;
        SamplingGrid grid;
        grid.prf_hz = radar.prf_hz = rd.f64();
        grid.fs_hz = radar.fs_hz = rd.f64();
        grid.tau0_s = rd.f64();
        radar.f0_hz = rd.f64();
        radar.bandwidth_hz = rd.f64();
        radar.pulse_width_s = rd.f64();
        grid.n_pulses = np;
        grid.n_fast = nf;

        if (rd.remaining() < n * 8)
            throw TruncatedPayload("cube payload shorter than its header promises");
        if (rd.remaining() > n * 8)
            throw FormatError("trailing bytes after cube payload");

        DataCube cube(nc, radar, grid, static_cast<Domain>(tag));
        for (cdouble &z : cube.samples())
        {
            const float re = rd.f32();
            const float im = rd.f32();
            z = cdouble(re, im);
        }
        return cube;
    }

    void write_cube(const DataCube &cube, const std::string &path)
    {
        const auto bytes = encode_cube(cube);
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open " + path + " for writing");
        f.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!f)
            throw IoError("write failed: " + path);
    }

    DataCube read_cube(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open " + path);
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        return decode_cube(bytes);
    }

    std::uint64_t cube_checksum(const DataCube &cube)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const std::uint8_t b : encode_cube(cube))
        {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
}
