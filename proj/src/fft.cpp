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

#include "rdcc/fft.hpp"

#include <algorithm>
#include <fftw3.h>

#include "rdcc/errors.hpp"

namespace rdcc::fft
{
    namespace
    {
        // Unaligned plans pick the same codelets whatever the buffer address,
        // so repeated runs are bit-identical.
        constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

        class Plan
        {
        public:
            Plan(std::complex<double> *data, std::size_t n, std::size_t count, std::size_t stride,
                 std::size_t dist, Direction dir)
            {
                int len = static_cast<int>(n);
                auto *p = reinterpret_cast<fftw_complex *>(data);
                plan_ = fftw_plan_many_dft(1, &len, static_cast<int>(count), p, nullptr, static_cast<int>(stride),
                                           static_cast<int>(dist), p, nullptr, static_cast<int>(stride),
                                           static_cast<int>(dist),
                                           dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD, kFlags);
                if (!plan_)
                    throw Error("fftw plan creation failed");
            }
            ~Plan() { fftw_destroy_plan(plan_); }
            Plan(const Plan &) = delete;
            Plan &operator=(const Plan &) = delete;

            void execute() const { fftw_execute(plan_); }

        private:
            fftw_plan plan_ = nullptr;
        };
    }

    void transform_many(std::complex<double> *data, std::size_t n, std::size_t count, std::size_t stride,
                        std::size_t dist, Direction dir)
    {
        if (n == 0 || count == 0)
            return;
        Plan(data, n, count, stride, dist, dir).execute();
        if (dir == Direction::Inverse)
        {
            const double scale = 1.0 / static_cast<double>(n);
            for (std::size_t b = 0; b < count; ++b)
                for (std::size_t j = 0; j < n; ++j)
                    data[b * dist + j * stride] *= scale;
        }
    }

    void transform(std::span<std::complex<double>> data, Direction dir)
    {
        transform_many(data.data(), data.size(), 1, 1, data.size(), dir);
    }

    void fftshift(std::span<std::complex<double>> data)
    {
        const std::size_t n = data.size();
        std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(n - n / 2), data.end());
    }

    void ifftshift(std::span<std::complex<double>> data)
    {
        const std::size_t n = data.size();
        std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(n / 2), data.end());
    }
}
