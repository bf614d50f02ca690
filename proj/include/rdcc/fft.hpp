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
#include <span>

namespace rdcc::fft
{
    enum class Direction
    {
        Forward, ///< kernel exp(-j 2 pi k n / N), unscaled
        Inverse, ///< kernel exp(+j 2 pi k n / N), scaled by 1/N
    };

    /// In-place transform of a contiguous sequence.
    void transform(std::span<std::complex<double>> data, Direction dir);

    /// In-place batch of `count` transforms of length `n`; element j of batch b
    /// lives at data[b * dist + j * stride].
    void transform_many(std::complex<double> *data, std::size_t n, std::size_t count, std::size_t stride,
                        std::size_t dist, Direction dir);

    /// Move index floor(N/2) to 0 (inverse of shift for every N).
    void ifftshift(std::span<std::complex<double>> data);
    /// Move index 0 to floor(N/2).
    void fftshift(std::span<std::complex<double>> data);
}
