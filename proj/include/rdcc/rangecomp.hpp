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

#include <vector>

#include "rdcc/cube.hpp"

namespace rdcc
{
    /// Reference chirp w_r(tau/Tp) exp(-j pi Kr tau^2) sampled at fs and stored
    /// circularly: tau = 0 at index 0, negative times wrapped to the end.
    std::vector<cdouble> reference_chirp(const RadarParams &params, std::size_t n_fast, double fs);

    /// Fast-time matched filter by transform product, scaled by 1/(Tp fs) so an
    /// on-grid unit target peaks at ~1.
    DataCube pulse_compress(const DataCube &raw);
}
