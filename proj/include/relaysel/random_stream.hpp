/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace relaysel {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Counter-based random stream.
///
/// A stream is identified by (seed, stream id, substream). Output depends on
/// nothing else, so any trial can be regenerated in isolation and trials can
/// run on any thread in any order. The 128-bit Philox counter is laid out as
/// [block, substream, id_lo, id_hi]; the seed is the key.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0) noexcept;

    /// Stream for one Monte Carlo trial at one power grid point.
    /// Both indices must fit in 32 bits.
    static RandomStream for_trial(std::uint64_t seed, std::uint64_t grid_index,
                                  std::uint64_t trial_index) noexcept;

    /// Independent stream sharing seed and id, starting at block zero.
    RandomStream substream(std::uint32_t tag) const noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double next_uniform() noexcept;

    /// Unbiased integer in [0, bound). bound must be nonzero.
    std::uint32_t next_below(std::uint32_t bound) noexcept;

    /// Circularly symmetric CN(0, 1): real and imaginary parts are
    /// independent N(0, 1/2) (Box-Muller on two uniforms).
    std::complex<double> next_complex_gaussian() noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_{};
    PhiloxCounter counter_{};
    PhiloxCounter buffer_{};
    unsigned next_ = 4;
};

}  // namespace relaysel
