// SPDX-License-Identifier: Apache-2.0
//
// bfmimo: statistical block fading channel simulator for multiuser massive MIMO
// Copyright (C) 2026 The bfmimo Authors
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

#ifndef bfmimo_rng_H
#define bfmimo_rng_H

#include <array>
#include <complex>
#include <cstdint>

namespace bfmimo
{
    // Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the
    // output is a pure function of (counter, key).
    std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key);

    // SplitMix64 step: the value SplitMix64 returns when its state is x.
    // Used to derive substream identifiers.
    std::uint64_t mix64(std::uint64_t x);

    // Counter-based random stream.
    //
    // A stream is identified by (seed, stream id); the n-th 128-bit block is
    // philox(counter = {n, stream id}, key = seed). Substreams are derived by
    // hashing the parent id with a tag, so the draws of a link or realization
    // depend only on its coordinates and never on the order in which other
    // streams were consumed. This is what makes parallel generation bitwise
    // identical to sequential generation.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

        // Independent child stream. Does not advance this stream.
        [[nodiscard]] RandomStream substream(std::uint64_t tag) const;

        std::uint64_t next_u64();

        // Uniform on [0, 1) with 53 bits of resolution.
        double uniform();

        // Uniform on (0, 1]; safe as a logarithm argument.
        double uniform_open();

        // Circularly-symmetric CN(0, variance) sample. Fixed transform:
        // radius = sqrt(-variance * ln(u1)), angle = 2*pi*u2 with u1 from
        // uniform_open() and u2 from uniform(), drawn in that order.
        std::complex<double> complex_normal(double variance = 1.0);

        std::uint64_t seed() const { return seed_; }
        std::uint64_t stream_id() const { return stream_; }

    private:
        void refill();

        std::uint64_t seed_;
        std::uint64_t stream_;
        std::uint64_t block_ = 0;
        std::array<std::uint32_t, 4> buffer_{};
        unsigned used_ = 4; // 32-bit words consumed from buffer_
    };
}

#endif
