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

#include "bfmimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace bfmimo
{
    namespace
    {
        constexpr std::uint32_t PHILOX_M0 = 0xD2511F53u;
        constexpr std::uint32_t PHILOX_M1 = 0xCD9E8D57u;
        constexpr std::uint32_t PHILOX_W0 = 0x9E3779B9u;
        constexpr std::uint32_t PHILOX_W1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(p >> 32);
            lo = static_cast<std::uint32_t>(p);
        }
    }

    std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key)
    {
        for (int round = 0; round < 10; ++round)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(PHILOX_M0, ctr[0], hi0, lo0);
            mulhilo(PHILOX_M1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += PHILOX_W0;
            key[1] += PHILOX_W1;
        }
        return ctr;
    }

    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id)
    {
    }

    RandomStream RandomStream::substream(std::uint64_t tag) const
    {
        return RandomStream(seed_, mix64(stream_ ^ mix64(tag)));
    }

    void RandomStream::refill()
    {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const std::array<std::uint32_t, 2> key = {
            static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
        buffer_ = philox4x32_10(ctr, key);
        ++block_;
        used_ = 0;
    }

    std::uint64_t RandomStream::next_u64()
    {
        if (used_ > 2)
            refill();
        const std::uint64_t lo = buffer_[used_];
        const std::uint64_t hi = buffer_[used_ + 1];
        used_ += 2;
        return (hi << 32) | lo;
    }

    double RandomStream::uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double RandomStream::uniform_open()
    {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    std::complex<double> RandomStream::complex_normal(double variance)
    {
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double radius = std::sqrt(-variance * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
}
