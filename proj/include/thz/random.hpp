// SPDX-License-Identifier: Apache-2.0
//
// thz-cnoma: cooperative NOMA link-level simulator for indoor THz-MISO downlinks
// Copyright (C) 2026 The thz-cnoma authors
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
#include <random>

namespace thz
{

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// 64-bit key of realization `index` under `master_seed`. Depends only on the
/// pair, never on which worker runs the realization.
inline constexpr std::uint64_t substream_key(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

/// Portable random stream. std::mt19937_64 is fully specified by the
/// standard; the distributions below are hand-rolled because the standard
/// ones are not.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream substream(std::uint64_t master_seed, std::uint64_t index)
    {
        return RandomStream(substream_key(master_seed, index));
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi].
    double uniform(double lo, double hi)
    {
        double x = lo + (hi - lo) * uniform();
        return x > hi ? hi : x;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace thz
