// Copyright 2026 The ldpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPF_RNG_HPP_
#define LDPF_RNG_HPP_

#include <cstdint>
#include <random>

namespace ldpf {

// One engine per worker; never shared between threads.
using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// stream_seed = splitmix64(splitmix64(splitmix64(master) ^ grid) ^ trial).
// Within one grid point every trial gets a distinct seed.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t grid_index,
                                    std::uint64_t trial_index) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ grid_index) ^ trial_index);
}

// Uniform on the open interval (0, 1) with 53 random bits. Written out rather
// than using std::uniform_real_distribution so draws are identical across
// standard library implementations.
inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace ldpf

#endif  // LDPF_RNG_HPP_
