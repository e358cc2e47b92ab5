// Copyright 2026 The RANG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace rang {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for stream `index` under `master`. Streams for distinct indices are
// independent for practical purposes and do not depend on scheduling.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  return SplitMix64(SplitMix64(master) ^ SplitMix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng MakeRng(std::uint64_t master, std::uint64_t index) {
  return Rng(DeriveSeed(master, index));
}

}  // namespace rang
