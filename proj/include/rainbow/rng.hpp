// Copyright 2026 The rainbow-dout Authors
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

namespace rainbow {

using Rng = std::mt19937_64;

// Purpose tags for substream derivation. Values are part of the
// reproducibility contract: never renumber.
enum class Stream : std::uint64_t {
  graph = 1,
  digraph = 2,
  coalesce = 3,
  permutation = 4,
  d_out = 5,
  binomial = 6,
  shuffle = 7,
  tree = 8,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Base seed of one trial. Trials never share state, so any execution
/// order reproduces the same draws.
inline constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(splitmix64(master) ^ trial);
}

/// Seed of the substream keyed by (trial seed, purpose).
inline constexpr std::uint64_t substream_seed(std::uint64_t trial_base, Stream purpose) {
  return splitmix64(trial_base ^ static_cast<std::uint64_t>(purpose));
}

inline Rng make_rng(std::uint64_t trial_base, Stream purpose) { return Rng{substream_seed(trial_base, purpose)}; }

inline Rng make_rng(std::uint64_t master, std::uint64_t trial, Stream purpose) {
  return make_rng(trial_seed(master, trial), purpose);
}

}  // namespace rainbow
