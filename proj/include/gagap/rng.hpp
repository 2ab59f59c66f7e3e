// gagap/rng.hpp
//
// Copyright 2026 Gagap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAGAP_RNG_HPP
#define GAGAP_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "gagap/errors.hpp"

// Reproducibility contract: every random decision in the library flows
// through this header. The engine is std::mt19937_64, whose output sequence
// is pinned by the C++ standard, and all mappings from raw 64-bit draws to
// values are implemented here by hand -- std::uniform_*_distribution is
// deliberately avoided because its draw sequence is implementation-defined.
// Each helper consumes exactly one engine draw unless stated otherwise, so
// streams can be reasoned about and replayed.

namespace gagap::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives a child seed from a base seed and a stream tag (utterance id,
// stage name, line number...). Corpus-level parallelism hands every task its
// own derived seed, so parallel output equals serial output.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  return splitmix64(base ^ fnv1a64(tag));
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

// [0, 1), 53-bit resolution. One draw.
inline double uniform_unit(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// True with probability p. Always consumes one draw, also for p <= 0 and
// p >= 1, so the stream layout does not depend on the probability value.
inline bool bernoulli(Engine& eng, double p) { return uniform_unit(eng) < p; }

// Uniform in [lo, hi], inclusive. One draw. Uses modulo reduction; for the
// small ranges used here (filler lists, copy counts) the bias is < 2^-50.
inline std::uint64_t uniform_u64(Engine& eng, std::uint64_t lo,
                                 std::uint64_t hi) {
  return lo + eng() % (hi - lo + 1);
}

inline int uniform_int(Engine& eng, int lo, int hi) {
  return static_cast<int>(uniform_u64(eng, static_cast<std::uint64_t>(lo),
                                      static_cast<std::uint64_t>(hi)));
}

// Uniform index into [0, n). One draw.
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
  return static_cast<std::size_t>(eng() % n);
}

// Uniform in [lo, hi). One draw.
inline double uniform_real(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(eng);
}

// Index drawn proportionally to non-negative weights. One draw.
// Throws ConfigError when the total weight is not positive.
inline std::size_t weighted_index(Engine& eng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw ConfigError("weighted_index: total weight must be > 0");
  double r = uniform_unit(eng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

}  // namespace gagap::rng

#endif  // GAGAP_RNG_HPP
