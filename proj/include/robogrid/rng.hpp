// Copyright 2026 The RoboGrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBOGRID_RNG_HPP_
#define ROBOGRID_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>

namespace robogrid {

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions in <random> are not, so every draw below is
// derived from raw engine output to keep datasets identical across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi] (inclusive), by rejection.
  std::int64_t uniformInt(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniformInt: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniformInt(0, static_cast<std::int64_t>(n) - 1));
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  // Index drawn proportionally to non-negative weights.
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("categorical: weights sum to zero");
    double u = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    // Rounding can leave u marginally above the last bucket.
    for (std::size_t i = weights.size(); i-- > 0;) {
      if (weights[i] > 0.0) return i;
    }
    return 0;
  }

 private:
  std::mt19937_64 engine_;
};

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

// Mixes a base seed with a sequence of tags into an independent child seed.
inline std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(base ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t deriveSeed(std::uint64_t base, std::string_view tag) {
  return deriveSeed(base, fnv1a64(tag));
}

template <typename... Tags>
std::uint64_t deriveSeed(std::uint64_t base, const auto& first, const Tags&... rest) requires(sizeof...(Tags) > 0) {
  return deriveSeed(deriveSeed(base, first), rest...);
}

}  // namespace robogrid

#endif  // ROBOGRID_RNG_HPP_
