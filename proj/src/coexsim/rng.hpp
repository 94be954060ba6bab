// Copyright 2026 The coexsim Authors
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

#ifndef COEXSIM_RNG_HPP_
#define COEXSIM_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace coexsim {

// One splitmix64 step; used only to derive stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, for turning stream-name tags into mix words at compile time.
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Folds a base seed and any number of mix words into an independent
// stream seed. Distinct word sequences give unrelated streams, so node
// categories, experiment cells, and episodes each get their own stream.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> words) {
  std::uint64_t s = base;
  std::uint64_t out = splitmix64(s);
  for (std::uint64_t w : words) {
    s ^= w + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    out ^= splitmix64(s);
  }
  return out;
}

// Deterministic random stream. Draws come from mt19937_64 (whose output
// sequence is fixed by the standard); the distribution transforms below are
// our own so results are bit-identical across platforms and library
// versions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n); n must be >= 1.
  std::uint32_t uniform_int(std::uint32_t n) {
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      std::uint64_t threshold = (0ULL - static_cast<std::uint64_t>(n)) % n;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 64);
  }

  // Unit-mean exponential draw (squared Rayleigh amplitude).
  double exponential() {
    double u = uniform();
    return -std::log1p(-u);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coexsim

#endif  // COEXSIM_RNG_HPP_
