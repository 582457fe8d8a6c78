// Copyright 2026 The bwlab Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bwlab {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a sub-stream seed from a master seed and a fixed tag. Every random
/// choice in the library flows from one master seed through this rule, so any
/// artifact is reproducible byte-for-byte from {seed, params}.
inline uint64_t derive_seed(uint64_t master, uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

namespace seed_tag {
inline constexpr uint64_t kCompile = 0x636f6d70696c65ULL;
inline constexpr uint64_t kObfuscate = 0x6f6266757363ULL;
inline constexpr uint64_t kRun = 0x72756eULL;
inline constexpr uint64_t kChallenger = 0x6368616cULL;
inline constexpr uint64_t kRehearse = 0x72656865ULL;
inline constexpr uint64_t kTrial = 0x747269616cULL;
inline constexpr uint64_t kGuess = 0x6775657373ULL;
inline constexpr uint64_t kAudit = 0x6175646974ULL;
}  // namespace seed_tag

/// Deterministic random stream. Bounded draws use rejection sampling and
/// shuffles are explicit Fisher-Yates: std::uniform_int_distribution and
/// std::shuffle are implementation-defined, which would break the byte-exact
/// reproducibility contract for emitted artifacts.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t bounded(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  int bit() { return static_cast<int>(gen_() >> 63); }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates shuffle, descending index.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bwlab
