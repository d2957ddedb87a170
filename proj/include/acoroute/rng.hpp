// Copyright 2026 The acoroute Authors
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

#include <array>
#include <cstdint>

namespace acoroute {

// Counter-based generator (Philox 4x32, 10 rounds). Every draw is a pure
// function of (key, counter), so any thread can produce the draw for any
// (instance, iteration, ant, order) without shared state. That is what makes
// run results independent of worker count and scheduling.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      std::array<std::uint32_t, 4> next{
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0)};
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// (x + 0.5) * 2^-32: strictly inside (0, 1), so "u <= q0" is always true at
// q0 = 1 and always false at q0 = 0.
inline double to_unit(std::uint32_t x) {
  return (static_cast<double>(x) + 0.5) * (1.0 / 4294967296.0);
}

inline std::array<std::uint32_t, 2> key_from_seed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

// Identifies one ant's construction pass. Fields are packed into the fourth
// counter word; the limits (instances < 2^20, ants < 256, retries < 16) are
// far above anything the experiment protocol uses.
struct DrawKey {
  std::uint64_t master_seed = 0;
  std::uint32_t instance = 0;
  std::uint32_t ant = 0;
  std::uint32_t retry = 0;
  std::uint32_t iteration = 0;

  std::uint32_t packed() const {
    return (instance << 12) | (ant << 4) | retry;
  }
};

// slot 0 = exploitation/exploration gate, slot 1 = roulette position
inline double uniform_draw(const DrawKey& k, std::uint32_t order,
                           std::uint32_t slot) {
  auto out = Philox4x32::block({slot, order, k.iteration, k.packed()},
                               key_from_seed(k.master_seed));
  return to_unit(out[0]);
}

// Per-order stream handed to select_route: consecutive calls walk the slots.
struct OrderDraws {
  const DrawKey* key;
  std::uint32_t order;
  std::uint32_t slot = 0;

  double operator()() { return uniform_draw(*key, order, slot++); }
};

// splitmix64 finalizer; used for seed derivation and the instance generator
// where stream splitting is not needed.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a + 0x9E3779B97F4A7C15ull * (b + 0x632BE59BD9B4E019ull));
}

struct Sm64 {
  std::uint64_t state = 0;

  explicit Sm64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
  }

  double next_unit() {  // [0, 1)
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
  }

  // uniform integer in [0, n); n > 0
  std::uint64_t next_below(std::uint64_t n) {
    return next() % n;  // bias < 2^-53 for the small n used here
  }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  double operator()() { return next_unit(); }
};

}  // namespace acoroute
