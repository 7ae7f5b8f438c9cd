// Copyright 2026 The steinbound Authors.
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

#include <array>
#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace steinbound {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by a 64-bit key and a 64-bit stream id. The output
// at position i of a stream is a pure function of (key, stream id, i), so
// the n-th sample of a Monte Carlo run can be reproduced without replaying
// the preceding ones, whichever worker computes it.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// UniformRandomBitGenerator over a single Philox stream, 64 bits per draw.
class PhiloxEngine {
 public:
  using result_type = std::uint64_t;

  PhiloxEngine(std::uint64_t key, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  Philox4x32::Key key_{};
  Philox4x32::Counter ctr_{};
  Philox4x32::Counter buf_{};
  int used_ = 4;  // 32-bit words of buf_ already consumed
};

/// Derives the Philox key for the substream family `purpose` of a run seed.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t purpose);

/// Standard normal variates drawn from one Philox substream.
class NormalStream {
 public:
  NormalStream(std::uint64_t key, std::uint64_t stream_id) : engine_(key, stream_id) {}

  double operator()() { return normal_(engine_); }
  PhiloxEngine& engine() { return engine_; }

 private:
  PhiloxEngine engine_;
  boost::random::normal_distribution<double> normal_;
};

// Stream-family tags; keep stable, they are part of the reproducibility
// contract of the CLI outputs.
namespace purpose {
inline constexpr std::uint64_t kChaosSamples = 1;
inline constexpr std::uint64_t kChaosMoments = 2;
inline constexpr std::uint64_t kExpFunPaths = 3;
}  // namespace purpose

}  // namespace steinbound
