// Copyright 2026 The gumbel-sampling Authors.
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

#include "gumbel/rng.hpp"

#include <stdexcept>

namespace gumbel {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;
constexpr int kPhiloxRounds = 10;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline std::array<std::uint32_t, 4> philox_round(
    const std::array<std::uint32_t, 4>& ctr,
    const std::array<std::uint32_t, 2>& key) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM4x32A, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM4x32B, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < kPhiloxRounds; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW32A;
      key[1] += kPhiloxW32B;
    }
    ctr = philox_round(ctr, key);
  }
  return ctr;
}

std::uint64_t random_bits(const RngState& state) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(state.counter),
      static_cast<std::uint32_t>(state.counter >> 32),
      static_cast<std::uint32_t>(state.stream_id),
      static_cast<std::uint32_t>(state.stream_id >> 32)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(state.seed),
      static_cast<std::uint32_t>(state.seed >> 32)};
  const auto out = philox4x32(ctr, key);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double bits_to_open_unit(std::uint64_t bits) {
  // 52 bits keeps (2^52 - 0.5) exactly representable, so 1.0 is never hit.
  constexpr double kScale = 1.0 / 4503599627370496.0;  // 2^-52
  return (static_cast<double>(bits >> 12) + 0.5) * kScale;
}

UniformDraw next_uniform(const RngState& state) {
  RngState next = state;
  ++next.counter;
  return {bits_to_open_unit(random_bits(state)), next};
}

double draw_uniform(RngState& state) {
  const double u = bits_to_open_unit(random_bits(state));
  ++state.counter;
  return u;
}

RngState fork_stream(const RngState& state, std::uint64_t new_stream_id) {
  if (new_stream_id == state.stream_id) {
    throw std::invalid_argument("fork_stream: child stream id equals parent");
  }
  return RngState{state.seed, new_stream_id, 0};
}

}  // namespace gumbel
