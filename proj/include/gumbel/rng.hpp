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

#pragma once

#include <array>
#include <cstdint>

namespace gumbel {

/// Counter-based uniform source. The whole sequence is a pure function of
/// (seed, stream_id); `counter` is the position inside that sequence.
///
/// Each step evaluates Philox4x32-10 keyed by the seed on the block
/// (counter, stream_id), so any stream and any position is addressable
/// without skipping.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t counter = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

struct UniformDraw {
  double u;
  RngState next;
};

/// Raw Philox4x32-10 block for the given key and 128-bit counter.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// 64 random bits at position `state.counter` of the stream.
std::uint64_t random_bits(const RngState& state);

/// Maps 64 raw bits to (n + 0.5) / 2^52 using the top 52 bits. The result is
/// strictly inside (0, 1); both endpoints are representable exclusions.
double bits_to_open_unit(std::uint64_t bits);

/// Pure draw: returns the uniform at the current position and the advanced
/// state.
[[nodiscard]] UniformDraw next_uniform(const RngState& state);

/// In-place convenience used by the samplers: equivalent to
/// `auto d = next_uniform(state); state = d.next; return d.u;`.
double draw_uniform(RngState& state);

/// Child stream with the same seed and a fresh counter. Throws
/// std::invalid_argument if `new_stream_id` equals the parent's stream.
[[nodiscard]] RngState fork_stream(const RngState& state,
                                   std::uint64_t new_stream_id);

}  // namespace gumbel
