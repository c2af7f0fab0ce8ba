// Copyright 2026 The lerw Authors
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

#ifndef LERW_RNG_HPP_
#define LERW_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace lerw {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"). Counter-based: output is a pure function of
// (counter, key), so independent streams need no shared state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// A reproducible stream identified by (master_seed, stream_id). Trajectory
// i of an experiment uses stream i, which makes results independent of how
// trajectories are scheduled across workers.
class RngStream {
 public:
  using result_type = std::uint32_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_double();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace lerw

#endif  // LERW_RNG_HPP_
