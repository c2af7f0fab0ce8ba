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

#include "lerw/rng.hpp"

namespace lerw {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)},
      stream_id_(stream_id) {}

void RngStream::refill() {
  buffer_ = philox4x32({static_cast<std::uint32_t>(block_),
                        static_cast<std::uint32_t>(block_ >> 32),
                        static_cast<std::uint32_t>(stream_id_),
                        static_cast<std::uint32_t>(stream_id_ >> 32)},
                       key_);
  ++block_;
  used_ = 0;
}

RngStream::result_type RngStream::operator()() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t hi = (*this)();
  const std::uint64_t lo = (*this)();
  return (hi << 32) | lo;
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace lerw
