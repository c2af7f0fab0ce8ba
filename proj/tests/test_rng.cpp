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

#include <gtest/gtest.h>

#include <set>

#include "lerw/parallel.hpp"
#include "lerw/rng.hpp"

namespace lerw {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors published with the reference Philox implementation.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, SameSeedAndStreamRepeat) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RngStream, StreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(RngStream(1, s).next_u64());
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_NE(RngStream(1, 0).next_u64(), RngStream(2, 0).next_u64());
}

TEST(RngStream, UnitInterval) {
  RngStream r(3, 0);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.next_double();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(ParallelFor, IndependentOfWorkerCount) {
  auto run = [](unsigned workers) {
    std::vector<std::uint64_t> out(257);
    parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = RngStream(9, i).next_u64(); });
    return out;
  };
  EXPECT_EQ(run(1), run(8));
  EXPECT_EQ(run(1), run(3));
}

TEST(ParallelFor, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace lerw
