// Copyright 2026 The Surro Authors
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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "surro/csv.hpp"
#include "surro/error.hpp"
#include "surro/parallel.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(Rng, UniformStaysInUnitInterval) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(Rng, BelowIsUnbiased) {
  Rng rng(3);
  std::array<int, 3> counts{};
  for (int i = 0; i < 30000; ++i) ++counts[rng.below(3)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Shuffle, IsAPermutation) {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  Rng rng(9);
  shuffle(std::span<int>(v), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  std::vector<int> identity(50);
  std::iota(identity.begin(), identity.end(), 0);
  EXPECT_NE(v, identity);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 7), derive_seed(5, 7));
}

TEST(CounterStream, OpenIntervalAndOrderFree) {
  const CounterStream s(17);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = s.uniform_open(k);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_EQ(s.uniform_open(123), CounterStream(17).uniform_open(123));
}

TEST(NormalQuantile, MatchesErfInverse) {
  // Oracle: Phi(x) = erfc(-x / sqrt 2) / 2 evaluated at the returned quantile.
  for (double p : {1e-12, 1e-6, 0.001, 0.025, 0.2, 0.5, 0.7, 0.975, 0.999, 1 - 1e-9}) {
    const double x = normal_quantile(p);
    const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
    EXPECT_NEAR(back / p, 1.0, 1e-12) << p;
  }
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_THROW(normal_quantile(0.0), InvalidArgument);
  EXPECT_THROW(normal_quantile(1.0), InvalidArgument);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 70 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "30");
  }
}

TEST(ParallelFor, ThreadCapIsAdjustable) {
  set_max_threads(2);
  EXPECT_EQ(max_threads(), 2u);
  set_max_threads(0);
  EXPECT_GE(max_threads(), 1u);
}

TEST(Csv, SplitTrimsFields) {
  const auto f = csv::split_line(" a, b ,c\r");
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], "b");
  EXPECT_EQ(f[2], "c");
}

TEST(Csv, DoublesRoundTrip) {
  for (double v : {0.1, -1234.5678, 1e-300, 6.02214076e23, 0.0}) {
    const auto text = csv::format_double(v);
    double parsed = 0.0;
    ASSERT_TRUE(csv::parse_double(text, parsed));
    EXPECT_EQ(parsed, v);
  }
  double ignored = 0.0;
  EXPECT_FALSE(csv::parse_double("abc", ignored));
  EXPECT_FALSE(csv::parse_double("1.5x", ignored));
}

}  // namespace
}  // namespace surro
