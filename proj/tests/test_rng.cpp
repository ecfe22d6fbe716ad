// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnetsim/rng.hpp"

namespace qnetsim {
namespace {

TEST(StableHash, MatchesFnv1aReference) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(stable_hash("foobar"), 0x85944171f73967e8ULL);
}

TEST(RngStream, SameSeedAndIdGiveSameSequence) {
  RngStream a(42, "QC"), b(42, "QC");
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
}

TEST(RngStream, DifferentIdsDiverge) {
  RngStream a(42, "QC"), b(42, "QD");
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.uniform() == b.uniform();
  EXPECT_LT(equal, 2);
}

TEST(RngStream, GoldenValueIsStable) {
  // The engine is fully specified, so the first raw draw is fixed by the seed.
  std::mt19937_64 ref(derive_seed(7, stable_hash("golden")));
  const uint64_t expect = ref();
  std::mt19937_64 again(derive_seed(7, stable_hash("golden")));
  EXPECT_EQ(again(), expect);
  RngStream s(7, "golden");
  RngStream t(7, "golden");
  EXPECT_EQ(s.below(1u << 30), t.below(1u << 30));
}

TEST(RngStream, UniformMeanAndRange) {
  RngStream r(1, "u");
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12 / n)
  EXPECT_NEAR(sum / n, 0.5, 3 * std::sqrt(1.0 / 12 / n));
}

TEST(RngStream, PoissonMean) {
  RngStream r(2, "p");
  const int n = 10000;
  const double mu = 1e5;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(r.poisson(mu));
  EXPECT_NEAR(sum / n, mu, 3 * std::sqrt(mu / n));
}

TEST(RngStream, BernoulliEdges) {
  RngStream r(3, "b");
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(r.bernoulli(0.0));
    ASSERT_TRUE(r.bernoulli(1.0));
  }
}

TEST(RngStream, PermutationIsAPermutation) {
  RngStream r(4, "perm");
  auto p = r.permutation(1000);
  std::vector<uint32_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<uint32_t> iota(1000);
  std::iota(iota.begin(), iota.end(), 0u);
  EXPECT_EQ(sorted, iota);
  EXPECT_NE(p, iota);
}

TEST(RngStream, ExponentialMean) {
  RngStream r(5, "e");
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += r.exponential(100.0);
  EXPECT_NEAR(sum / n, 0.01, 3 * 0.01 / std::sqrt(n));
}

}  // namespace
}  // namespace qnetsim
