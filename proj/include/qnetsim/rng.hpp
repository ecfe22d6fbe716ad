// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace qnetsim {

/// SplitMix64 finalizer, used to decorrelate derived seeds.
inline constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over the bytes of a component name. Stable across platforms,
/// unlike std::hash.
inline constexpr uint64_t stable_hash(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline constexpr uint64_t derive_seed(uint64_t master, uint64_t salt) {
  return mix64(master ^ mix64(salt));
}

/**
 * A reproducible random stream.
 *
 * The engine is mt19937_64 (fully specified by the standard) and the
 * distributions come from Boost.Random, whose algorithms do not vary between
 * standard library implementations. Equal (seed, stream id) pairs give equal
 * draw sequences.
 */
class RngStream {
 public:
  RngStream(uint64_t master_seed, std::string_view stream_id)
      : seed_(master_seed), stream_id_(stable_hash(stream_id)),
        engine_(derive_seed(master_seed, stream_id_)) {}

  RngStream(uint64_t master_seed, uint64_t stream_id)
      : seed_(master_seed), stream_id_(stream_id),
        engine_(derive_seed(master_seed, stream_id)) {}

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform() { return boost::random::uniform_01<double>()(engine_); }

  bool bernoulli(double p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return uniform() < p;
  }

  double normal() { return boost::random::normal_distribution<double>(0.0, 1.0)(engine_); }

  /// Exponential with the given rate (events per unit time).
  double exponential(double rate) {
    return boost::random::exponential_distribution<double>(rate)(engine_);
  }

  uint64_t poisson(double mean) {
    if (mean <= 0) return 0;
    return boost::random::poisson_distribution<uint64_t, double>(mean)(engine_);
  }

  uint64_t binomial(uint64_t n, double p) {
    if (n == 0 || p <= 0) return 0;
    if (p >= 1) return n;
    return boost::random::binomial_distribution<int64_t, double>(static_cast<int64_t>(n), p)(engine_);
  }

  /// Uniform integer on [0, n).
  uint64_t below(uint64_t n) {
    return boost::random::uniform_int_distribution<uint64_t>(0, n - 1)(engine_);
  }

  uint8_t bit() { return static_cast<uint8_t>(below(2)); }

  /// Uniform random permutation of 0..n-1 (Fisher-Yates).
  std::vector<uint32_t> permutation(uint32_t n) {
    std::vector<uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (uint32_t i = n; i > 1; --i) {
      std::swap(p[i - 1], p[below(i)]);
    }
    return p;
  }

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace qnetsim
