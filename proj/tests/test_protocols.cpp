// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnetsim/optics.hpp"
#include "qnetsim/protocols.hpp"

namespace qnetsim {
namespace {

Bits random_bits(RngStream& r, size_t n) {
  Bits b(n);
  for (auto& x : b) x = r.bit();
  return b;
}

TEST(Bb84, Encoding) {
  auto close = [](const QuantumState& a, const QuantumState& b) { return fidelity(a, b) > 1 - 1e-12; };
  EXPECT_TRUE(close(bb84_encode(0, 0), QuantumState::basis_state(Axis::Z, 0)));
  EXPECT_TRUE(close(bb84_encode(1, 0), QuantumState::basis_state(Axis::Z, 1)));
  EXPECT_TRUE(close(bb84_encode(0, 1), QuantumState::basis_state(Axis::X, 0)));
  EXPECT_TRUE(close(bb84_encode(1, 1), QuantumState::basis_state(Axis::X, 1)));
  EXPECT_EQ(bb84_encode(1, 1).basis(), Axis::X);
}

TEST(Sift, Examples) {
  const std::vector<bool> all(4, true);
  EXPECT_EQ(sift_indices({0, 1, 1, 0}, {0, 1, 1, 0}, all), (std::vector<uint32_t>{0, 1, 2, 3}));
  EXPECT_TRUE(sift_indices({0, 1, 1, 0}, {1, 0, 0, 1}, all).empty());
  EXPECT_EQ(sift_indices({0, 1, 1, 0}, {0, 0, 1, 1}, all), (std::vector<uint32_t>{0, 2}));
  EXPECT_EQ(sift_indices({0, 1, 1, 0}, {0, 0, 1, 1}, {true, true, false, true}), (std::vector<uint32_t>{0}));
  EXPECT_THROW(sift_indices({0, 1}, {0}, {true, true}), LengthMismatch);

  auto s = sift({0, 1, 1, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 0, 1, 1}, all);
  EXPECT_EQ(s.sifted_alice, (Bits{1, 0}));
  EXPECT_EQ(s.sifted_bob, (Bits{1, 1}));
}

TEST(Qber, Examples) {
  RngStream r(1, "qber");
  Bits a = random_bits(r, 100);
  EXPECT_EQ(estimate_qber(a, a, r).qber, 0.0);
  Bits c = a;
  for (auto& x : c) x ^= 1;
  EXPECT_EQ(estimate_qber(a, c, r).qber, 1.0);

  auto q8 = estimate_qber(Bits(8, 0), Bits(8, 0), r);
  EXPECT_EQ(q8.check_indices.size(), 4u);
  EXPECT_EQ(q8.kept_alice.size(), 4u);
  EXPECT_THROW(estimate_qber({1}, {1}, r), TooShort);
}

TEST(Cascade, ZeroErrorsLeaksOnlyBlockParities) {
  RngStream r(2, "casc");
  for (size_t n : {10u, 64u, 100u}) {
    Bits a = random_bits(r, n);
    const double p = 0.05;
    auto res = cascade_reconcile(a, a, p, r, 4);
    EXPECT_EQ(res.corrected, a);
    EXPECT_EQ(res.queries, 0u);
    uint64_t blocks = 0;
    const uint64_t k1 = cascade_first_block(p, n);
    for (int pass = 0; pass < 4; ++pass) {
      const uint64_t bs = std::min<uint64_t>(k1 << pass, n);
      blocks += (n + bs - 1) / bs;
    }
    EXPECT_EQ(res.parities_leaked, blocks);
  }
}

TEST(Cascade, SingleErrorInOneBlockUsesBinarySearch) {
  RngStream r(3, "casc1");
  const size_t n = 64;
  Bits a = random_bits(r, n);
  for (size_t pos = 0; pos < n; ++pos) {
    Bits b = a;
    b[pos] ^= 1;
    // p_est = 0 makes the first block the whole string.
    auto res = cascade_reconcile(a, b, 0.0, r, 1);
    EXPECT_EQ(res.corrected, a);
    EXPECT_EQ(res.parities_leaked, static_cast<uint64_t>(std::ceil(std::log2(n))) + 1);
  }
}

// Reference Cascade written as a worklist: after each correction, every
// earlier-pass block containing the flipped bit is queued again.
Bits reference_cascade(const Bits& alice, Bits bob, double p, RngStream& rng, int passes) {
  const size_t n = bob.size();
  const size_t k1 = std::clamp<size_t>(static_cast<size_t>(std::ceil(0.73 / p)), 2, n);
  std::vector<std::vector<std::vector<uint32_t>>> pass_sets;
  auto odd = [&](const std::vector<uint32_t>& blk) {
    int d = 0;
    for (uint32_t i : blk) d ^= alice[i] ^ bob[i];
    return d == 1;
  };
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    if (pass > 0) order = rng.permutation(static_cast<uint32_t>(n));
    const size_t bs = std::min(n, k1 << pass);
    std::vector<std::vector<uint32_t>> blocks;
    for (size_t s = 0; s < n; s += bs) blocks.emplace_back(order.begin() + s, order.begin() + std::min(n, s + bs));
    pass_sets.push_back(blocks);
    std::vector<std::vector<uint32_t>> work;
    for (const auto& b : blocks) work.push_back(b);
    while (!work.empty()) {
      auto blk = work.back();
      work.pop_back();
      if (!odd(blk)) continue;
      while (blk.size() > 1) {
        std::vector<uint32_t> half(blk.begin(), blk.begin() + (blk.size() + 1) / 2);
        if (odd(half)) {
          blk = half;
        } else {
          blk.erase(blk.begin(), blk.begin() + half.size());
        }
      }
      bob[blk[0]] ^= 1;
      for (const auto& earlier : pass_sets) {
        for (const auto& b : earlier) {
          if (std::find(b.begin(), b.end(), blk[0]) != b.end()) work.push_back(b);
        }
      }
    }
  }
  return bob;
}

struct Residual {
  double bit_rate;
  double frame_rate;
};

template <typename F>
Residual residual_rates(F reconcile, uint64_t seed) {
  RngStream r(seed, "casc-mc");
  const size_t n = 64;
  const int trials = 2000;
  uint64_t bits = 0, frames = 0;
  for (int t = 0; t < trials; ++t) {
    Bits a = random_bits(r, n);
    Bits b = a;
    for (auto& x : b) x ^= r.bernoulli(0.05);
    Bits out = reconcile(a, b, r);
    uint64_t e = 0;
    for (size_t i = 0; i < n; ++i) e += out[i] != a[i];
    bits += e;
    frames += e > 0;
  }
  return {static_cast<double>(bits) / (n * trials), static_cast<double>(frames) / trials};
}

TEST(Cascade, ResidualMatchesReferenceImplementation) {
  auto ours = residual_rates([](const Bits& a, const Bits& b, RngStream& r) {
    return cascade_reconcile(a, b, 0.05, r, 4).corrected;
  }, 4);
  auto ref = residual_rates([](const Bits& a, const Bits& b, RngStream& r) {
    return reference_cascade(a, b, 0.05, r, 4);
  }, 5);
  // Frame failure rates near 0.2; 4 sigma of the difference at 2000 trials each.
  EXPECT_NEAR(ours.frame_rate, ref.frame_rate, 4 * std::sqrt(2 * 0.25 * 0.75 / 2000));
  EXPECT_LT(ours.bit_rate, 0.05 / 2);
}

// At 64 bits the doubled blocks cover the whole key by the last pass, so
// error pairs that share blocks in every pass survive; see the decisions log.
TEST(Cascade, ResidualErrorBelowOnePerMille) {
  auto ours = residual_rates([](const Bits& a, const Bits& b, RngStream& r) {
    return cascade_reconcile(a, b, 0.05, r, 4).corrected;
  }, 4);
  EXPECT_LT(ours.bit_rate, 1e-3);
}

TEST(Toeplitz, Examples) {
  ToeplitzSpec zero{3, 5, Bits(7, 0)};
  EXPECT_EQ(toeplitz_hash(zero, {1, 1, 0, 1, 1}), (Bits{0, 0, 0}));

  ToeplitzSpec id{4, 4, Bits(7, 0)};
  id.r[3] = 1;  // r_0
  EXPECT_EQ(toeplitz_hash(id, {1, 0, 1, 1}), (Bits{1, 0, 1, 1}));

  ToeplitzSpec ex{2, 3, {1, 0, 1, 1}};
  EXPECT_EQ(toeplitz_hash(ex, {1, 0, 1}), (Bits{0, 1}));

  EXPECT_THROW(toeplitz_hash(ex, {1, 0}), LengthMismatch);
}

// Direct matrix build and GF(2) product.
Bits brute_force(const ToeplitzSpec& s, const Bits& key) {
  std::vector<Bits> t(s.f, Bits(s.i, 0));
  for (uint32_t m = 0; m < s.f; ++m) {
    for (uint32_t j = 0; j < s.i; ++j) {
      const int k = static_cast<int>(m) - static_cast<int>(j);  // r_k
      t[m][j] = s.r[static_cast<size_t>(k + static_cast<int>(s.i) - 1)];
    }
  }
  Bits out(s.f, 0);
  for (uint32_t m = 0; m < s.f; ++m) {
    for (uint32_t j = 0; j < s.i; ++j) out[m] ^= t[m][j] & key[j];
  }
  return out;
}

TEST(Toeplitz, MatchesBruteForceAndIsLinear) {
  RngStream r(5, "toep");
  for (int t = 0; t < 200; ++t) {
    const uint32_t i = 2 + static_cast<uint32_t>(r.below(40));
    const uint32_t f = 1 + static_cast<uint32_t>(r.below(i));
    auto spec = random_toeplitz(f, i, r);
    Bits a = random_bits(r, i), b = random_bits(r, i), ab(i);
    for (uint32_t k = 0; k < i; ++k) ab[k] = a[k] ^ b[k];
    auto ha = toeplitz_hash(spec, a), hb = toeplitz_hash(spec, b), hab = toeplitz_hash(spec, ab);
    EXPECT_EQ(ha, brute_force(spec, a));
    for (uint32_t m = 0; m < f; ++m) EXPECT_EQ(hab[m], ha[m] ^ hb[m]);
  }
}

TEST(Toeplitz, CollisionRateNearTwoToMinusF) {
  RngStream r(6, "coll");
  const uint32_t f = 6, i = 32;
  const int trials = 20000;
  int coll = 0;
  for (int t = 0; t < trials; ++t) {
    auto spec = random_toeplitz(f, i, r);
    Bits a = random_bits(r, i), b = random_bits(r, i);
    if (a == b) continue;
    coll += toeplitz_hash(spec, a) == toeplitz_hash(spec, b);
  }
  const double q = 1.0 / 64;
  EXPECT_NEAR(static_cast<double>(coll) / trials, q, 4 * std::sqrt(q / trials));
}

TEST(PrivacyAmplification, OutputLength) {
  EXPECT_EQ(pa_output_length(100), 50u);
  EXPECT_EQ(pa_output_length(3), 1u);
  EXPECT_EQ(pa_output_length(2), 1u);
  EXPECT_THROW(pa_output_length(1), TooShort);
}

DetectionOutcome bell_hits(const std::string& a, const std::string& b) {
  return {Verdict::Bell, {{a, 1, TriggerKind::True, 0}, {b, 2, TriggerKind::True, 0}}};
}

TEST(Bsm, Classification) {
  EXPECT_EQ(classify_bsm(bell_hits("D1", "D2")), BsmOutcome::PsiPlus);
  EXPECT_EQ(classify_bsm(bell_hits("D4", "D3")), BsmOutcome::PsiPlus);
  EXPECT_EQ(classify_bsm(bell_hits("D2", "D4")), BsmOutcome::PsiMinus);
  EXPECT_EQ(classify_bsm(bell_hits("D3", "D1")), BsmOutcome::PsiMinus);
  EXPECT_EQ(classify_bsm(bell_hits("D1", "D1")), BsmOutcome::PhiAmbiguous);
  EXPECT_EQ(classify_bsm(bell_hits("D1", "D4")), BsmOutcome::PhiAmbiguous);
  EXPECT_EQ(classify_bsm(bell_hits("D2", "D3")), BsmOutcome::PhiAmbiguous);
  EXPECT_EQ(classify_bsm({Verdict::NoBellPair, {}}), BsmOutcome::NoDetection);
  EXPECT_THROW(classify_bsm(bell_hits("D1", "DT1")), UnknownDetector);
}

// Interfering ideal Bell pairs at the NPBS and routing through the two PBSs
// reproduces the classification table.
TEST(Bsm, ClassificationAgreesWithOptics) {
  RngStream r(7, "bsm-optics");
  auto detector = [](int port, int pol) {
    if (port == 3) return pol == 0 ? "D2" : "D1";
    return pol == 0 ? "D3" : "D4";
  };
  for (Bell b : {Bell::PsiPlus, Bell::PsiMinus}) {
    for (int i = 0; i < 2000; ++i) {
      auto [pa, pb] = make_pair_photons(1, 2, bell_state(b), 0);
      auto out = npbs_interfere({0.5}, pa, pb, r);
      auto cls = classify_bsm(bell_hits(detector(out.port_a, out.pol_a), detector(out.port_b, out.pol_b)));
      ASSERT_EQ(cls, b == Bell::PsiPlus ? BsmOutcome::PsiPlus : BsmOutcome::PsiMinus);
    }
  }
}

// Oracle: Bob's state after projecting (target, A) onto the detected Bell state.
Vec bob_after_projection(const Vec& target, Bell shared, Bell detected) {
  Vec joint = kron(target, bell_state(shared).coeffs());  // order T, A, B
  Vec proj = bell_state(detected).coeffs();               // on (T, A)
  Vec bob = Vec::Zero(2);
  for (int ta = 0; ta < 4; ++ta) {
    for (int b = 0; b < 2; ++b) bob(b) += std::conj(proj(ta)) * joint((ta << 1) | b);
  }
  return bob.normalized();
}

TEST(TeleportCorrection, TableAlgebraIsExact) {
  const std::vector<QuantumState> targets{QuantumState::basis_state(Axis::Z, 0), QuantumState::basis_state(Axis::Z, 1),
                                          QuantumState::basis_state(Axis::X, 0), QuantumState::basis_state(Axis::X, 1)};
  int rows = 0;
  for (Bell shared : {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus}) {
    for (Bell detected : {Bell::PsiPlus, Bell::PsiMinus}) {
      ++rows;
      auto held = teleport_correction(shared, detected == Bell::PsiPlus ? BsmOutcome::PsiPlus : BsmOutcome::PsiMinus);
      for (const auto& t : targets) {
        auto bob = QuantumState::ket(bob_after_projection(t.coeffs(), shared, detected));
        auto expect = QuantumState::ket(held.matrix() * t.coeffs());
        EXPECT_NEAR(fidelity(bob, expect), 1.0, 1e-12) << bell_name(shared) << " " << bell_name(detected);
        auto undone = apply_unitary(bob, held.matrix().adjoint());
        EXPECT_NEAR(fidelity(undone, t), 1.0, 1e-12);
      }
    }
  }
  EXPECT_EQ(rows, 8);
}

TEST(TeleportCorrection, Examples) {
  EXPECT_EQ(teleport_correction(Bell::PsiPlus, BsmOutcome::PsiPlus).str(), "I");
  EXPECT_EQ(teleport_correction(Bell::PhiMinus, BsmOutcome::PsiPlus).str(), "ZX");
  auto held = teleport_correction(Bell::PsiMinus, BsmOutcome::PsiMinus);
  EXPECT_EQ(held.str(), "XZXZ");
  // XZXZ = -I: populations untouched, so the measured bit stays.
  for (int bit : {0, 1}) {
    auto out = QuantumState::ket(held.matrix() * QuantumState::basis_state(Axis::Z, bit).coeffs());
    EXPECT_NEAR(fidelity(out, QuantumState::basis_state(Axis::Z, bit)), 1, 1e-12);
    EXPECT_EQ(bob_corrected_bit(bit, held), bit);
  }
  EXPECT_THROW(teleport_correction(Bell::PsiMinus, BsmOutcome::PhiAmbiguous), Unsupported);
}

TEST(TeleportCorrection, CorrectedBitMatchesMatrix) {
  for (Bell shared : {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus}) {
    for (BsmOutcome d : {BsmOutcome::PsiPlus, BsmOutcome::PsiMinus}) {
      auto held = teleport_correction(shared, d);
      for (int bit : {0, 1}) {
        Vec v = held.matrix() * QuantumState::basis_state(Axis::Z, bit).coeffs();
        const int measured = std::norm(v(1)) > 0.5 ? 1 : 0;
        EXPECT_EQ(bob_corrected_bit(measured, held), bit);
      }
    }
  }
}

TEST(BsmMessage, RoundTrip) {
  EXPECT_EQ(read_bsm_message(bsm_message(BsmOutcome::PsiPlus)), BsmOutcome::PsiPlus);
  EXPECT_EQ(read_bsm_message(bsm_message(BsmOutcome::PsiMinus)), BsmOutcome::PsiMinus);
  EXPECT_EQ(bsm_message(BsmOutcome::PsiMinus).payload, (std::vector<uint8_t>{1}));
  EXPECT_THROW(bsm_message(BsmOutcome::NoDetection), Unsupported);
}

// Ideal BB84 with perfect state transfer: sifted keys agree and Cascade leaves them unchanged.
TEST(Bb84, NoiselessProtocolRound) {
  RngStream r(8, "bb84");
  const size_t n = 512;
  Bits p(n), q(n), qp(n), pp(n);
  for (size_t k = 0; k < n; ++k) {
    p[k] = r.bit();
    q[k] = r.bit();
    qp[k] = r.bit();
    auto s = bb84_encode(p[k], q[k]);
    pp[k] = static_cast<uint8_t>(measure(s, Basis::of(qp[k] ? Axis::X : Axis::Z), r).outcome);
  }
  auto s = sift(q, qp, p, pp, std::vector<bool>(n, true));
  EXPECT_EQ(s.sifted_alice, s.sifted_bob);
  auto qr = estimate_qber(s.sifted_alice, s.sifted_bob, r);
  EXPECT_EQ(qr.qber, 0.0);
  auto rec = cascade_reconcile(qr.kept_alice, qr.kept_bob, 0.02, r);
  auto spec = random_toeplitz(pa_output_length(rec.corrected.size()), static_cast<uint32_t>(rec.corrected.size()), r);
  EXPECT_EQ(toeplitz_hash(spec, qr.kept_alice), toeplitz_hash(spec, rec.corrected));
}

}  // namespace
}  // namespace qnetsim
