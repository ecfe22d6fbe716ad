// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/detection.hpp"
#include "qnetsim/links.hpp"
#include "qnetsim/qstate.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

using Bits = std::vector<uint8_t>;

// ---------------------------------------------------------------------------
// BB84 encoding and sifting.

/// (bit, basis) -> |0>, |1>, |+>, |->.
inline QuantumState bb84_encode(int bit, int basis) {
  return QuantumState::basis_state(basis == 0 ? Axis::Z : Axis::X, bit);
}

struct SiftResult {
  std::vector<uint32_t> indices;
  Bits sifted_alice;
  Bits sifted_bob;
};

inline std::vector<uint32_t> sift_indices(const Bits& q, const Bits& q_prime, const std::vector<bool>& received) {
  if (q.size() != q_prime.size() || q.size() != received.size()) throw LengthMismatch("sift inputs differ in length");
  std::vector<uint32_t> idx;
  for (size_t k = 0; k < q.size(); ++k) {
    if (received[k] && q[k] == q_prime[k]) idx.push_back(static_cast<uint32_t>(k));
  }
  return idx;
}

inline Bits select_bits(const Bits& bits, const std::vector<uint32_t>& idx) {
  Bits out;
  out.reserve(idx.size());
  for (uint32_t i : idx) {
    if (i >= bits.size()) throw LengthMismatch("index beyond bit string");
    out.push_back(bits[i]);
  }
  return out;
}

inline SiftResult sift(const Bits& q, const Bits& q_prime, const Bits& p, const Bits& p_prime,
                       const std::vector<bool>& received) {
  if (p.size() != q.size() || p_prime.size() != q.size()) throw LengthMismatch("sift inputs differ in length");
  SiftResult r;
  r.indices = sift_indices(q, q_prime, received);
  r.sifted_alice = select_bits(p, r.indices);
  r.sifted_bob = select_bits(p_prime, r.indices);
  return r;
}

// ---------------------------------------------------------------------------
// Error estimation.

/// floor(n/2) distinct positions, sorted.
inline std::vector<uint32_t> choose_check_indices(size_t n, RngStream& rng) {
  if (n < 2) throw TooShort("need at least 2 sifted bits to estimate the error rate");
  auto perm = rng.permutation(static_cast<uint32_t>(n));
  std::vector<uint32_t> idx(perm.begin(), perm.begin() + static_cast<long>(n / 2));
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct QberResult {
  double qber = 0;
  std::vector<uint32_t> check_indices;
  Bits kept_alice;
  Bits kept_bob;
};

/// Error rate on the check positions; the remaining bits are returned as the key.
inline QberResult qber_from_check(const Bits& a, const Bits& b, std::vector<uint32_t> check) {
  if (a.size() != b.size()) throw LengthMismatch("sifted strings differ in length");
  QberResult r;
  std::vector<bool> is_check(a.size(), false);
  size_t errors = 0;
  for (uint32_t i : check) {
    is_check[i] = true;
    errors += a[i] != b[i];
  }
  r.qber = check.empty() ? 0.0 : static_cast<double>(errors) / static_cast<double>(check.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_check[i]) continue;
    r.kept_alice.push_back(a[i]);
    r.kept_bob.push_back(b[i]);
  }
  r.check_indices = std::move(check);
  return r;
}

inline QberResult estimate_qber(const Bits& a, const Bits& b, RngStream& rng) {
  if (a.size() != b.size()) throw LengthMismatch("sifted strings differ in length");
  return qber_from_check(a, b, choose_check_indices(a.size(), rng));
}

inline constexpr double kDefaultQberThreshold = 0.11;

// ---------------------------------------------------------------------------
// Cascade reconciliation.

inline uint8_t parity_of(const Bits& bits, const std::vector<uint32_t>& idx) {
  uint8_t p = 0;
  for (uint32_t i : idx) p ^= bits[i];
  return p;
}

/// What Alice publishes at the start of a pass.
struct PassAnnouncement {
  std::vector<uint32_t> permutation;  // position -> key index
  Bits block_parities;
};

inline std::vector<std::vector<uint32_t>> pass_blocks(const std::vector<uint32_t>& perm, uint32_t block_size) {
  std::vector<std::vector<uint32_t>> blocks;
  for (size_t start = 0; start < perm.size(); start += block_size) {
    size_t end = std::min(perm.size(), start + block_size);
    blocks.emplace_back(perm.begin() + static_cast<long>(start), perm.begin() + static_cast<long>(end));
  }
  return blocks;
}

/// Alice's side of Cascade: owns her key and the shuffle randomness.
class CascadeAlice {
 public:
  CascadeAlice(Bits key, RngStream& rng) : key_(std::move(key)), rng_(rng) {}

  PassAnnouncement announce(int pass, uint32_t block_size) {
    PassAnnouncement a;
    const auto n = static_cast<uint32_t>(key_.size());
    if (pass == 0) {
      a.permutation.resize(n);
      for (uint32_t i = 0; i < n; ++i) a.permutation[i] = i;
    } else {
      a.permutation = rng_.permutation(n);
    }
    for (const auto& blk : pass_blocks(a.permutation, block_size)) a.block_parities.push_back(parity_of(key_, blk));
    return a;
  }

  Bits parities(const std::vector<std::vector<uint32_t>>& sets) const {
    Bits out;
    for (const auto& s : sets) out.push_back(parity_of(key_, s));
    return out;
  }

 private:
  Bits key_;
  RngStream& rng_;
};

/// How Bob reaches Alice during Cascade.
class CascadeTransport {
 public:
  virtual ~CascadeTransport() = default;
  virtual PassAnnouncement announce(int pass, uint32_t block_size) = 0;
  virtual Bits query(const std::vector<std::vector<uint32_t>>& sets) = 0;
  virtual void end_pass() = 0;
};

/// Direct in-memory transport.
class LocalCascadeTransport : public CascadeTransport {
 public:
  explicit LocalCascadeTransport(CascadeAlice& alice) : alice_(alice) {}
  PassAnnouncement announce(int pass, uint32_t block_size) override { return alice_.announce(pass, block_size); }
  Bits query(const std::vector<std::vector<uint32_t>>& sets) override { return alice_.parities(sets); }
  void end_pass() override {}

 private:
  CascadeAlice& alice_;
};

struct CascadeResult {
  Bits corrected;
  uint64_t parities_leaked = 0;
  uint64_t queries = 0;
};

inline uint32_t cascade_first_block(double p_est, size_t n) {
  if (n < 2) return static_cast<uint32_t>(std::max<size_t>(n, 1));
  double k = p_est > 0 ? std::ceil(0.73 / p_est) : static_cast<double>(n);
  k = std::clamp(k, 2.0, static_cast<double>(n));
  return static_cast<uint32_t>(k);
}

/**
 * Bob's side of canonical Cascade: `passes` passes with doubling block size,
 * binary search inside every odd block, and back-correction of blocks from
 * earlier passes whose parity a correction flipped.
 */
inline CascadeResult cascade_bob(Bits bob, double p_est, CascadeTransport& link, int passes = 4) {
  CascadeResult res;
  const size_t n = bob.size();
  if (n == 0) {
    res.corrected = std::move(bob);
    return res;
  }
  const uint32_t k1 = cascade_first_block(p_est, n);

  struct Pass {
    std::vector<std::vector<uint32_t>> blocks;
    Bits alice;
    std::vector<uint32_t> block_of;  // key index -> block
  };
  std::vector<Pass> done;

  auto binary_search = [&](std::vector<uint32_t> idx, uint8_t alice_parity) {
    while (idx.size() > 1) {
      std::vector<uint32_t> first(idx.begin(), idx.begin() + static_cast<long>((idx.size() + 1) / 2));
      std::vector<uint32_t> second(idx.begin() + static_cast<long>(first.size()), idx.end());
      const uint8_t a_first = link.query({first})[0];
      ++res.parities_leaked;
      ++res.queries;
      if (parity_of(bob, first) != a_first) {
        idx = std::move(first);
        alice_parity = a_first;
      } else {
        idx = std::move(second);
        alice_parity ^= a_first;
      }
    }
    (void)alice_parity;
    bob[idx[0]] ^= 1;
    return idx[0];
  };

  for (int pass = 0; pass < passes; ++pass) {
    const uint32_t bs = static_cast<uint32_t>(std::min<uint64_t>(static_cast<uint64_t>(k1) << pass, n));
    PassAnnouncement ann = link.announce(pass, bs);
    Pass cur;
    cur.blocks = pass_blocks(ann.permutation, bs);
    cur.alice = ann.block_parities;
    cur.block_of.assign(n, 0);
    for (uint32_t b = 0; b < cur.blocks.size(); ++b) {
      for (uint32_t i : cur.blocks[b]) cur.block_of[i] = b;
    }
    res.parities_leaked += cur.alice.size();
    done.push_back(std::move(cur));

    // Fix odd blocks, smallest first, until every block of every pass so far agrees.
    for (;;) {
      int best_pass = -1;
      uint32_t best_block = 0;
      size_t best_size = 0;
      for (size_t pi = 0; pi < done.size(); ++pi) {
        const Pass& ps = done[pi];
        for (uint32_t b = 0; b < ps.blocks.size(); ++b) {
          if (parity_of(bob, ps.blocks[b]) == ps.alice[b]) continue;
          if (best_pass < 0 || ps.blocks[b].size() < best_size) {
            best_pass = static_cast<int>(pi);
            best_block = b;
            best_size = ps.blocks[b].size();
          }
        }
      }
      if (best_pass < 0) break;
      const Pass& ps = done[static_cast<size_t>(best_pass)];
      binary_search(ps.blocks[best_block], ps.alice[best_block]);
    }
    link.end_pass();
  }
  res.corrected = std::move(bob);
  return res;
}

/// In-memory Cascade between two strings.
inline CascadeResult cascade_reconcile(const Bits& alice, const Bits& bob, double p_est, RngStream& rng,
                                       int passes = 4) {
  if (alice.size() != bob.size()) throw LengthMismatch("Cascade inputs differ in length");
  CascadeAlice a(alice, rng);
  LocalCascadeTransport link(a);
  return cascade_bob(bob, p_est, link, passes);
}

// ---------------------------------------------------------------------------
// Privacy amplification.

/// f x i Toeplitz matrix with T[m][j] = r_{m-j}. r is stored lowest exponent
/// first: r[0] = r_{-(i-1)}, ..., r[f+i-2] = r_{f-1}.
struct ToeplitzSpec {
  uint32_t f = 0;
  uint32_t i = 0;
  Bits r;

  uint8_t entry(uint32_t m, uint32_t j) const { return r[m + (i - 1) - j]; }
};

inline Bits toeplitz_hash(const ToeplitzSpec& spec, const Bits& key) {
  if (key.size() != spec.i) throw LengthMismatch("key length differs from Toeplitz input length");
  if (spec.f > spec.i) throw LengthMismatch("Toeplitz output longer than input");
  if (spec.i > 0 && spec.r.size() != spec.f + spec.i - 1) throw LengthMismatch("Toeplitz r has the wrong length");
  Bits out(spec.f, 0);
  for (uint32_t m = 0; m < spec.f; ++m) {
    uint8_t acc = 0;
    for (uint32_t j = 0; j < spec.i; ++j) acc ^= spec.entry(m, j) & key[j];
    out[m] = acc;
  }
  return out;
}

inline uint32_t pa_output_length(size_t reconciled_len) {
  if (reconciled_len < 2) throw TooShort("privacy amplification needs at least 2 reconciled bits");
  return static_cast<uint32_t>(reconciled_len / 2);
}

inline ToeplitzSpec random_toeplitz(uint32_t f, uint32_t i, RngStream& rng) {
  ToeplitzSpec s{f, i, {}};
  s.r.resize(f + i - 1);
  for (auto& b : s.r) b = rng.bit();
  return s;
}

// ---------------------------------------------------------------------------
// Teleportation.

enum class BsmOutcome { PsiPlus, PsiMinus, PhiAmbiguous, NoDetection };

inline const char* bsm_name(BsmOutcome b) {
  switch (b) {
    case BsmOutcome::PsiPlus: return "psi+";
    case BsmOutcome::PsiMinus: return "psi-";
    case BsmOutcome::PhiAmbiguous: return "phi";
    case BsmOutcome::NoDetection: return "none";
  }
  return "?";
}

inline int bsm_detector_number(const std::string& id) {
  if (id == "D1") return 1;
  if (id == "D2") return 2;
  if (id == "D3") return 3;
  if (id == "D4") return 4;
  throw UnknownDetector("not a BSM detector: " + id);
}

/// D1/D2 sit behind the first output port's PBS, D3/D4 behind the second.
inline BsmOutcome classify_bsm(const DetectionOutcome& outcome) {
  if (outcome.verdict != Verdict::Bell || outcome.hits.size() != 2) return BsmOutcome::NoDetection;
  int a = bsm_detector_number(outcome.hits[0].detector);
  int b = bsm_detector_number(outcome.hits[1].detector);
  if (a > b) std::swap(a, b);
  if (a == b) return BsmOutcome::PhiAmbiguous;
  if ((a == 1 && b == 2) || (a == 3 && b == 4)) return BsmOutcome::PsiPlus;
  if ((a == 2 && b == 4) || (a == 1 && b == 3)) return BsmOutcome::PsiMinus;
  return BsmOutcome::PhiAmbiguous;
}

/// Product of Pauli operators, leftmost factor applied last.
struct PauliString {
  std::vector<Pauli> ops;

  Mat matrix() const {
    Mat m = pauli(Pauli::I);
    for (Pauli p : ops) m = m * pauli(p);
    return m;
  }

  std::string str() const {
    if (ops.empty()) return "I";
    std::string s;
    for (Pauli p : ops) s += p == Pauli::X ? 'X' : p == Pauli::Y ? 'Y' : p == Pauli::Z ? 'Z' : 'I';
    return s;
  }

  int x_count() const {
    int n = 0;
    for (Pauli p : ops) n += (p == Pauli::X || p == Pauli::Y);
    return n;
  }
};

/// Operator Bob's qubit carries after the BSM: Bob holds P |psi_T>, so he undoes P.
inline PauliString teleport_correction(Bell shared, BsmOutcome detected) {
  if (detected != BsmOutcome::PsiPlus && detected != BsmOutcome::PsiMinus) {
    throw Unsupported("corrections exist only for psi+ and psi- detections");
  }
  const bool plus = detected == BsmOutcome::PsiPlus;
  using P = Pauli;
  switch (shared) {
    case Bell::PhiPlus: return plus ? PauliString{{P::X}} : PauliString{{P::X, P::Z}};
    case Bell::PhiMinus: return plus ? PauliString{{P::Z, P::X}} : PauliString{{P::Z, P::X, P::Z}};
    case Bell::PsiPlus: return plus ? PauliString{{}} : PauliString{{P::Z}};
    case Bell::PsiMinus: return plus ? PauliString{{P::X, P::Z, P::X}} : PauliString{{P::X, P::Z, P::X, P::Z}};
  }
  return {};
}

/// Z-basis outcome after undoing `held`: every X (or Y) factor flips the bit.
inline int bob_corrected_bit(int measured_bit, const PauliString& held) {
  return (measured_bit ^ (held.x_count() & 1)) & 1;
}

/// Bit sent to Bob over the classical channel: 0 for psi+, 1 for psi-.
inline Message bsm_message(BsmOutcome b) {
  if (b != BsmOutcome::PsiPlus && b != BsmOutcome::PsiMinus) throw Unsupported("no message for this BSM outcome");
  PayloadWriter w;
  w.u8(b == BsmOutcome::PsiPlus ? 0 : 1);
  return {MessageTag::kBsmResult, w.take()};
}

inline BsmOutcome read_bsm_message(const Message& m) {
  if (m.tag != MessageTag::kBsmResult) throw ProtocolError("expected a BSM result message");
  PayloadReader r(m.payload);
  return r.u8() == 0 ? BsmOutcome::PsiPlus : BsmOutcome::PsiMinus;
}

}  // namespace qnetsim
