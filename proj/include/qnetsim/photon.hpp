// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "qnetsim/kernel.hpp"
#include "qnetsim/qstate.hpp"

namespace qnetsim {

/// Polarization state shared by one photon, or by both photons of an entangled pair.
struct SharedState {
  QuantumState state;
  std::array<uint64_t, 2> owners{0, 0};
  int n_owners = 1;

  int index_of(uint64_t photon_id) const {
    for (int i = 0; i < n_owners; ++i) {
      if (owners[i] == photon_id) return i;
    }
    throw Error("photon " + std::to_string(photon_id) + " does not own this state");
  }
};

/// Monotonic photon id source; one per run.
class IdSource {
 public:
  uint64_t next() { return ++last_; }

 private:
  uint64_t last_ = 0;
};

struct Photon {
  uint64_t id = 0;
  double wavelength_nm = 1550;
  double linewidth_nm = 0;
  double temporal_width_s = 0;
  std::shared_ptr<SharedState> shared;
  AdaptiveClock clock;
  /// Index of the source pulse this photon belongs to.
  uint64_t pulse = 0;

  static Photon make(uint64_t id, QuantumState state, double t_emit) {
    Photon p;
    p.id = id;
    p.shared = std::make_shared<SharedState>(SharedState{std::move(state), {id, 0}, 1});
    p.clock = AdaptiveClock{t_emit, id};
    return p;
  }

  const QuantumState& state() const { return shared->state; }
  bool entangled() const { return shared->n_owners == 2; }
  int qubit() const { return shared->index_of(id); }
  double time() const { return clock.local_now; }

  /// Replaces this photon's state; for entangled photons this replaces the joint state.
  void set_state(QuantumState s) { shared->state = std::move(s); }
};

/// Two photons sharing one 2-qubit state; qubit 0 belongs to `a`.
inline std::pair<Photon, Photon> make_pair_photons(uint64_t id_a, uint64_t id_b, QuantumState joint, double t_emit) {
  if (joint.n_qubits() != 2) throw DimensionMismatch("a photon pair needs a 2-qubit state");
  auto shared = std::make_shared<SharedState>(SharedState{std::move(joint), {id_a, id_b}, 2});
  Photon a, b;
  a.id = id_a;
  b.id = id_b;
  a.shared = b.shared = shared;
  a.clock = AdaptiveClock{t_emit, id_a};
  b.clock = AdaptiveClock{t_emit, id_b};
  return {a, b};
}

/**
 * Measures the photon's polarization in `basis`. If the photon was entangled,
 * the partner keeps the conditional 1-qubit state in the old shared record and
 * this photon gets a fresh record holding the collapsed basis state.
 */
inline int measure_photon(Photon& p, const Basis& basis, RngStream& rng) {
  if (!p.entangled()) {
    Measurement m = measure(p.state(), basis, rng);
    p.set_state(QuantumState::basis_state(basis.tag, m.outcome));
    return m.outcome;
  }
  const int q = p.qubit();
  Measurement m = measure_qubit(p.state(), q, basis, rng);
  SharedState& old = *p.shared;
  const uint64_t partner = old.owners[1 - q];
  old.state = partner_state(m.post, q, basis, m.outcome);
  old.owners = {partner, 0};
  old.n_owners = 1;
  p.shared = std::make_shared<SharedState>(SharedState{QuantumState::basis_state(basis.tag, m.outcome), {p.id, 0}, 1});
  return m.outcome;
}

}  // namespace qnetsim
