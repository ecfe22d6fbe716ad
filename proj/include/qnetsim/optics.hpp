// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <vector>

#include "qnetsim/photon.hpp"
#include "qnetsim/qstate.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

// ---------------------------------------------------------------------------
// Waveplates.

struct WaveplateParams {
  double alpha = std::numbers::pi;  // retardance
  double theta = 0;                 // fast-axis angle
};

/// Jones matrix of a linear waveplate, including its global phase.
inline Mat waveplate_matrix(double alpha, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const cd e = std::polar(1.0, alpha);
  Mat m(2, 2);
  m << c * c + e * s * s, (1.0 - e) * c * s, (1.0 - e) * c * s, s * s + e * c * c;
  return std::polar(1.0, -alpha / 2) * m;
}

/// Applies the waveplate to the photon's qubit. The basis tag of a 1-qubit
/// state follows the Bloch axis it ends up closest to.
inline void waveplate_apply(const WaveplateParams& params, Photon& photon) {
  const QuantumState& s = photon.state();
  Mat m = on_qubit(waveplate_matrix(params.alpha, params.theta), photon.qubit(), s.n_qubits());
  QuantumState out = apply_unitary(s, m);
  if (out.is_ket()) out = QuantumState::ket(fix_global_phase(out.coeffs()), out.basis());
  if (out.n_qubits() == 1) out.set_basis(nearest_axis(out));
  photon.set_state(std::move(out));
}

// ---------------------------------------------------------------------------
// Non-polarizing beam splitter. Input ports 1, 2; output ports 3, 4.
// Transmission keeps the side (1 -> 3, 2 -> 4); reflection crosses it.

struct NpbsParams {
  double reflectance = 0.5;

  double t() const { return std::sqrt(1 - reflectance); }
  cd r() const { return cd(0, std::sqrt(reflectance)); }

  /// Mode transformation [a3; a4] = B [a1; a2]^T, with t real and r = i|r|.
  Mat matrix() const {
    Mat b(2, 2);
    b << t(), r(), r(), t();
    return b;
  }
};

inline int npbs_route_single(const NpbsParams& params, int in_port, RngStream& rng) {
  const bool reflected = rng.bernoulli(params.reflectance);
  if (in_port == 1) return reflected ? 4 : 3;
  return reflected ? 3 : 4;
}

struct NpbsOutcome {
  int port_a = 3;
  int port_b = 3;
  int pol_a = 0;
  int pol_b = 0;

  bool split() const { return port_a != port_b; }
};

namespace detail {

enum class NpbsKind { Both3, Both4, Split };

struct NpbsBranch {
  NpbsKind kind;
  int pol_x;  // polarization in port 3 (or first photon when bunched)
  int pol_y;
};

inline const std::array<NpbsBranch, 10>& npbs_branches() {
  static const std::array<NpbsBranch, 10> b{{
      {NpbsKind::Both3, 0, 0}, {NpbsKind::Both3, 0, 1}, {NpbsKind::Both3, 1, 1},
      {NpbsKind::Both4, 0, 0}, {NpbsKind::Both4, 0, 1}, {NpbsKind::Both4, 1, 1},
      {NpbsKind::Split, 0, 0}, {NpbsKind::Split, 0, 1}, {NpbsKind::Split, 1, 0}, {NpbsKind::Split, 1, 1},
  }};
  return b;
}

/// Output amplitude of one branch for the two-photon polarization amplitudes
/// c[x][y] (x: photon entering port 1, y: photon entering port 2).
inline cd npbs_amplitude(const NpbsParams& p, const NpbsBranch& br, const std::array<std::array<cd, 2>, 2>& c) {
  const double t = p.t();
  const cd r = p.r();
  const int x = br.pol_x, y = br.pol_y;
  switch (br.kind) {
    case NpbsKind::Both3:
    case NpbsKind::Both4:
      if (x == y) return std::sqrt(2.0) * t * r * c[x][x];
      return t * r * (c[0][1] + c[1][0]);
    case NpbsKind::Split:
      return t * t * c[x][y] + r * r * c[y][x];
  }
  return 0;
}

}  // namespace detail

/**
 * Two-photon interference at the NPBS.
 *
 * Photon `a` enters port 1 and `b` enters port 2. Their polarizations may be a
 * product, a shared 2-qubit state, or one of them may be entangled with a
 * third photon that is not at the beam splitter. In the last case the third
 * photon's state is updated to its conditional state. Mixed inputs are handled
 * by drawing a pure state from their eigen-ensemble. Both output photons carry
 * collapsed H or V states.
 */
inline NpbsOutcome npbs_interfere(const NpbsParams& params, Photon& a, Photon& b, RngStream& rng) {
  using Amp = std::array<std::array<cd, 2>, 2>;
  // c[k][x][y] with k the spectator basis index (one slot when there is none).
  std::vector<Amp> c;
  std::shared_ptr<SharedState> spectator_record;

  if (a.entangled() && b.entangled()) {
    if (a.shared != b.shared) throw Unsupported("both photons entangled with outside partners");
    if (std::abs(params.reflectance - 0.5) > 1e-12) throw NotBalanced("entangled input needs a 50:50 splitter");
    Vec v = sample_pure(a.state(), rng);
    const int qa = a.qubit();
    Amp amp{};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) amp[x][y] = qa == 0 ? v((x << 1) | y) : v((y << 1) | x);
    }
    c.push_back(amp);
  } else if (a.entangled() || b.entangled()) {
    Photon& ent = a.entangled() ? a : b;
    Photon& solo = a.entangled() ? b : a;
    Vec pair = sample_pure(ent.state(), rng);
    Vec single = sample_pure(solo.state(), rng);
    const int qe = ent.qubit();
    for (int k = 0; k < 2; ++k) {
      Amp amp{};
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const int e_pol = a.entangled() ? x : y;
          const int s_pol = a.entangled() ? y : x;
          const cd pe = qe == 0 ? pair((e_pol << 1) | k) : pair((k << 1) | e_pol);
          amp[x][y] = pe * single(s_pol);
        }
      }
      c.push_back(amp);
    }
    spectator_record = ent.shared;
  } else {
    Vec va = sample_pure(a.state(), rng);
    Vec vb = sample_pure(b.state(), rng);
    Amp amp{};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) amp[x][y] = va(x) * vb(y);
    }
    c.push_back(amp);
  }

  const auto& branches = detail::npbs_branches();
  std::vector<double> probs(branches.size(), 0.0);
  for (size_t i = 0; i < branches.size(); ++i) {
    for (const Amp& amp : c) probs[i] += std::norm(detail::npbs_amplitude(params, branches[i], amp));
  }
  const int pick = detail::sample_index(probs, rng);
  const auto& br = branches[static_cast<size_t>(pick)];

  if (spectator_record) {
    Vec cond(2);
    for (int k = 0; k < 2; ++k) cond(k) = detail::npbs_amplitude(params, br, c[static_cast<size_t>(k)]);
    Photon& ent = a.entangled() ? a : b;
    const uint64_t partner = spectator_record->owners[1 - ent.qubit()];
    spectator_record->state = QuantumState::ket(fix_global_phase(cond), spectator_record->state.basis());
    spectator_record->owners = {partner, 0};
    spectator_record->n_owners = 1;
  }

  NpbsOutcome out;
  switch (br.kind) {
    case detail::NpbsKind::Both3:
    case detail::NpbsKind::Both4: {
      const int port = br.kind == detail::NpbsKind::Both3 ? 3 : 4;
      out.port_a = out.port_b = port;
      const bool swap = br.pol_x != br.pol_y && rng.bernoulli(0.5);
      out.pol_a = swap ? br.pol_y : br.pol_x;
      out.pol_b = swap ? br.pol_x : br.pol_y;
      break;
    }
    case detail::NpbsKind::Split:
      out.port_a = 3;
      out.port_b = 4;
      out.pol_a = br.pol_x;
      out.pol_b = br.pol_y;
      break;
  }
  a.shared = std::make_shared<SharedState>(SharedState{QuantumState::basis_state(Axis::Z, out.pol_a), {a.id, 0}, 1});
  b.shared = std::make_shared<SharedState>(SharedState{QuantumState::basis_state(Axis::Z, out.pol_b), {b.id, 0}, 1});
  return out;
}

// ---------------------------------------------------------------------------
// Polarizing beam splitter.

enum class PbsPort { Transmit, Reflect };

struct PbsParams {
  double er = std::numeric_limits<double>::infinity();
  /// True when horizontal polarization is transmitted.
  bool transmits_h = true;

  double wrong_port_probability() const { return std::isinf(er) ? 0.0 : 1.0 / (1.0 + er); }
};

/// Collapses the polarization in Z, then routes; the extinction ratio sends a
/// photon to the wrong port without touching its collapsed state.
inline PbsPort pbs_route(const PbsParams& params, Photon& photon, RngStream& rng) {
  const int pol = measure_photon(photon, Basis::of(Axis::Z), rng);
  const bool transmit = (pol == 0) == params.transmits_h;
  const bool wrong = rng.bernoulli(params.wrong_port_probability());
  return transmit != wrong ? PbsPort::Transmit : PbsPort::Reflect;
}

// ---------------------------------------------------------------------------
// Mirror.

struct MirrorParams {
  double reflectance = 1;
  double noise_level = 0;
  double gamma = 0;
  double lambda = 0;
};

/// Returns false when the photon is absorbed.
inline bool mirror_reflect(const MirrorParams& params, Photon& photon, RngStream& rng) {
  if (!rng.bernoulli(params.reflectance)) return false;
  if (rng.bernoulli(params.noise_level)) {
    const QuantumState& s = photon.state();
    photon.set_state(rng.bernoulli(0.5) ? amplitude_damp(s, params.gamma) : phase_damp(s, params.lambda));
  }
  return true;
}

}  // namespace qnetsim
