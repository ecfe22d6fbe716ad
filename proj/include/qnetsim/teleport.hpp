// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "qnetsim/config.hpp"
#include "qnetsim/detection.hpp"
#include "qnetsim/kernel.hpp"
#include "qnetsim/links.hpp"
#include "qnetsim/optics.hpp"
#include "qnetsim/protocols.hpp"
#include "qnetsim/results.hpp"
#include "qnetsim/rng.hpp"
#include "qnetsim/sources.hpp"

namespace qnetsim {

/// Alice: pair source, target weak laser, NPBS and two PBS/detector pairs for
/// the partial BSM. Bob: PBS_T with DT1 (reflect, V) and DT2 (transmit, H).
struct TeleportNetwork {
  SpdcParams eps;
  WeakLaser wl;
  QuantumChannelParams qc_eps1, qc_wl, qc_eps2;
  ClassicalChannelParams cc;
  NpbsParams npbs;
  PbsParams pbs1, pbs2, pbs_t;
  QuantumChannelParams qc_pbs1, qc_pbs2;
  std::array<QuantumChannelParams, 4> qc_d;
  std::array<QuantumChannelParams, 2> qc_dt;
  std::array<DetectorParams, 4> det;
  std::array<DetectorParams, 2> det_t;
  Node alice{"alice"};
  Node bob{"bob"};
  Window bsm_window;  // relative to emission
  Window npbs_window;
  Window bob_window;
};

inline const std::array<std::string, 4>& bsm_detector_names() {
  static const std::array<std::string, 4> n{"D1", "D2", "D3", "D4"};
  return n;
}

inline const std::array<std::string, 2>& bob_detector_names() {
  static const std::array<std::string, 2> n{"DT1", "DT2"};
  return n;
}

/// `length_km` sets QC_EPS2 and the classical channel.
inline TeleportNetwork build_teleport_network(const ExperimentConfig& c, double length_km) {
  if (c.scenario != Scenario::Teleport) throw WiringError("config scenario is not teleport");
  TeleportNetwork n;
  n.eps = spdc_params(c.section("EPS", "spdc_source"));
  const WeakLaserSpec wl = weak_laser_spec(c.section("WL", "weak_laser"));
  n.wl = WeakLaser(wl.laser, wl.od_max, wl.n_ndf_max, c.stack_tolerance);
  n.qc_eps1 = quantum_channel_params(c.section("QC_EPS1", "quantum_channel"));
  n.qc_wl = quantum_channel_params(c.section("QC_WL", "quantum_channel"));
  n.qc_eps2 = quantum_channel_params(c.section("QC_EPS2", "quantum_channel"));
  n.cc = classical_channel_params(c.section("CC", "classical_channel"));
  n.npbs = npbs_params(c.section("NPBS", "npbs"));
  n.pbs1 = pbs_params(c.section("PBS1", "pbs"));
  n.pbs2 = pbs_params(c.section("PBS2", "pbs"));
  n.pbs_t = pbs_params(c.section("PBS_T", "pbs"));
  n.qc_pbs1 = quantum_channel_params(c.section("QC_PBS1", "quantum_channel"));
  n.qc_pbs2 = quantum_channel_params(c.section("QC_PBS2", "quantum_channel"));
  for (size_t i = 0; i < 4; ++i) {
    n.qc_d[i] = quantum_channel_params(c.section("QC_" + bsm_detector_names()[i], "quantum_channel"));
    n.det[i] = detector_params(c.section(bsm_detector_names()[i], "detector"));
  }
  for (size_t i = 0; i < 2; ++i) {
    n.qc_dt[i] = quantum_channel_params(c.section("QC_" + bob_detector_names()[i], "quantum_channel"));
    n.det_t[i] = detector_params(c.section(bob_detector_names()[i], "detector"));
  }
  if (n.qc_eps1.length_km != n.qc_wl.length_km) {
    throw WiringError("QC_EPS1 and QC_WL must have the same length");
  }
  if (n.eps.pump.prr_hz != wl.laser.prr_hz) throw WiringError("EPS and WL must share a repetition rate");
  n.qc_eps2.length_km = length_km;
  n.cc.length_km = length_km;

  n.alice = Node("alice", c.cutoff_k);
  n.bob = Node("bob", c.cutoff_k);
  for (const char* s : {"EPS", "WL", "QC_EPS1", "QC_WL", "QC_EPS2", "NPBS", "QC_PBS1", "QC_PBS2", "PBS1", "PBS2", "CC"}) {
    n.alice.own(s, "component");
  }
  for (const auto& d : bsm_detector_names()) {
    n.alice.own("QC_" + d, "quantum_channel");
    n.alice.own(d, "detector");
  }
  n.bob.own("PBS_T", "component");
  for (const auto& d : bob_detector_names()) {
    n.bob.own("QC_" + d, "quantum_channel");
    n.bob.own(d, "detector");
  }

  const double lw = wl.laser.linewidth_nm;
  auto seg = [lw](const QuantumChannelParams& p) { return PathSegment{qc_mean_delay(p), qc_temporal_width(p, lw)}; };
  const PathSegment src{0, std::max(wl.laser.temporal_width_s, n.eps.pump.temporal_width_s)};
  n.npbs_window = window_union(node_cutoffs({src, seg(n.qc_eps1)}, c.cutoff_k), node_cutoffs({src, seg(n.qc_wl)}, c.cutoff_k));
  std::optional<Window> w;
  for (size_t i = 0; i < 4; ++i) {
    for (const auto& in : {n.qc_eps1, n.qc_wl}) {
      const Window wi = node_cutoffs({src, seg(in), seg(i < 2 ? n.qc_pbs1 : n.qc_pbs2), seg(n.qc_d[i])}, c.cutoff_k);
      w = w ? window_union(*w, wi) : wi;
    }
  }
  n.bsm_window = *w;
  n.bob_window = window_union(node_cutoffs({src, seg(n.qc_eps2), seg(n.qc_dt[0])}, c.cutoff_k),
                              node_cutoffs({src, seg(n.qc_eps2), seg(n.qc_dt[1])}, c.cutoff_k));
  return n;
}

inline TeleportNetwork build_teleport_network(const ExperimentConfig& c) {
  return build_teleport_network(c, c.lengths_km.front());
}

/// Outcome of one teleportation attempt.
struct AttemptRecord {
  BsmOutcome bsm = BsmOutcome::NoDetection;
  bool bob_clicked = false;
  int bob_bit = 0;
  bool bit_delivered = false;
  /// Bob's reduced state as it reached PBS_T.
  std::optional<QuantumState> bob_state;

  bool success() const {
    return (bsm == BsmOutcome::PsiPlus || bsm == BsmOutcome::PsiMinus) && bit_delivered && bob_clicked;
  }
};

/// One teleportation run: `cfg.attempts` attempts of sending `target`.
class TeleportRunner {
 public:
  TeleportRunner(const TeleportNetwork& net, uint64_t seed)
      : net_(net),
        rng_eps_(seed, "EPS"),
        rng_wl_(seed, "WL"),
        rng_qc_eps1_(seed, "QC_EPS1"),
        rng_qc_wl_(seed, "QC_WL"),
        rng_qc_eps2_(seed, "QC_EPS2"),
        rng_npbs_(seed, "NPBS"),
        rng_pbs1_(seed, "PBS1"),
        rng_pbs2_(seed, "PBS2"),
        rng_pbs_t_(seed, "PBS_T"),
        rng_qc_pbs1_(seed, "QC_PBS1"),
        rng_qc_pbs2_(seed, "QC_PBS2"),
        cc_(net.cc) {
    for (size_t i = 0; i < 4; ++i) {
      const auto& name = bsm_detector_names()[i];
      rng_qc_d_.emplace_back(seed, "QC_" + name);
      rng_det_.emplace_back(seed, name);
      darks_.emplace_back(net.det[i], name, RngStream(seed, name + ".dark"));
    }
    for (size_t i = 0; i < 2; ++i) {
      const auto& name = bob_detector_names()[i];
      rng_qc_dt_.emplace_back(seed, "QC_" + name);
      rng_det_t_.emplace_back(seed, name);
      darks_t_.emplace_back(net.det_t[i], name, RngStream(seed, name + ".dark"));
    }
  }

  Timeline& timeline() { return tl_; }

  AttemptRecord attempt(const QuantumState& target) {
    const double prr = net_.eps.pump.prr_hz;
    const auto slot = static_cast<uint64_t>(std::ceil(tl_.now() * prr - 1e-9));
    const double t_emit = static_cast<double>(slot) / prr;

    AttemptRecord rec;
    std::deque<Photon> pool;
    std::array<Photon*, 2> at_npbs{nullptr, nullptr};
    std::vector<DetectionRecord> bsm_hits, bob_hits;

    tl_.schedule(t_emit, [&] {
      auto pairs = spdc_emit(net_.eps, slot, ids_, rng_eps_);
      auto targets = net_.wl.emit(target, slot, ids_, rng_wl_);
      if (!pairs.empty()) {
        Photon& a = pool.emplace_back(std::move(pairs.front().first));
        Photon& b = pool.emplace_back(std::move(pairs.front().second));
        Photon* pa = &a;
        Photon* pb = &b;
        if (qc_propagate(net_.qc_eps1, a, rng_qc_eps1_)) {
          tl_.schedule(a.time(), [&, pa] {
            qc_corrupt(net_.qc_eps1, *pa, rng_qc_eps1_);
            at_npbs[0] = pa;
          });
        }
        if (qc_propagate(net_.qc_eps2, b, rng_qc_eps2_)) {
          tl_.schedule(b.time(), [&, pb] {
            qc_corrupt(net_.qc_eps2, *pb, rng_qc_eps2_);
            bob_receive(*pb, rec, bob_hits);
          });
        }
      }
      if (!targets.empty()) {
        Photon* pt = &pool.emplace_back(std::move(targets.front()));
        if (qc_propagate(net_.qc_wl, *pt, rng_qc_wl_)) {
          tl_.schedule(pt->time(), [&, pt] {
            qc_corrupt(net_.qc_wl, *pt, rng_qc_wl_);
            at_npbs[1] = pt;
          });
        }
      }
    });

    // Coincidence buffer at the NPBS is flushed when its window closes.
    tl_.schedule(t_emit + net_.npbs_window.t_max, [&] {
      if (at_npbs[0] && at_npbs[1]) {
        const NpbsOutcome o = npbs_interfere(net_.npbs, *at_npbs[0], *at_npbs[1], rng_npbs_);
        bsm_arm(*at_npbs[0], o.port_a, bsm_hits);
        bsm_arm(*at_npbs[1], o.port_b, bsm_hits);
      } else {
        for (int port = 0; port < 2; ++port) {
          if (at_npbs[static_cast<size_t>(port)]) {
            bsm_arm(*at_npbs[static_cast<size_t>(port)], npbs_route_single(net_.npbs, port + 1, rng_npbs_), bsm_hits);
          }
        }
      }
    });

    const Window bw = net_.bsm_window.shifted(t_emit);
    tl_.schedule(bw.t_max, [&] {
      std::vector<DetectionRecord> dark;
      for (auto& track : darks_) {
        auto d = track.in_window(bw.t_min, bw.t_max);
        dark.insert(dark.end(), d.begin(), d.end());
      }
      rec.bsm = classify_bsm(analyze_bell(bsm_hits, dark, bw));
      if (rec.bsm == BsmOutcome::PsiPlus || rec.bsm == BsmOutcome::PsiMinus) {
        cc_.cc_send(tl_, bsm_message(rec.bsm), [&](const Message& m) {
          rec.bsm = read_bsm_message(m);
          rec.bit_delivered = true;
        });
      }
    });

    const Window tw = net_.bob_window.shifted(t_emit);
    tl_.schedule(tw.t_max, [&] {
      std::vector<DetectionRecord> dark;
      for (auto& track : darks_t_) {
        auto d = track.in_window(tw.t_min, tw.t_max);
        dark.insert(dark.end(), d.begin(), d.end());
      }
      const DetectionOutcome o = analyze_single(bob_hits, dark, tw);
      if (o.verdict == Verdict::Single) {
        rec.bob_clicked = true;
        rec.bob_bit = o.hits.front().detector == "DT1" ? 1 : 0;
      }
    });

    tl_.run();
    for (const Photon& p : pool) tl_.sync_clock(p.clock);
    return rec;
  }

 private:
  void bsm_arm(Photon& ph, int port, std::vector<DetectionRecord>& hits) {
    const bool first = port == 3;
    if (!qc_transmit(first ? net_.qc_pbs1 : net_.qc_pbs2, ph, first ? rng_qc_pbs1_ : rng_qc_pbs2_)) return;
    size_t d;
    if (first) {
      d = pbs_route(net_.pbs1, ph, rng_pbs1_) == PbsPort::Transmit ? 1 : 0;  // D2 transmit, D1 reflect
    } else {
      d = pbs_route(net_.pbs2, ph, rng_pbs2_) == PbsPort::Transmit ? 2 : 3;  // D3 transmit, D4 reflect
    }
    if (!qc_transmit(net_.qc_d[d], ph, rng_qc_d_[d])) return;
    schedule_click(net_.det[d], bsm_detector_names()[d], ph.time(), rng_det_[d], state_[d], hits);
  }

  void bob_receive(Photon& b, AttemptRecord& rec, std::vector<DetectionRecord>& hits) {
    rec.bob_state = b.entangled() ? partial_trace(b.state(), b.qubit()) : b.state();
    const size_t d = pbs_route(net_.pbs_t, b, rng_pbs_t_) == PbsPort::Transmit ? 1 : 0;  // DT2 transmit, DT1 reflect
    if (!qc_transmit(net_.qc_dt[d], b, rng_qc_dt_[d])) return;
    schedule_click(net_.det_t[d], bob_detector_names()[d], b.time(), rng_det_t_[d], state_t_[d], hits);
  }

  void schedule_click(const DetectorParams& p, const std::string& id, double t, RngStream& rng, DetectorState& st,
                      std::vector<DetectionRecord>& hits) {
    tl_.schedule(t, [this, &p, &id, t, &rng, &st, &hits] {
      auto r = detector_register(p, id, t, rng, st, seq_++);
      if (r) hits.push_back(*r);
    });
  }

  const TeleportNetwork& net_;
  Timeline tl_;
  IdSource ids_;
  uint64_t seq_ = 0;
  RngStream rng_eps_, rng_wl_, rng_qc_eps1_, rng_qc_wl_, rng_qc_eps2_, rng_npbs_, rng_pbs1_, rng_pbs2_, rng_pbs_t_,
      rng_qc_pbs1_, rng_qc_pbs2_;
  std::vector<RngStream> rng_qc_d_, rng_det_, rng_qc_dt_, rng_det_t_;
  std::vector<DarkCountTrack> darks_, darks_t_;
  std::array<DetectorState, 4> state_{};
  std::array<DetectorState, 2> state_t_{};
  ClassicalChannel cc_;
};

/// Bob's state after undoing the operator the table assigns to this outcome.
inline QuantumState teleport_corrected_state(const QuantumState& bob, Bell shared, BsmOutcome detected) {
  const Mat held = teleport_correction(shared, detected).matrix();
  return apply_unitary(bob, held.adjoint());
}

inline RunResult run_teleport_once(const TeleportNetwork& net, const ExperimentConfig& cfg, const std::string& target,
                                   uint64_t seed) {
  const QuantumState psi = parse_target(target);
  const bool z_target = target == "0" || target == "1";
  const int target_bit = target == "1" ? 1 : 0;
  TeleportRunner runner(net, seed);
  uint64_t successes = 0, matches = 0;
  double fid_sum = 0;
  for (uint64_t k = 0; k < cfg.attempts; ++k) {
    const AttemptRecord a = runner.attempt(psi);
    if (!a.success()) continue;
    ++successes;
    const PauliString held = teleport_correction(cfg.shared_bell, a.bsm);
    matches += bob_corrected_bit(a.bob_bit, held) == target_bit;
    if (a.bob_state) fid_sum += fidelity(teleport_corrected_state(*a.bob_state, cfg.shared_bell, a.bsm), psi);
  }
  RunResult r;
  r.scenario = "teleport";
  r.length_km = net.qc_eps2.length_km;
  r.seed = seed;
  r.target = target;
  r.attempts = cfg.attempts;
  r.successes = successes;
  if (z_target) r.matches = matches;
  if (successes > 0) r.fidelity = fid_sum / static_cast<double>(successes);
  return r;
}

}  // namespace qnetsim
