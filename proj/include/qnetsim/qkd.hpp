// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
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

/// Alice: weak laser into the long channel. Bob: NPBS basis choice, an H/V
/// arm and a D/A arm (HWP in front of its PBS), four detectors.
struct QkdNetwork {
  WeakLaser wl;
  QuantumChannelParams qc;
  ClassicalChannelParams cc;
  NpbsParams npbs;
  QuantumChannelParams qc_pbs_hv, qc_hwp, qc_pbs_da;
  WaveplateParams hwp;
  PbsParams pbs_hv, pbs_da;
  std::array<QuantumChannelParams, 4> qc_d;
  std::array<DetectorParams, 4> det;
  Node alice{"alice"};
  Node bob{"bob"};
  /// Arrival window relative to pulse emission, over all four detector paths.
  Window window;
};

inline const std::array<std::string, 4>& qkd_detector_names() {
  static const std::array<std::string, 4> n{"D1", "D2", "D3", "D4"};
  return n;
}

/// Builds the network with the long channel (and the classical channel) set to `length_km`.
inline QkdNetwork build_qkd_network(const ExperimentConfig& c, double length_km) {
  if (c.scenario != Scenario::Qkd) throw WiringError("config scenario is not qkd");
  const WeakLaserSpec wl = weak_laser_spec(c.section("WL", "weak_laser"));
  const auto ods = plan_od_stack(std::max(1.0, wl.laser.mu_p), wl.od_max, wl.n_ndf_max, c.stack_tolerance);
  for (double od : ods) {
    if (od < wl.od_min) throw Unattainable("filter OD below od_min");
  }
  QkdNetwork n{WeakLaser(wl.laser, wl.od_max, wl.n_ndf_max, c.stack_tolerance),
               quantum_channel_params(c.section("QC", "quantum_channel")),
               classical_channel_params(c.section("CC", "classical_channel")),
               npbs_params(c.section("NPBS", "npbs")),
               quantum_channel_params(c.section("QC_PBS_HV", "quantum_channel")),
               quantum_channel_params(c.section("QC_HWP", "quantum_channel")),
               quantum_channel_params(c.section("QC_PBS_DA", "quantum_channel")),
               waveplate_params(c.section("HWP", "waveplate")),
               pbs_params(c.section("PBS_HV", "pbs")),
               pbs_params(c.section("PBS_DA", "pbs")),
               {},
               {},
               Node("alice", c.cutoff_k),
               Node("bob", c.cutoff_k),
               {}};
  n.qc.length_km = length_km;
  n.cc.length_km = length_km;
  for (int i = 0; i < 4; ++i) {
    const auto& name = qkd_detector_names()[static_cast<size_t>(i)];
    n.qc_d[static_cast<size_t>(i)] = quantum_channel_params(c.section("QC_" + name, "quantum_channel"));
    n.det[static_cast<size_t>(i)] = detector_params(c.section(name, "detector"));
  }

  n.alice.own("WL", "weak_laser");
  n.alice.own("QC", "quantum_channel");
  n.alice.own("CC", "classical_channel");
  for (const char* s : {"NPBS", "QC_PBS_HV", "QC_HWP", "QC_PBS_DA", "HWP", "PBS_HV", "PBS_DA"}) n.bob.own(s, "optics");
  for (const auto& name : qkd_detector_names()) {
    n.bob.own("QC_" + name, "quantum_channel");
    n.bob.own(name, "detector");
  }

  const double lw = wl.laser.linewidth_nm;
  auto seg = [lw](const QuantumChannelParams& p) { return PathSegment{qc_mean_delay(p), qc_temporal_width(p, lw)}; };
  const PathSegment src{0, wl.laser.temporal_width_s};
  std::optional<Window> w;
  for (int i = 0; i < 4; ++i) {
    std::vector<PathSegment> path{src, seg(n.qc)};
    if (i < 2) {
      path.push_back(seg(n.qc_pbs_hv));
    } else {
      path.push_back(seg(n.qc_hwp));
      path.push_back(seg(n.qc_pbs_da));
    }
    path.push_back(seg(n.qc_d[static_cast<size_t>(i)]));
    const Window wi = node_cutoffs(path, c.cutoff_k);
    w = w ? window_union(*w, wi) : wi;
  }
  n.window = *w;
  return n;
}

inline QkdNetwork build_qkd_network(const ExperimentConfig& c) { return build_qkd_network(c, c.lengths_km.front()); }

/// One run's result plus the two final keys.
struct QkdRun {
  RunResult result;
  Bits key_alice;
  Bits key_bob;
};

/// Cascade over the classical channel: every announcement, request and reply
/// is serialized, delayed and decoded.
class ChannelCascadeTransport : public CascadeTransport {
 public:
  ChannelCascadeTransport(CascadeAlice& alice, ClassicalChannel& cc, Timeline& tl) : alice_(alice), cc_(cc), tl_(tl) {}

  PassAnnouncement announce(int pass, uint32_t block_size) override {
    PassAnnouncement a = alice_.announce(pass, block_size);
    PayloadWriter w;
    w.u32(static_cast<uint32_t>(pass));
    w.u32(block_size);
    w.indices(a.permutation);
    w.bits(a.block_parities);
    Message got = cc_.transfer(tl_, {MessageTag::kCascadeShuffle, w.take()});
    expect(got, MessageTag::kCascadeShuffle);
    PayloadReader r(got.payload);
    r.u32();
    r.u32();
    PassAnnouncement out;
    out.permutation = r.indices();
    out.block_parities = r.bits();
    return out;
  }

  Bits query(const std::vector<std::vector<uint32_t>>& sets) override {
    PayloadWriter w;
    w.u32(static_cast<uint32_t>(sets.size()));
    for (const auto& s : sets) w.indices(s);
    Message req = cc_.transfer(tl_, {MessageTag::kCascadeParityRequest, w.take()});
    expect(req, MessageTag::kCascadeParityRequest);
    PayloadReader r(req.payload);
    std::vector<std::vector<uint32_t>> asked(r.u32());
    for (auto& s : asked) s = r.indices();
    PayloadWriter reply;
    reply.bits(alice_.parities(asked));
    Message got = cc_.transfer(tl_, {MessageTag::kCascadeParity, reply.take()});
    expect(got, MessageTag::kCascadeParity);
    PayloadReader rr(got.payload);
    return rr.bits();
  }

  void end_pass() override {
    PayloadWriter w;
    w.u32(pass_++);
    expect(cc_.transfer(tl_, {MessageTag::kCascadeDone, w.take()}), MessageTag::kCascadeDone);
  }

 private:
  static void expect(const Message& m, MessageTag tag) {
    if (m.tag != tag) throw ProtocolError("unexpected message tag");
  }

  CascadeAlice& alice_;
  ClassicalChannel& cc_;
  Timeline& tl_;
  uint32_t pass_ = 0;
};

/// Number of pulses after which Alice stops firing, given the running mean
/// photon number mu_a.
inline uint64_t qkd_pulse_budget(double mu_a, uint64_t raw_target) {
  return static_cast<uint64_t>(std::ceil(2.2 * (100.0 / mu_a) * (static_cast<double>(raw_target) / 128.0)));
}

/**
 * One BB84 run over a built network.
 *
 * Pulses are fired one at a time: each pulse runs to the end of its detection
 * window, global time is synced to the photon clocks, and the next pulse takes
 * the next free slot of the laser's repetition grid.
 */
inline QkdRun run_qkd_once(const QkdNetwork& net, const ExperimentConfig& cfg, uint64_t seed) {
  RngStream rng_alice(seed, "alice");
  RngStream rng_wl(seed, "WL");
  RngStream rng_qc(seed, "QC");
  RngStream rng_npbs(seed, "NPBS");
  RngStream rng_qc_hv(seed, "QC_PBS_HV");
  RngStream rng_qc_hwp(seed, "QC_HWP");
  RngStream rng_qc_da(seed, "QC_PBS_DA");
  RngStream rng_pbs_hv(seed, "PBS_HV");
  RngStream rng_pbs_da(seed, "PBS_DA");
  std::vector<RngStream> rng_qc_d, rng_det;
  std::vector<DarkCountTrack> darks;
  for (const auto& name : qkd_detector_names()) {
    rng_qc_d.emplace_back(seed, "QC_" + name);
    rng_det.emplace_back(seed, name);
  }
  for (size_t i = 0; i < 4; ++i) {
    darks.emplace_back(net.det[i], qkd_detector_names()[i], RngStream(seed, qkd_detector_names()[i] + ".dark"));
  }
  std::array<DetectorState, 4> det_state{};

  Timeline tl;
  IdSource ids;
  const double prr = net.wl.params().prr_hz;
  uint64_t seq = 0;

  Bits p, q, p_bob, q_bob;
  std::vector<bool> received;
  uint64_t photons = 0;
  uint64_t pulses = 0;
  double mu_a = 0;

  for (;;) {
    const auto slot = static_cast<uint64_t>(std::ceil(tl.now() * prr - 1e-9));
    const double t_emit = static_cast<double>(slot) / prr;
    const int bit = rng_alice.bit();
    const int basis = rng_alice.bit();
    p.push_back(static_cast<uint8_t>(bit));
    q.push_back(static_cast<uint8_t>(basis));

    std::vector<Photon> in_flight;
    std::vector<DetectionRecord> triggers;
    const Window window = net.window.shifted(t_emit);
    std::optional<DetectionOutcome> outcome;

    tl.schedule(t_emit, [&] {
      PulseBatch batch = net.wl.emit_batch(bb84_encode(bit, basis), slot, rng_wl);
      batch.t_emit = t_emit;
      in_flight = materialize(batch, net.wl.params(), ids, rng_wl);
      photons += in_flight.size();
      for (Photon& ph : in_flight) {
        if (!qc_transmit(net.qc, ph, rng_qc)) continue;
        size_t d = 0;
        if (npbs_route_single(net.npbs, 1, rng_npbs) == 4) {
          if (!qc_transmit(net.qc_pbs_hv, ph, rng_qc_hv)) continue;
          d = pbs_route(net.pbs_hv, ph, rng_pbs_hv) == PbsPort::Transmit ? 0 : 1;
        } else {
          if (!qc_transmit(net.qc_hwp, ph, rng_qc_hwp)) continue;
          waveplate_apply(net.hwp, ph);
          if (!qc_transmit(net.qc_pbs_da, ph, rng_qc_da)) continue;
          d = pbs_route(net.pbs_da, ph, rng_pbs_da) == PbsPort::Reflect ? 2 : 3;
        }
        if (!qc_transmit(net.qc_d[d], ph, rng_qc_d[d])) continue;
        const double t_arrive = ph.time();
        tl.schedule(t_arrive, [&, d, t_arrive] {
          auto rec = detector_register(net.det[d], qkd_detector_names()[d], t_arrive, rng_det[d], det_state[d], seq++);
          if (rec) triggers.push_back(*rec);
        });
      }
    });
    tl.schedule(std::max(window.t_max, t_emit), [&] {
      std::vector<DetectionRecord> dark;
      for (auto& track : darks) {
        auto w = track.in_window(window.t_min, window.t_max);
        dark.insert(dark.end(), w.begin(), w.end());
      }
      outcome = analyze_single(triggers, dark, window);
    });
    tl.run();
    for (const Photon& ph : in_flight) tl.sync_clock(ph.clock);

    bool got = outcome && outcome->verdict == Verdict::Single;
    received.push_back(got);
    uint8_t pb = 0, qb = 0;
    if (got) {
      const std::string& id = outcome->hits.front().detector;
      const int idx = id == "D1" ? 0 : id == "D2" ? 1 : id == "D3" ? 2 : 3;
      qb = static_cast<uint8_t>(idx >= 2);
      pb = static_cast<uint8_t>(idx % 2);
    }
    p_bob.push_back(pb);
    q_bob.push_back(qb);

    ++pulses;
    mu_a = static_cast<double>(photons) / static_cast<double>(pulses);
    if (mu_a > 0 && pulses >= qkd_pulse_budget(mu_a, cfg.raw_target)) break;
    if (pulses >= 100'000'000) break;
  }

  QkdRun run;
  RunResult& r = run.result;
  r.scenario = "qkd";
  r.length_km = net.qc.length_km;
  r.seed = seed;
  r.attempts = pulses;
  r.mu_a = mu_a;

  const double t_raw = tl.now();
  uint64_t n_raw = 0;
  for (bool b : received) n_raw += b;
  r.n_raw = n_raw;
  r.kgr_raw = t_raw > 0 ? static_cast<double>(n_raw) / t_raw : 0.0;

  ClassicalChannel cc(net.cc);

  // Bob announces which pulses he detected and in which basis.
  std::vector<uint32_t> recv_idx;
  Bits recv_bases;
  for (uint32_t k = 0; k < received.size(); ++k) {
    if (received[k]) {
      recv_idx.push_back(k);
      recv_bases.push_back(q_bob[k]);
    }
  }
  {
    PayloadWriter w;
    w.indices(recv_idx);
    w.bits(recv_bases);
    cc.transfer(tl, {MessageTag::kBases, w.take()});
  }
  const std::vector<uint32_t> sift_idx = sift_indices(q, q_bob, received);
  {
    PayloadWriter w;
    w.indices(sift_idx);
    cc.transfer(tl, {MessageTag::kSiftIndices, w.take()});
  }
  const Bits sa = select_bits(p, sift_idx);
  const Bits sb = select_bits(p_bob, sift_idx);
  const double t_sift = tl.now();
  r.n_sift = sa.size();
  r.kgr_sifted = static_cast<double>(sa.size()) / t_sift;

  if (sa.size() < 2) {
    r.aborted = true;
    return run;
  }

  // Error estimation on a random half chosen by Alice.
  const std::vector<uint32_t> check = choose_check_indices(sa.size(), rng_alice);
  {
    PayloadWriter w;
    w.indices(check);
    cc.transfer(tl, {MessageTag::kCheckIndices, w.take()});
    PayloadWriter wa;
    wa.bits(select_bits(sa, check));
    cc.transfer(tl, {MessageTag::kCheckBits, wa.take()});
    PayloadWriter wb;
    wb.bits(select_bits(sb, check));
    cc.transfer(tl, {MessageTag::kCheckBits, wb.take()});
  }
  const QberResult qr = qber_from_check(sa, sb, check);
  r.qber = qr.qber;
  if (qr.qber > cfg.qber_threshold) {
    r.aborted = true;
    return run;
  }

  // Reconciliation.
  CascadeAlice alice(qr.kept_alice, rng_alice);
  ChannelCascadeTransport link(alice, cc, tl);
  const CascadeResult cr = cascade_bob(qr.kept_bob, qr.qber + cfg.cascade_margin, link, cfg.cascade_passes);
  const double t_rec = tl.now();
  const uint64_t n_rec = qr.kept_alice.size();
  r.n_reconciled = n_rec;
  r.kgr_reconciled = static_cast<double>(n_rec) / t_rec;

  // Privacy amplification.
  if (n_rec < 2) {
    r.n_secret = 0;
    r.kgr_secret = 0.0;
    return run;
  }
  const ToeplitzSpec spec = random_toeplitz(pa_output_length(n_rec), static_cast<uint32_t>(n_rec), rng_alice);
  ToeplitzSpec bob_spec;
  {
    PayloadWriter w;
    w.u32(spec.f);
    w.u32(spec.i);
    w.bits(spec.r);
    Message m = cc.transfer(tl, {MessageTag::kToeplitzR, w.take()});
    PayloadReader rd(m.payload);
    bob_spec.f = rd.u32();
    bob_spec.i = rd.u32();
    bob_spec.r = rd.bits();
  }
  run.key_alice = toeplitz_hash(spec, qr.kept_alice);
  run.key_bob = toeplitz_hash(bob_spec, cr.corrected);
  const double t_secret = tl.now();
  r.n_secret = run.key_alice.size();
  r.kgr_secret = static_cast<double>(run.key_alice.size()) / t_secret;
  return run;
}

}  // namespace qnetsim
