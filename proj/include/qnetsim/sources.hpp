// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qnetsim/photon.hpp"
#include "qnetsim/qstate.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

struct LaserParams {
  double prr_hz = 80e6;
  double wavelength_nm = 1550;
  double linewidth_nm = 0.01;
  double temporal_width_s = 100e-15;
  /// Mean photons per pulse.
  double mu_p = 1e5;
  double noise_level = 0;
  /// Polarizer extinction ratio; infinity means an ideal polarizer.
  double per = std::numeric_limits<double>::infinity();
  double gamma = 0;
  double lambda = 0;

  void validate() const {
    if (!(prr_hz > 0)) throw ValidationError("laser prr_hz must be > 0");
    if (!(wavelength_nm > 0)) throw ValidationError("laser wavelength_nm must be > 0");
    if (linewidth_nm < 0 || temporal_width_s < 0) throw ValidationError("laser widths must be >= 0");
    if (mu_p < 0) throw ValidationError("laser mu_p must be >= 0");
    if (noise_level < 0 || noise_level > 1) throw ValidationError("laser noise_level must be in [0,1]");
    if (!(per >= 1)) throw ValidationError("laser per must be >= 1");
    if (gamma < 0 || gamma > 1 || lambda < 0 || lambda > 1) throw ValidationError("laser gamma/lambda must be in [0,1]");
  }

  double flip_probability() const { return std::isinf(per) ? 0.0 : 1.0 / (1.0 + per); }
  double pulse_time(uint64_t pulse_index) const { return static_cast<double>(pulse_index) / prr_hz; }
};

/**
 * Photons of one pulse, grouped by identical state.
 *
 * All photons of a pulse start from the same desired state, so after the
 * polarizer flip and the decoherence draw there are at most four distinct
 * states. Keeping counts instead of individual photons lets a 1e5-photon pulse
 * pass through a filter stack without allocating each photon.
 */
struct PulseBatch {
  struct Group {
    QuantumState state;
    uint64_t count = 0;
  };

  uint64_t pulse_index = 0;
  double t_emit = 0;
  std::vector<Group> groups;

  uint64_t total() const {
    uint64_t n = 0;
    for (const auto& g : groups) n += g.count;
    return n;
  }
};

inline PulseBatch laser_emit_batch(const LaserParams& params, const QuantumState& desired, uint64_t pulse_index,
                                   RngStream& rng) {
  PulseBatch batch;
  batch.pulse_index = pulse_index;
  batch.t_emit = params.pulse_time(pulse_index);
  const uint64_t n = rng.poisson(params.mu_p);
  if (n == 0) return batch;
  const uint64_t flipped = rng.binomial(n, params.flip_probability());
  const QuantumState wrong = orthogonal(desired);
  const std::array<std::pair<const QuantumState*, uint64_t>, 2> base{{{&desired, n - flipped}, {&wrong, flipped}}};
  for (const auto& [state, count] : base) {
    if (count == 0) continue;
    const uint64_t noisy = rng.binomial(count, params.noise_level);
    if (count - noisy > 0) batch.groups.push_back({*state, count - noisy});
    if (noisy > 0) batch.groups.push_back({decohere(*state, params.gamma, params.lambda), noisy});
  }
  return batch;
}

/// Expands a batch into individual photons in a uniformly random arrival order.
inline std::vector<Photon> materialize(const PulseBatch& batch, const LaserParams& params, IdSource& ids,
                                       RngStream& rng) {
  std::vector<const QuantumState*> order;
  for (const auto& g : batch.groups) {
    for (uint64_t k = 0; k < g.count; ++k) order.push_back(&g.state);
  }
  auto perm = rng.permutation(static_cast<uint32_t>(order.size()));
  std::vector<Photon> out;
  out.reserve(order.size());
  for (uint32_t idx : perm) {
    Photon p = Photon::make(ids.next(), *order[idx], batch.t_emit);
    p.wavelength_nm = params.wavelength_nm;
    p.linewidth_nm = params.linewidth_nm;
    p.temporal_width_s = params.temporal_width_s;
    p.pulse = batch.pulse_index;
    out.push_back(std::move(p));
  }
  return out;
}

/// One pulse of photons. The desired state is chosen per pulse, cycling
/// through `desired_states` by pulse index.
inline std::vector<Photon> laser_emit_pulse(const LaserParams& params, const std::vector<QuantumState>& desired_states,
                                            uint64_t pulse_index, IdSource& ids, RngStream& rng) {
  if (desired_states.empty()) throw ValidationError("laser needs at least one desired state");
  const auto& desired = desired_states[pulse_index % desired_states.size()];
  return materialize(laser_emit_batch(params, desired, pulse_index, rng), params, ids, rng);
}

// ---------------------------------------------------------------------------
// Neutral-density filters.

inline double nd_transmittance(double od) { return std::pow(10.0, -od); }

inline uint64_t nd_energy_cap(double od, uint64_t n_in) {
  return static_cast<uint64_t>(std::ceil(nd_transmittance(od) * static_cast<double>(n_in) - 1e-12));
}

/// Per-photon filter: each photon passes when its draw is below T, in arrival
/// order, until the energy cap is reached.
inline std::vector<Photon> nd_filter_pass(std::vector<Photon> photons, double od, RngStream& rng) {
  const double t = nd_transmittance(od);
  const uint64_t cap = nd_energy_cap(od, photons.size());
  std::vector<Photon> out;
  for (auto& p : photons) {
    if (out.size() >= cap) break;
    if (rng.uniform() < t) out.push_back(std::move(p));
  }
  return out;
}

/**
 * Batch form of nd_filter_pass with the same distribution: binomial thinning
 * per group, then, if the cap binds, a uniformly random subset of the
 * survivors (the first `cap` in a random arrival order).
 */
inline PulseBatch nd_filter_batch(const PulseBatch& in, double od, RngStream& rng) {
  const double t = nd_transmittance(od);
  const uint64_t cap = nd_energy_cap(od, in.total());
  PulseBatch out = in;
  uint64_t passed = 0;
  for (auto& g : out.groups) {
    g.count = rng.binomial(g.count, t);
    passed += g.count;
  }
  if (passed > cap) {
    std::vector<uint64_t> keep(out.groups.size(), 0);
    uint64_t remaining = passed;
    for (uint64_t k = 0; k < cap; ++k) {
      uint64_t pick = rng.below(remaining);
      for (size_t gi = 0; gi < out.groups.size(); ++gi) {
        if (pick < out.groups[gi].count) {
          --out.groups[gi].count;
          ++keep[gi];
          break;
        }
        pick -= out.groups[gi].count;
      }
      --remaining;
    }
    for (size_t gi = 0; gi < out.groups.size(); ++gi) out.groups[gi].count = keep[gi];
  }
  std::erase_if(out.groups, [](const PulseBatch::Group& g) { return g.count == 0; });
  return out;
}

/**
 * Filter stack that brings mean photon number mu_i down to one photon per
 * pulse: a single filter when log10(mu_i) <= od_max, otherwise the fewest
 * equal filters that fit under od_max.
 */
inline std::vector<double> plan_od_stack(double mu_i, double od_max, int n_max, double tol = 0.01) {
  if (!(mu_i >= 1)) throw ValidationError("plan_od_stack needs mu_i >= 1");
  if (!(od_max > 0)) throw ValidationError("plan_od_stack needs od_max > 0");
  const double od_net = std::log10(mu_i);
  if (od_net <= od_max) return {od_net};
  const int k = static_cast<int>(std::ceil(od_net / od_max - 1e-12));
  if (k > n_max) {
    throw Unattainable("OD " + std::to_string(od_net) + " needs " + std::to_string(k) + " filters, at most " +
                       std::to_string(n_max) + " allowed");
  }
  std::vector<double> ods(static_cast<size_t>(k), od_net / k);
  double sum = 0;
  for (double od : ods) sum += od;
  if (std::abs(sum - od_net) > tol) throw Unattainable("filter stack misses the target OD");
  return ods;
}

/// Laser followed by its planned filter stack.
class WeakLaser {
 public:
  WeakLaser() = default;
  WeakLaser(LaserParams params, double od_max, int n_max, double tol = 0.01)
      : params_(params), ods_(plan_od_stack(std::max(1.0, params.mu_p), od_max, n_max, tol)) {}

  const LaserParams& params() const { return params_; }
  const std::vector<double>& ods() const { return ods_; }

  PulseBatch emit_batch(const QuantumState& desired, uint64_t pulse_index, RngStream& rng) const {
    PulseBatch b = laser_emit_batch(params_, desired, pulse_index, rng);
    for (double od : ods_) b = nd_filter_batch(b, od, rng);
    return b;
  }

  std::vector<Photon> emit(const QuantumState& desired, uint64_t pulse_index, IdSource& ids, RngStream& rng) const {
    return materialize(emit_batch(desired, pulse_index, rng), params_, ids, rng);
  }

 private:
  LaserParams params_;
  std::vector<double> ods_;
};

// ---------------------------------------------------------------------------
// Entangled-pair source.

struct SpdcParams {
  int spdc_type = 2;
  double chi = std::numbers::pi / 4;
  double alpha_phase = 0;
  double eta_spdc = 1e-6;
  Bell target_bell = Bell::PsiMinus;
  LaserParams pump;

  void validate() const {
    pump.validate();
    if (spdc_type != 1 && spdc_type != 2) throw ValidationError("spdc_type must be 1 or 2");
    if (eta_spdc < 0 || eta_spdc > 1) throw ValidationError("eta_spdc must be in [0,1]");
  }
};

/// Joint polarization state of a freshly converted pair.
inline QuantumState spdc_pair_state(const SpdcParams& params) {
  if (params.spdc_type == 2) return bell_state(params.target_bell);
  const double eps = std::tan(params.chi);
  return QuantumState::ket_from({1, 0, 0, eps * std::polar(1.0, params.alpha_phase)});
}

/// One pump pulse; every pump photon converts independently with eta_spdc.
/// Pump noise corrupts a converted pair with probability NL.
inline std::vector<std::pair<Photon, Photon>> spdc_emit(const SpdcParams& params, uint64_t pulse_index, IdSource& ids,
                                                        RngStream& rng) {
  const uint64_t n_pump = rng.poisson(params.pump.mu_p);
  const uint64_t n_pairs = rng.binomial(n_pump, params.eta_spdc);
  const double t_emit = params.pump.pulse_time(pulse_index);
  std::vector<std::pair<Photon, Photon>> pairs;
  pairs.reserve(n_pairs);
  for (uint64_t k = 0; k < n_pairs; ++k) {
    QuantumState joint = spdc_pair_state(params);
    if (rng.bernoulli(params.pump.noise_level)) joint = decohere(joint, params.pump.gamma, params.pump.lambda);
    const uint64_t ia = ids.next();
    const uint64_t ib = ids.next();
    auto pr = make_pair_photons(ia, ib, std::move(joint), t_emit);
    for (Photon* p : {&pr.first, &pr.second}) {
      p->wavelength_nm = 2 * params.pump.wavelength_nm;
      p->linewidth_nm = params.pump.linewidth_nm;
      p->temporal_width_s = params.pump.temporal_width_s;
      p->pulse = pulse_index;
    }
    pairs.push_back(std::move(pr));
  }
  return pairs;
}

}  // namespace qnetsim
