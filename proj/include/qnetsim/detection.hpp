// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnetsim/errors.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

struct DetectorParams {
  double eta_det = 1;  // intrinsic efficiency
  double eta_c = 1;    // coupling efficiency
  double tau_d = 0;    // dead time, s
  double tau_j = 0;    // jitter of the recovery time, s
  double r_dark = 0;   // dark counts per second

  void validate() const {
    if (eta_det < 0 || eta_det > 1 || eta_c < 0 || eta_c > 1) throw ValidationError("detector efficiencies must be in [0,1]");
    if (tau_d < 0 || tau_j < 0 || r_dark < 0) throw ValidationError("detector times and rates must be >= 0");
  }
};

enum class TriggerKind { True, Dark };

struct DetectionRecord {
  std::string detector;
  double time = 0;
  TriggerKind kind = TriggerKind::True;
  /// Tie-break for equal times.
  uint64_t seq = 0;
};

inline bool earlier(const DetectionRecord& a, const DetectionRecord& b) {
  if (a.time != b.time) return a.time < b.time;
  return a.seq < b.seq;
}

/// Recovery bookkeeping of one detector.
struct DetectorState {
  double last_click = -std::numeric_limits<double>::infinity();
  double t_next = 0;
};

/// Registers a photon arriving at `time`. Returns nothing on loss or dead-time veto.
inline std::optional<DetectionRecord> detector_register(const DetectorParams& p, const std::string& id, double time,
                                                        RngStream& rng, DetectorState& state, uint64_t seq = 0) {
  if (!(rng.uniform() < p.eta_c * p.eta_det)) return std::nullopt;
  if (time < state.last_click + state.t_next) return std::nullopt;
  state.last_click = time;
  state.t_next = std::max(0.0, p.tau_d + p.tau_j * rng.normal());
  return DetectionRecord{id, time, TriggerKind::True, seq};
}

/// Dark counts in [t0, t1) with exponential gaps.
inline std::vector<DetectionRecord> detector_dark_counts(const DetectorParams& p, const std::string& id, double t0,
                                                         double t1, RngStream& rng) {
  std::vector<DetectionRecord> out;
  if (p.r_dark <= 0 || t1 <= t0) return out;
  double t = t0 + rng.exponential(p.r_dark);
  while (t < t1) {
    out.push_back({id, t, TriggerKind::Dark, 0});
    t += rng.exponential(p.r_dark);
  }
  return out;
}

/**
 * Dark-count record for a whole run, generated lazily in increasing time
 * order. The result equals generating the full horizon up front.
 */
class DarkCountTrack {
 public:
  DarkCountTrack(DetectorParams params, std::string id, RngStream rng)
      : params_(params), id_(std::move(id)), rng_(std::move(rng)) {
    if (params_.r_dark > 0) next_ = rng_.exponential(params_.r_dark);
  }

  /// Records with time in [t0, t1]. Queries must not move backwards in t0.
  std::vector<DetectionRecord> in_window(double t0, double t1) {
    if (params_.r_dark <= 0) return {};
    while (next_ <= t1) {
      kept_.push_back({id_, next_, TriggerKind::Dark, 0});
      next_ += rng_.exponential(params_.r_dark);
    }
    while (!kept_.empty() && kept_.front().time < t0) kept_.pop_front();
    std::vector<DetectionRecord> out;
    for (const auto& r : kept_) {
      if (r.time <= t1) out.push_back(r);
    }
    return out;
  }

 private:
  DetectorParams params_;
  std::string id_;
  RngStream rng_;
  double next_ = std::numeric_limits<double>::infinity();
  std::deque<DetectionRecord> kept_;
};

// ---------------------------------------------------------------------------
// Node-level analysis.

/// One delay/width contributor on a photon's path.
struct PathSegment {
  double delay = 0;
  double width = 0;
};

struct Window {
  double t_min = 0;
  double t_max = 0;

  bool contains(double t) const { return t >= t_min && t <= t_max; }
  Window shifted(double dt) const { return {t_min + dt, t_max + dt}; }
};

/// mu_t -/+ k sigma_t, where mu_t sums the ideal delays and sigma_t sums the widths.
inline Window node_cutoffs(const std::vector<PathSegment>& path, double k) {
  double mu = 0, sigma = 0;
  for (const auto& s : path) {
    mu += s.delay;
    sigma += s.width;
  }
  return {mu - k * sigma, mu + k * sigma};
}

inline Window window_union(const Window& a, const Window& b) {
  return {std::min(a.t_min, b.t_min), std::max(a.t_max, b.t_max)};
}

enum class Verdict { Single, Bell, NoPhoton, NoBellPair };

struct DetectionOutcome {
  Verdict verdict = Verdict::NoPhoton;
  std::vector<DetectionRecord> hits;
};

namespace detail {

inline std::vector<DetectionRecord> merge_triggers(const std::vector<DetectionRecord>& true_triggers,
                                                   const std::vector<DetectionRecord>& darks, const Window& window) {
  std::vector<DetectionRecord> all = true_triggers;
  for (const auto& d : darks) {
    if (window.contains(d.time)) all.push_back(d);
  }
  std::stable_sort(all.begin(), all.end(), earlier);
  return all;
}

}  // namespace detail

/// Earliest trigger among the true triggers and the in-window dark counts.
inline DetectionOutcome analyze_single(const std::vector<DetectionRecord>& true_triggers,
                                       const std::vector<DetectionRecord>& darks, const Window& window) {
  auto all = detail::merge_triggers(true_triggers, darks, window);
  if (all.empty()) return {Verdict::NoPhoton, {}};
  return {Verdict::Single, {all.front()}};
}

/// Two earliest triggers, or NoBellPair when fewer than two occurred.
inline DetectionOutcome analyze_bell(const std::vector<DetectionRecord>& true_triggers,
                                     const std::vector<DetectionRecord>& darks, const Window& window) {
  auto all = detail::merge_triggers(true_triggers, darks, window);
  if (all.size() < 2) return {Verdict::NoBellPair, {}};
  return {Verdict::Bell, {all[0], all[1]}};
}

/// Registry of the components a sender or receiver owns.
class Node {
 public:
  explicit Node(std::string id, double cutoff_k = 3) : id_(std::move(id)), cutoff_k_(cutoff_k) {}

  const std::string& id() const { return id_; }
  double cutoff_k() const { return cutoff_k_; }

  void own(const std::string& component, const std::string& kind) {
    if (!components_.emplace(component, kind).second) {
      throw WiringError("component " + component + " registered twice on node " + id_);
    }
  }

  bool owns(const std::string& component) const { return components_.count(component) > 0; }

  std::vector<std::string> owned(const std::string& kind) const {
    std::vector<std::string> out;
    for (const auto& [name, k] : components_) {
      if (k == kind) out.push_back(name);
    }
    return out;
  }

  size_t size() const { return components_.size(); }

 private:
  std::string id_;
  double cutoff_k_;
  std::map<std::string, std::string> components_;
};

}  // namespace qnetsim
