// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "qnetsim/errors.hpp"

namespace qnetsim {

/// Per-photon local time. Components read and advance the clock of the photon
/// they are handling instead of the global timeline.
struct AdaptiveClock {
  double local_now = 0.0;
  uint64_t owner = 0;

  void advance(double dt) { local_now += dt; }
};

/// Cancellable reference to a queued event.
class EventHandle {
 public:
  EventHandle() = default;
  explicit EventHandle(std::shared_ptr<bool> cancelled) : cancelled_(std::move(cancelled)) {}

  /// Returns true if this call cancelled a still-pending event.
  bool cancel() {
    auto flag = cancelled_.lock();
    if (!flag || *flag) return false;
    *flag = true;
    if (on_cancel_) on_cancel_();
    return true;
  }

  bool pending() const {
    auto flag = cancelled_.lock();
    return flag && !*flag;
  }

 private:
  friend class Timeline;
  std::weak_ptr<bool> cancelled_;
  std::function<void()> on_cancel_;
};

/**
 * Global event timeline: a min-heap keyed by (time, insertion sequence).
 *
 * Time is a plain double count of seconds; there is no quantization grid.
 */
class Timeline {
 public:
  using Callback = std::function<void()>;

  double now() const { return now_; }

  EventHandle schedule(double t, Callback cb) {
    if (t < now_) {
      throw PastTimeError("cannot schedule at t=" + std::to_string(t) +
                          " before now=" + std::to_string(now_));
    }
    auto flag = std::make_shared<bool>(false);
    queue_.push(Entry{t, next_seq_++, flag, std::move(cb)});
    ++scheduled_;
    EventHandle h(flag);
    h.on_cancel_ = [this] { ++cancelled_; };
    return h;
  }

  EventHandle schedule_in(double dt, Callback cb) { return schedule(now_ + dt, std::move(cb)); }

  /// Fires every event with time <= t_end, then moves now to t_end.
  size_t run_until(double t_end) {
    size_t fired = 0;
    while (!queue_.empty() && queue_.top().time <= t_end) {
      fired += pop_and_fire();
    }
    if (t_end > now_ && t_end != std::numeric_limits<double>::infinity()) now_ = t_end;
    return fired;
  }

  /// Drains the queue; now ends at the last fired event.
  size_t run() {
    size_t fired = 0;
    while (!queue_.empty()) fired += pop_and_fire();
    return fired;
  }

  /// Brings global time up to a photon's local time at the end of its run.
  void sync_clock(const AdaptiveClock& clock) { now_ = std::max(now_, clock.local_now); }

  bool empty() const { return queue_.empty(); }
  uint64_t scheduled_count() const { return scheduled_; }
  uint64_t cancelled_count() const { return cancelled_; }
  uint64_t fired_count() const { return fired_; }

 private:
  struct Entry {
    double time;
    uint64_t seq;
    std::shared_ptr<bool> cancelled;
    Callback cb;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  size_t pop_and_fire() {
    Entry e = queue_.top();
    queue_.pop();
    if (*e.cancelled) return 0;
    *e.cancelled = true;  // no longer cancellable
    now_ = e.time;
    ++fired_;
    e.cb();
    return 1;
  }

  double now_ = 0.0;
  uint64_t next_seq_ = 0;
  uint64_t scheduled_ = 0;
  uint64_t cancelled_ = 0;
  uint64_t fired_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
};

}  // namespace qnetsim
