// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qnetsim/config.hpp"
#include "qnetsim/qkd.hpp"
#include "qnetsim/results.hpp"
#include "qnetsim/teleport.hpp"

namespace qnetsim {

/// Worker count: QNETSIM_THREADS if set to a positive integer, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QNETSIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs jobs[i] on a small pool; results land at their job index, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
inline void run_parallel(const std::vector<std::function<void()>>& jobs, unsigned workers) {
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i]();
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Whole sweep: every length, every target (teleport) and `runs` seeds
/// starting at the master seed.
inline ResultTable run_experiment(const ExperimentConfig& cfg, unsigned workers = worker_count()) {
  ResultTable table;
  std::vector<std::function<void()>> jobs;
  if (cfg.scenario == Scenario::Qkd) {
    std::vector<QkdNetwork> nets;
    for (double l : cfg.lengths_km) nets.push_back(build_qkd_network(cfg, l));
    table.rows.resize(nets.size() * static_cast<size_t>(cfg.runs));
    for (size_t li = 0; li < nets.size(); ++li) {
      for (int r = 0; r < cfg.runs; ++r) {
        const size_t slot = li * static_cast<size_t>(cfg.runs) + static_cast<size_t>(r);
        jobs.emplace_back([&, li, r, slot] { table.rows[slot] = run_qkd_once(nets[li], cfg, cfg.seed + r).result; });
      }
    }
    run_parallel(jobs, workers);
  } else {
    std::vector<TeleportNetwork> nets;
    for (double l : cfg.lengths_km) nets.push_back(build_teleport_network(cfg, l));
    const size_t per_length = cfg.targets.size() * static_cast<size_t>(cfg.runs);
    table.rows.resize(nets.size() * per_length);
    for (size_t li = 0; li < nets.size(); ++li) {
      for (size_t ti = 0; ti < cfg.targets.size(); ++ti) {
        for (int r = 0; r < cfg.runs; ++r) {
          const size_t slot = li * per_length + ti * static_cast<size_t>(cfg.runs) + static_cast<size_t>(r);
          jobs.emplace_back([&, li, ti, r, slot] {
            table.rows[slot] = run_teleport_once(nets[li], cfg, cfg.targets[ti], cfg.seed + r);
          });
        }
      }
    }
    run_parallel(jobs, workers);
  }
  return table;
}

/// Checks that a config wires up for its scenario at every sweep length.
inline void validate_wiring(const ExperimentConfig& cfg) {
  for (double l : cfg.lengths_km) {
    if (cfg.scenario == Scenario::Qkd) {
      build_qkd_network(cfg, l);
    } else {
      build_teleport_network(cfg, l);
    }
  }
}

}  // namespace qnetsim
