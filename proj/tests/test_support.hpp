// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "qnetsim/config.hpp"

namespace qnetsim::testing {

inline void set_entry(Section& s, const std::string& key, const std::string& value) {
  for (auto& [k, v] : s.entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  s.entries.emplace_back(key, value);
}

inline void set_entry(ExperimentConfig& c, const std::string& section, const std::string& key,
                      const std::string& value) {
  set_entry(c.section_mut(section), key, value);
}

/// Unit efficiencies, no noise, no dark counts, ideal polarizers.
inline ExperimentConfig make_ideal(ExperimentConfig c) {
  for (auto& s : c.components) {
    if (s.type == "weak_laser" || s.type == "spdc_source") {
      set_entry(s, "noise_level", "0");
      set_entry(s, "per", "inf");
    } else if (s.type == "quantum_channel") {
      set_entry(s, "eta_c", "1");
      set_entry(s, "f_pol", "1");
      set_entry(s, "p_depol", "0");
    } else if (s.type == "pbs") {
      set_entry(s, "er", "inf");
    } else if (s.type == "detector") {
      set_entry(s, "eta_c", "1");
      set_entry(s, "eta_det", "1");
      set_entry(s, "r_dark", "0");
    }
  }
  return c;
}

}  // namespace qnetsim::testing
