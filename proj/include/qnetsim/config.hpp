// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnetsim/detection.hpp"
#include "qnetsim/errors.hpp"
#include "qnetsim/links.hpp"
#include "qnetsim/optics.hpp"
#include "qnetsim/protocols.hpp"
#include "qnetsim/qstate.hpp"
#include "qnetsim/sources.hpp"

namespace qnetsim {

enum class Scenario { Qkd, Teleport };

inline const char* scenario_name(Scenario s) { return s == Scenario::Qkd ? "qkd" : "teleport"; }

inline Scenario parse_scenario(const std::string& s) {
  if (s == "qkd") return Scenario::Qkd;
  if (s == "teleport") return Scenario::Teleport;
  throw ValidationError("unknown scenario '" + s + "'");
}

/// One `[name]` block of a config file; `type` selects the component kind.
struct Section {
  std::string name;
  std::string type;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError(where + ": '" + text + "' is not a number");
  }
  return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item, where));
  return out;
}

inline uint64_t parse_count(const std::string& text, const std::string& where) {
  const double v = parse_double(text, where);
  if (v < 0 || v != std::floor(v) || v > 1.8e19) throw ValidationError(where + ": '" + text + "' is not a count");
  return static_cast<uint64_t>(v);
}

inline const std::map<std::string, std::set<std::string>>& component_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"weak_laser",
       {"prr_hz", "wavelength_nm", "linewidth_nm", "temporal_width_s", "mu_p", "noise_level", "gamma", "lambda",
        "per", "od_min", "od_max", "n_ndf_max"}},
      {"spdc_source",
       {"prr_hz", "wavelength_nm", "linewidth_nm", "temporal_width_s", "mu_p", "noise_level", "gamma", "lambda",
        "spdc_type", "eta_spdc", "chi", "alpha_phase", "bell"}},
      {"quantum_channel", {"length_km", "eta_c", "alpha_db_per_km", "n_core", "f_pol", "d_chr", "p_depol"}},
      {"classical_channel", {"length_km", "n_core"}},
      {"npbs", {"reflectance"}},
      {"pbs", {"er", "transmits"}},
      {"waveplate", {"alpha_deg", "theta_deg"}},
      {"detector", {"eta_c", "eta_det", "tau_d", "tau_j", "r_dark"}},
  };
  return keys;
}

inline const std::set<std::string>& experiment_keys() {
  static const std::set<std::string> keys{"scenario",       "lengths_km",      "runs",          "seed",
                                          "cutoff_k",       "raw_target",      "qber_threshold", "stack_tolerance",
                                          "cascade_margin", "cascade_passes",  "attempts",      "targets",
                                          "shared_bell"};
  return keys;
}

}  // namespace detail

inline Bell parse_bell(const std::string& s) {
  if (s == "phi+") return Bell::PhiPlus;
  if (s == "phi-") return Bell::PhiMinus;
  if (s == "psi+") return Bell::PsiPlus;
  if (s == "psi-") return Bell::PsiMinus;
  throw ValidationError("unknown Bell state '" + s + "'");
}

/// Teleportation target given as "0", "1", "+" or "-".
inline QuantumState parse_target(const std::string& s) {
  if (s == "0") return QuantumState::basis_state(Axis::Z, 0);
  if (s == "1") return QuantumState::basis_state(Axis::Z, 1);
  if (s == "+") return QuantumState::basis_state(Axis::X, 0);
  if (s == "-") return QuantumState::basis_state(Axis::X, 1);
  throw ValidationError("unknown teleportation target '" + s + "'");
}

/// Weak laser together with its filter limits.
struct WeakLaserSpec {
  LaserParams laser;
  double od_min = 0;
  double od_max = 4;
  int n_ndf_max = 5;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::Qkd;
  std::vector<double> lengths_km{1};
  int runs = 10;
  uint64_t seed = 1;
  double cutoff_k = 3;
  // qkd
  uint64_t raw_target = 128;
  double qber_threshold = kDefaultQberThreshold;
  double stack_tolerance = 0.01;
  double cascade_margin = 0.02;
  int cascade_passes = 4;
  // teleport
  uint64_t attempts = 2500;
  std::vector<std::string> targets{"0", "1"};
  Bell shared_bell = Bell::PsiMinus;

  std::vector<Section> components;

  bool has(const std::string& name) const { return lookup(name) != nullptr; }

  const Section& section(const std::string& name, const std::string& type) const {
    const Section* s = lookup(name);
    if (!s) throw WiringError("missing parameters for component " + name);
    if (s->type != type) throw WiringError("component " + name + " must have type " + type + ", got " + s->type);
    return *s;
  }

  Section& section_mut(const std::string& name) {
    for (auto& s : components) {
      if (s.name == name) return s;
    }
    throw WiringError("missing parameters for component " + name);
  }

  const Section* lookup(const std::string& name) const {
    for (const auto& s : components) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Typed views of sections.

namespace detail {

class Fields {
 public:
  explicit Fields(const Section& s) : s_(s) {}

  double num(const std::string& key, double fallback) const {
    const std::string* v = s_.find(key);
    return v ? parse_double(*v, s_.name + "." + key) : fallback;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    const std::string* v = s_.find(key);
    return v ? trim(*v) : fallback;
  }

 private:
  const Section& s_;
};

inline constexpr double kDeg = std::numbers::pi / 180.0;

inline LaserParams laser_fields(const Fields& f) {
  LaserParams p;
  p.prr_hz = f.num("prr_hz", p.prr_hz);
  p.wavelength_nm = f.num("wavelength_nm", p.wavelength_nm);
  p.linewidth_nm = f.num("linewidth_nm", p.linewidth_nm);
  p.temporal_width_s = f.num("temporal_width_s", p.temporal_width_s);
  p.mu_p = f.num("mu_p", p.mu_p);
  p.noise_level = f.num("noise_level", p.noise_level);
  p.gamma = f.num("gamma", p.gamma);
  p.lambda = f.num("lambda", p.lambda);
  p.per = f.num("per", p.per);
  return p;
}

}  // namespace detail

inline WeakLaserSpec weak_laser_spec(const Section& s) {
  detail::Fields f(s);
  WeakLaserSpec w;
  w.laser = detail::laser_fields(f);
  w.od_min = f.num("od_min", w.od_min);
  w.od_max = f.num("od_max", w.od_max);
  const double n = f.num("n_ndf_max", w.n_ndf_max);
  if (n < 1 || n != std::floor(n)) throw ValidationError(s.name + ".n_ndf_max must be a positive integer");
  w.n_ndf_max = static_cast<int>(n);
  w.laser.validate();
  if (w.od_min < 0 || w.od_max <= w.od_min) throw ValidationError(s.name + ": need 0 <= od_min < od_max");
  return w;
}

inline SpdcParams spdc_params(const Section& s) {
  detail::Fields f(s);
  SpdcParams p;
  p.pump = detail::laser_fields(f);
  p.spdc_type = static_cast<int>(f.num("spdc_type", p.spdc_type));
  p.eta_spdc = f.num("eta_spdc", p.eta_spdc);
  p.chi = f.num("chi", p.chi);
  p.alpha_phase = f.num("alpha_phase", p.alpha_phase);
  p.target_bell = parse_bell(f.str("bell", "psi-"));
  p.validate();
  return p;
}

inline QuantumChannelParams quantum_channel_params(const Section& s) {
  detail::Fields f(s);
  QuantumChannelParams p;
  p.length_km = f.num("length_km", p.length_km);
  p.eta_c = f.num("eta_c", p.eta_c);
  p.alpha_db_per_km = f.num("alpha_db_per_km", p.alpha_db_per_km);
  p.n_core = f.num("n_core", p.n_core);
  p.f_pol = f.num("f_pol", p.f_pol);
  p.d_chr = f.num("d_chr", p.d_chr);
  p.p_depol = f.num("p_depol", p.p_depol);
  p.validate();
  return p;
}

inline ClassicalChannelParams classical_channel_params(const Section& s) {
  detail::Fields f(s);
  ClassicalChannelParams p;
  p.length_km = f.num("length_km", p.length_km);
  p.n_core = f.num("n_core", p.n_core);
  if (p.length_km < 0 || p.n_core < 1) throw ValidationError(s.name + ": bad classical channel parameters");
  return p;
}

inline NpbsParams npbs_params(const Section& s) {
  NpbsParams p;
  p.reflectance = detail::Fields(s).num("reflectance", p.reflectance);
  if (p.reflectance < 0 || p.reflectance > 1) throw ValidationError(s.name + ".reflectance must be in [0,1]");
  return p;
}

inline PbsParams pbs_params(const Section& s) {
  detail::Fields f(s);
  PbsParams p;
  p.er = f.num("er", p.er);
  const std::string t = f.str("transmits", "h");
  if (t != "h" && t != "v") throw ValidationError(s.name + ".transmits must be h or v");
  p.transmits_h = t == "h";
  if (!(p.er >= 1)) throw ValidationError(s.name + ".er must be >= 1");
  return p;
}

inline WaveplateParams waveplate_params(const Section& s) {
  detail::Fields f(s);
  WaveplateParams p;
  p.alpha = f.num("alpha_deg", 180) * detail::kDeg;
  p.theta = f.num("theta_deg", 0) * detail::kDeg;
  return p;
}

inline DetectorParams detector_params(const Section& s) {
  detail::Fields f(s);
  DetectorParams p;
  p.eta_c = f.num("eta_c", p.eta_c);
  p.eta_det = f.num("eta_det", p.eta_det);
  p.tau_d = f.num("tau_d", p.tau_d);
  p.tau_j = f.num("tau_j", p.tau_j);
  p.r_dark = f.num("r_dark", p.r_dark);
  p.validate();
  return p;
}

/// Parses every field of a section once so bad values surface at load time.
inline void validate_section(const Section& s) {
  const auto& table = detail::component_keys();
  auto it = table.find(s.type);
  if (it == table.end()) throw ValidationError("component " + s.name + " has unknown type '" + s.type + "'");
  std::vector<std::string> unknown;
  for (const auto& [k, v] : s.entries) {
    if (!it->second.count(k)) unknown.push_back(s.name + "." + k);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ValidationError(msg);
  }
  if (s.type == "weak_laser") weak_laser_spec(s);
  if (s.type == "spdc_source") spdc_params(s);
  if (s.type == "quantum_channel") quantum_channel_params(s);
  if (s.type == "classical_channel") classical_channel_params(s);
  if (s.type == "npbs") npbs_params(s);
  if (s.type == "pbs") pbs_params(s);
  if (s.type == "detector") detector_params(s);
  if (s.type == "waveplate") waveplate_params(s);
}

// ---------------------------------------------------------------------------
// Loading.

inline void validate_experiment(const ExperimentConfig& c) {
  if (c.runs < 1) throw ValidationError("experiment.runs must be >= 1");
  if (c.lengths_km.empty()) throw ValidationError("experiment.lengths_km must list at least one length");
  for (double l : c.lengths_km) {
    if (!(l > 0)) throw ValidationError("experiment.lengths_km entries must be > 0");
  }
  if (c.cutoff_k < 0) throw ValidationError("experiment.cutoff_k must be >= 0");
  if (c.raw_target < 1) throw ValidationError("experiment.raw_target must be >= 1");
  if (c.qber_threshold < 0 || c.qber_threshold > 1) throw ValidationError("experiment.qber_threshold must be in [0,1]");
  if (c.stack_tolerance <= 0) throw ValidationError("experiment.stack_tolerance must be > 0");
  if (c.cascade_passes < 1) throw ValidationError("experiment.cascade_passes must be >= 1");
  if (c.attempts < 1) throw ValidationError("experiment.attempts must be >= 1");
  if (c.targets.empty()) throw ValidationError("experiment.targets must not be empty");
  for (const auto& t : c.targets) parse_target(t);
}

inline ExperimentConfig parse_config(const std::string& text) {
  if (detail::trim(text).empty()) throw ParseError("config is empty");
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(std::string("config syntax: ") + e.what());
  }

  ExperimentConfig c;
  bool saw_experiment = false;
  for (const auto& [name, node] : tree) {
    if (node.empty() && !node.data().empty()) throw ParseError("key '" + name + "' outside of any section");
    if (name == "experiment") {
      saw_experiment = true;
      std::vector<std::string> unknown;
      for (const auto& [k, v] : node) {
        const std::string val = v.data();
        const std::string where = "experiment." + k;
        if (!detail::experiment_keys().count(k)) {
          unknown.push_back(where);
          continue;
        }
        if (k == "scenario") c.scenario = parse_scenario(detail::trim(val));
        if (k == "lengths_km") c.lengths_km = detail::parse_double_list(val, where);
        if (k == "runs") c.runs = static_cast<int>(detail::parse_count(val, where));
        if (k == "seed") c.seed = detail::parse_count(val, where);
        if (k == "cutoff_k") c.cutoff_k = detail::parse_double(val, where);
        if (k == "raw_target") c.raw_target = detail::parse_count(val, where);
        if (k == "qber_threshold") c.qber_threshold = detail::parse_double(val, where);
        if (k == "stack_tolerance") c.stack_tolerance = detail::parse_double(val, where);
        if (k == "cascade_margin") c.cascade_margin = detail::parse_double(val, where);
        if (k == "cascade_passes") c.cascade_passes = static_cast<int>(detail::parse_count(val, where));
        if (k == "attempts") c.attempts = detail::parse_count(val, where);
        if (k == "targets") c.targets = detail::split_list(val);
        if (k == "shared_bell") c.shared_bell = parse_bell(detail::trim(val));
      }
      if (!unknown.empty()) {
        std::string msg = "unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw ValidationError(msg);
      }
      continue;
    }
    Section s;
    s.name = name;
    for (const auto& [k, v] : node) {
      if (k == "type") {
        s.type = detail::trim(v.data());
      } else {
        s.entries.emplace_back(k, detail::trim(v.data()));
      }
    }
    if (s.type.empty()) throw ValidationError("component " + name + " has no type");
    validate_section(s);
    c.components.push_back(std::move(s));
  }
  if (!saw_experiment) throw ValidationError("config has no [experiment] section");
  validate_experiment(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Bundled presets.

inline const char* kQkdFig3Preset = R"([experiment]
scenario = qkd
lengths_km = 1, 2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20
runs = 10
seed = 1
cutoff_k = 3
raw_target = 128
qber_threshold = 0.11
stack_tolerance = 0.01
cascade_margin = 0.02
cascade_passes = 4

[WL]
type = weak_laser
prr_hz = 80e6
wavelength_nm = 1550
linewidth_nm = 0.01
temporal_width_s = 100e-15
mu_p = 1e5
noise_level = 0.01
gamma = 0.3
lambda = 0.45
od_min = 0
od_max = 4
n_ndf_max = 5

[QC]
type = quantum_channel
length_km = 1
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[CC]
type = classical_channel
length_km = 1
n_core = 1.47

[NPBS]
type = npbs
reflectance = 0.5

[PBS_HV]
type = pbs
er = 1000
transmits = h

[PBS_DA]
type = pbs
er = 1000
transmits = v

[HWP]
type = waveplate
alpha_deg = 180
theta_deg = 22.5

[QC_PBS_HV]
type = quantum_channel
length_km = 0.0005
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_HWP]
type = quantum_channel
length_km = 0.00025
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_PBS_DA]
type = quantum_channel
length_km = 0.00025
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D1]
type = quantum_channel
length_km = 0.00015
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D2]
type = quantum_channel
length_km = 0.00015
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D3]
type = quantum_channel
length_km = 0.00015
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D4]
type = quantum_channel
length_km = 0.00015
eta_c = 0.85
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[D1]
type = detector
eta_c = 0.90
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 100

[D2]
type = detector
eta_c = 0.90
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 100

[D3]
type = detector
eta_c = 0.90
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 100

[D4]
type = detector
eta_c = 0.90
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 100
)";

inline const char* kTeleportFig6Preset = R"([experiment]
scenario = teleport
lengths_km = 1
runs = 10
seed = 1
cutoff_k = 3
attempts = 2500
targets = 0, 1
shared_bell = psi-
stack_tolerance = 0.01

[EPS]
type = spdc_source
prr_hz = 76e6
wavelength_nm = 775
linewidth_nm = 0.01
temporal_width_s = 200e-15
mu_p = 1e6
noise_level = 0.01
gamma = 0.3
lambda = 0.45
spdc_type = 2
eta_spdc = 1e-6
bell = psi-

[WL]
type = weak_laser
prr_hz = 76e6
wavelength_nm = 1550
linewidth_nm = 0.01
temporal_width_s = 200e-15
mu_p = 1e5
noise_level = 0.01
gamma = 0.3
lambda = 0.45
od_min = 0
od_max = 4
n_ndf_max = 5

[QC_EPS1]
type = quantum_channel
length_km = 0.1
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_WL]
type = quantum_channel
length_km = 0.1
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_EPS2]
type = quantum_channel
length_km = 1
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[CC]
type = classical_channel
length_km = 1
n_core = 1.47

[NPBS]
type = npbs
reflectance = 0.5

[PBS1]
type = pbs
er = 1000
transmits = h

[PBS2]
type = pbs
er = 1000
transmits = h

[PBS_T]
type = pbs
er = 1000
transmits = h

[QC_PBS1]
type = quantum_channel
length_km = 0.0005
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_PBS2]
type = quantum_channel
length_km = 0.0005
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D1]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D2]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D3]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_D4]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_DT1]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[QC_DT2]
type = quantum_channel
length_km = 0.00015
eta_c = 0.95
alpha_db_per_km = 0.2
n_core = 1.47
f_pol = 0.90
d_chr = 17
p_depol = 0.3

[D1]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000

[D2]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000

[D3]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000

[D4]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000

[DT1]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000

[DT2]
type = detector
eta_c = 0.95
eta_det = 0.90
tau_d = 10e-9
tau_j = 55e-12
r_dark = 1000
)";

inline std::vector<std::string> preset_names() { return {"qkd_fig3", "teleport_fig6"}; }

inline std::string preset_text(const std::string& name) {
  if (name == "qkd_fig3") return kQkdFig3Preset;
  if (name == "teleport_fig6") return kTeleportFig6Preset;
  throw ValidationError("unknown preset '" + name + "'");
}

inline ExperimentConfig load_preset(const std::string& name) { return parse_config(preset_text(name)); }

}  // namespace qnetsim
