// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qnetsim/errors.hpp"

namespace qnetsim {

/// Outputs of one (length, seed[, target]) run. Fields that do not apply to
/// the scenario, or are undefined for the run, stay empty.
struct RunResult {
  std::string scenario;
  double length_km = 0;
  uint64_t seed = 0;
  std::string target;

  // qkd
  std::optional<double> qber;
  std::optional<double> kgr_raw, kgr_sifted, kgr_reconciled, kgr_secret;
  std::optional<uint64_t> n_raw, n_sift, n_reconciled, n_secret;
  std::optional<double> mu_a;
  bool aborted = false;

  // shared: pulses fired (qkd) or attempts (teleport)
  std::optional<uint64_t> attempts;

  // teleport
  std::optional<uint64_t> successes, matches;
  std::optional<double> fidelity;
};

/// Mean and sample standard deviation of one column at one point.
struct Stat {
  double mean = 0;
  double stddev = 0;
  uint64_t n = 0;
};

struct PointAggregate {
  std::string scenario;
  double length_km = 0;
  std::string target;
  std::map<std::string, Stat> stats;
};

struct ResultTable {
  std::vector<RunResult> rows;

  /// Per (scenario, length, target) statistics over the rows; empty fields are skipped.
  std::vector<PointAggregate> aggregates() const;
};

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "scenario",  "length_km",   "seed",    "qber",     "kgr_raw", "kgr_sifted",   "kgr_reconciled",
      "kgr_secret", "attempts",   "successes", "fidelity", "aborted", "target",      "matches",
      "n_raw",     "n_sift",      "n_reconciled", "n_secret", "mu_a"};
  return cols;
}

namespace detail {

/// Shortest round-trip decimal form.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string cell(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }
inline std::string cell(const std::optional<uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

inline std::optional<double> as_double(const std::optional<uint64_t>& v) {
  return v ? std::optional<double>(static_cast<double>(*v)) : std::nullopt;
}

inline std::vector<std::pair<std::string, std::optional<double>>> numeric_fields(const RunResult& r) {
  std::optional<double> match_rate;
  if (r.successes && r.matches && *r.successes > 0) {
    match_rate = static_cast<double>(*r.matches) / static_cast<double>(*r.successes);
  }
  return {{"qber", r.qber},
          {"kgr_raw", r.kgr_raw},
          {"kgr_sifted", r.kgr_sifted},
          {"kgr_reconciled", r.kgr_reconciled},
          {"kgr_secret", r.kgr_secret},
          {"attempts", as_double(r.attempts)},
          {"successes", as_double(r.successes)},
          {"matches", as_double(r.matches)},
          {"match_rate", match_rate},
          {"fidelity", r.fidelity},
          {"n_raw", as_double(r.n_raw)},
          {"n_sift", as_double(r.n_sift)},
          {"n_reconciled", as_double(r.n_reconciled)},
          {"n_secret", as_double(r.n_secret)},
          {"mu_a", r.mu_a},
          {"aborted", static_cast<double>(r.aborted)}};
}

}  // namespace detail

inline std::vector<PointAggregate> ResultTable::aggregates() const {
  using Key = std::tuple<std::string, double, std::string>;
  std::vector<Key> order;
  std::map<Key, std::map<std::string, std::vector<double>>> values;
  for (const auto& r : rows) {
    Key key{r.scenario, r.length_km, r.target};
    if (!values.count(key)) order.push_back(key);
    auto& cols = values[key];
    for (const auto& [name, v] : detail::numeric_fields(r)) {
      auto& list = cols[name];
      if (v) list.push_back(*v);
    }
  }
  std::vector<PointAggregate> out;
  for (const auto& key : order) {
    PointAggregate a{std::get<0>(key), std::get<1>(key), std::get<2>(key), {}};
    for (const auto& [name, list] : values[key]) {
      if (list.empty()) continue;
      Stat s;
      s.n = list.size();
      for (double v : list) s.mean += v;
      s.mean /= static_cast<double>(s.n);
      if (s.n > 1) {
        double ss = 0;
        for (double v : list) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
      }
      a.stats[name] = s;
    }
    out.push_back(std::move(a));
  }
  return out;
}

inline std::string to_csv(const ResultTable& t) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : t.rows) {
    out << r.scenario << ',' << detail::fmt_double(r.length_km) << ',' << r.seed << ',' << detail::cell(r.qber) << ','
        << detail::cell(r.kgr_raw) << ',' << detail::cell(r.kgr_sifted) << ',' << detail::cell(r.kgr_reconciled)
        << ',' << detail::cell(r.kgr_secret) << ',' << detail::cell(r.attempts) << ',' << detail::cell(r.successes)
        << ',' << detail::cell(r.fidelity) << ',' << (r.aborted ? "true" : "false") << ',' << r.target << ','
        << detail::cell(r.matches) << ',' << detail::cell(r.n_raw) << ',' << detail::cell(r.n_sift) << ','
        << detail::cell(r.n_reconciled) << ',' << detail::cell(r.n_secret) << ',' << detail::cell(r.mu_a) << "\n";
  }
  return out.str();
}

inline std::string to_json(const ResultTable& t) {
  using nlohmann::ordered_json;
  auto num = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  auto cnt = [](const std::optional<uint64_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["length_km"] = r.length_km;
    j["seed"] = r.seed;
    j["qber"] = num(r.qber);
    j["kgr_raw"] = num(r.kgr_raw);
    j["kgr_sifted"] = num(r.kgr_sifted);
    j["kgr_reconciled"] = num(r.kgr_reconciled);
    j["kgr_secret"] = num(r.kgr_secret);
    j["attempts"] = cnt(r.attempts);
    j["successes"] = cnt(r.successes);
    j["fidelity"] = num(r.fidelity);
    j["aborted"] = r.aborted;
    j["target"] = r.target;
    j["matches"] = cnt(r.matches);
    j["n_raw"] = cnt(r.n_raw);
    j["n_sift"] = cnt(r.n_sift);
    j["n_reconciled"] = cnt(r.n_reconciled);
    j["n_secret"] = cnt(r.n_secret);
    j["mu_a"] = num(r.mu_a);
    rows.push_back(std::move(j));
  }
  ordered_json aggs = ordered_json::array();
  for (const auto& a : t.aggregates()) {
    ordered_json j;
    j["scenario"] = a.scenario;
    j["length_km"] = a.length_km;
    j["target"] = a.target;
    ordered_json stats;
    for (const auto& [name, s] : a.stats) stats[name] = {{"mean", s.mean}, {"stddev", s.stddev}, {"n", s.n}};
    j["stats"] = std::move(stats);
    aggs.push_back(std::move(j));
  }
  ordered_json doc;
  doc["rows"] = std::move(rows);
  doc["aggregates"] = std::move(aggs);
  return doc.dump(2) + "\n";
}

enum class OutputFormat { Csv, Json };

inline void write_results(const ResultTable& t, const std::string& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << (format == OutputFormat::Csv ? to_csv(t) : to_json(t));
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace qnetsim
