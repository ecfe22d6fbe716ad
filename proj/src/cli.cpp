// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "qnetsim/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qnetsim/config.hpp"
#include "qnetsim/experiment.hpp"
#include "qnetsim/results.hpp"

namespace qnetsim {
namespace {

struct Source {
  std::string config_path;
  std::string preset;

  ExperimentConfig load() const {
    if (!config_path.empty() && !preset.empty()) throw ValidationError("give either --config or --preset, not both");
    if (!config_path.empty()) return load_config(config_path);
    if (!preset.empty()) return load_preset(preset);
    throw ValidationError("one of --config or --preset is required");
  }
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--config", src.config_path, "Config file");
  cmd->add_option("--preset", src.preset, "Bundled preset name");
}

bool is_config_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
         dynamic_cast<const WiringError*>(&e) || dynamic_cast<const Unattainable*>(&e) ||
         (dynamic_cast<const IoError*>(&e) && std::string(e.what()).rfind("cannot open config", 0) == 0);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for photonic quantum networks"};
  app.require_subcommand(1);

  Source sim_src;
  std::optional<std::string> scenario;
  std::optional<uint64_t> seed;
  std::optional<int> runs;
  std::string lengths;
  std::string out_path = "-";
  std::string format = "csv";
  auto* sim = app.add_subcommand("simulate", "Run a sweep and write per-run results");
  add_source(sim, sim_src);
  sim->add_option("--scenario", scenario, "qkd or teleport; must match the config")->check(CLI::IsMember({"qkd", "teleport"}));
  sim->add_option("--seed", seed, "Master seed");
  sim->add_option("--runs", runs, "Runs per point");
  sim->add_option("--lengths", lengths, "Comma-separated channel lengths in km");
  sim->add_option("--out", out_path, "Output path, - for stdout");
  sim->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  Source val_src;
  auto* val = app.add_subcommand("validate", "Load a config and check its wiring");
  add_source(val, val_src);

  auto* presets = app.add_subcommand("presets", "Bundled configurations");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "List preset names");
  std::string dump_name;
  auto* dump = presets->add_subcommand("dump", "Print a preset as a config file");
  dump->add_option("name", dump_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  ExperimentConfig cfg;
  try {
    if (*list) {
      for (const auto& n : preset_names()) out << n << "\n";
      return kExitOk;
    }
    if (*dump) {
      out << preset_text(dump_name);
      return kExitOk;
    }
    if (*val) {
      cfg = val_src.load();
      validate_wiring(cfg);
      out << "ok: " << scenario_name(cfg.scenario) << ", " << cfg.components.size() << " components\n";
      return kExitOk;
    }

    cfg = sim_src.load();
    if (scenario && parse_scenario(*scenario) != cfg.scenario) {
      throw ValidationError("--scenario " + *scenario + " does not match config scenario " +
                            scenario_name(cfg.scenario));
    }
    if (seed) cfg.seed = *seed;
    if (runs) cfg.runs = *runs;
    if (!lengths.empty()) cfg.lengths_km = detail::parse_double_list(lengths, "--lengths");
    validate_experiment(cfg);
    validate_wiring(cfg);
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return is_config_error(e) ? kExitConfig : kExitRuntime;
  }

  try {
    const ResultTable table = run_experiment(cfg);
    const OutputFormat fmt = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (out_path == "-") {
      out << (fmt == OutputFormat::Csv ? to_csv(table) : to_json(table));
    } else {
      write_results(table, out_path, fmt);
    }
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace qnetsim
