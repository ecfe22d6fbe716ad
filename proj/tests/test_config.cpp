// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qnetsim/experiment.hpp"
#include "test_support.hpp"

namespace qnetsim {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Presets, LoadAndWire) {
  auto q = load_preset("qkd_fig3");
  EXPECT_EQ(q.scenario, Scenario::Qkd);
  EXPECT_EQ(q.lengths_km.size(), 9u);
  EXPECT_EQ(q.runs, 10);
  EXPECT_NO_THROW(validate_wiring(q));

  auto t = load_preset("teleport_fig6");
  EXPECT_EQ(t.scenario, Scenario::Teleport);
  EXPECT_EQ(t.attempts, 2500u);
  EXPECT_EQ(t.targets, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(t.shared_bell, Bell::PsiMinus);
  EXPECT_NO_THROW(validate_wiring(t));

  EXPECT_THROW(load_preset("nope"), ValidationError);
}

TEST(Presets, ConfigFilesMatchBundledText) {
  for (const auto& name : preset_names()) {
    const std::string path = std::string(QNETSIM_SOURCE_DIR) + "/configs/" + name + ".ini";
    std::string text = read_file(path);
    // Drop the leading comment block.
    while (!text.empty() && (text[0] == ';' || text[0] == '\n')) text.erase(0, text.find('\n') + 1);
    EXPECT_EQ(text, preset_text(name)) << name;
    EXPECT_NO_THROW(load_config(path)) << name;
  }
}

TEST(Presets, TypedValues) {
  auto q = load_preset("qkd_fig3");
  auto wl = weak_laser_spec(q.section("WL", "weak_laser"));
  EXPECT_EQ(wl.laser.prr_hz, 80e6);
  EXPECT_EQ(wl.laser.mu_p, 1e5);
  EXPECT_EQ(wl.od_max, 4);
  auto hwp = waveplate_params(q.section("HWP", "waveplate"));
  EXPECT_NEAR(hwp.theta, std::numbers::pi / 8, 1e-15);
  EXPECT_NEAR(hwp.alpha, std::numbers::pi, 1e-15);
  auto pbs = pbs_params(q.section("PBS_DA", "pbs"));
  EXPECT_FALSE(pbs.transmits_h);
  EXPECT_EQ(pbs.er, 1000);
}

TEST(ParseConfig, EmptyTextIsParseError) {
  EXPECT_THROW(parse_config(""), ParseError);
  EXPECT_THROW(parse_config("  \n\n"), ParseError);
}

TEST(ParseConfig, SyntaxErrorIsParseError) { EXPECT_THROW(parse_config("[experiment\nscenario = qkd\n"), ParseError); }

TEST(ParseConfig, MissingExperimentSection) {
  EXPECT_THROW(parse_config("[WL]\ntype = weak_laser\n"), ValidationError);
}

TEST(ParseConfig, NegativeLengthRejected) {
  std::string text = preset_text("qkd_fig3");
  text.replace(text.find("lengths_km = 1,"), 15, "lengths_km = -1,");
  EXPECT_THROW(parse_config(text), ValidationError);
}

TEST(ParseConfig, UnknownKeysAreListed) {
  std::string text = preset_text("qkd_fig3") + "\n[EXTRA]\ntype = npbs\nreflectance = 0.5\nshine = 3\n";
  try {
    parse_config(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("shine"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[experiment]\nscenario = qkd\nfoo = 1\n"), ValidationError);
}

TEST(ParseConfig, BadNumberRejected) {
  EXPECT_THROW(parse_config("[experiment]\nscenario = qkd\nruns = ten\n"), Error);
}

TEST(LoadConfig, MissingFileIsIoError) { EXPECT_THROW(load_config("/nonexistent/qnetsim.ini"), IoError); }

TEST(Wiring, MissingWaveplateIsWiringError) {
  auto c = load_preset("qkd_fig3");
  std::erase_if(c.components, [](const Section& s) { return s.name == "HWP"; });
  EXPECT_THROW(validate_wiring(c), WiringError);
}

TEST(Wiring, WrongTypeIsWiringError) {
  auto c = load_preset("qkd_fig3");
  c.section_mut("HWP").type = "npbs";
  EXPECT_THROW(validate_wiring(c), WiringError);
}

TEST(Wiring, TeleportSourceChannelsMustMatch) {
  auto c = load_preset("teleport_fig6");
  testing::set_entry(c, "QC_WL", "length_km", "0.002");
  EXPECT_THROW(validate_wiring(c), WiringError);
}

TEST(Wiring, UnreachableFilterStackIsUnattainable) {
  auto c = load_preset("qkd_fig3");
  testing::set_entry(c, "WL", "mu_p", "1e9");
  testing::set_entry(c, "WL", "n_ndf_max", "2");
  EXPECT_THROW(validate_wiring(c), Unattainable);
}

TEST(ParseHelpers, BellAndTargets) {
  EXPECT_EQ(parse_bell("phi+"), Bell::PhiPlus);
  EXPECT_EQ(parse_bell("psi-"), Bell::PsiMinus);
  EXPECT_THROW(parse_bell("chi"), ValidationError);
  EXPECT_NEAR(fidelity(parse_target("+"), QuantumState::basis_state(Axis::X, 0)), 1, 1e-12);
  EXPECT_THROW(parse_target("2"), ValidationError);
}

}  // namespace
}  // namespace qnetsim
