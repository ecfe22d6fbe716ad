// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qnetsim/qstate.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {
namespace {

constexpr double kPi = std::numbers::pi;
const double kH = 1 / std::sqrt(2.0);

Mat dm(std::initializer_list<std::initializer_list<cd>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (cd x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

void expect_mat_near(const Mat& a, const Mat& b, double tol = 1e-12) {
  ASSERT_EQ(a.rows(), b.rows());
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), tol) << "\n" << a << "\nvs\n" << b;
}

QuantumState random_ket(RngStream& r, int n_qubits) {
  Vec v(n_qubits == 1 ? 2 : 4);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(r.normal(), r.normal());
  return QuantumState::ket(v);
}

QuantumState random_density(RngStream& r, int n_qubits) {
  const int d = n_qubits == 1 ? 2 : 4;
  Mat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = cd(r.normal(), r.normal());
  }
  Mat rho = g * g.adjoint();
  return QuantumState::density(rho / rho.trace().real());
}

bool is_psd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) * 0.5);
  return es.eigenvalues().minCoeff() > -1e-10;
}

TEST(Tensor, Examples) {
  auto z = QuantumState::basis_state(Axis::Z, 0);
  auto t = tensor(z, z);
  EXPECT_LT((t.coeffs() - QuantumState::ket_from({1, 0, 0, 0}).coeffs()).norm(), 1e-12);

  auto pm = tensor(QuantumState::basis_state(Axis::X, 0), QuantumState::basis_state(Axis::X, 1));
  Vec expect(4);
  expect << 0.5, -0.5, 0.5, -0.5;
  EXPECT_LT((pm.coeffs() - expect).norm(), 1e-12);

  RngStream r(1, "tensor");
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(tensor(random_ket(r, 1), random_ket(r, 1)).coeffs().norm(), 1.0, 1e-12);
  }
  EXPECT_THROW(tensor(to_density(z), z), FormMismatch);
}

TEST(ToDensity, Examples) {
  expect_mat_near(to_density(QuantumState::basis_state(Axis::Z, 0)).rho(), dm({{1, 0}, {0, 0}}));
  expect_mat_near(to_density(QuantumState::basis_state(Axis::X, 0)).rho(), dm({{0.5, 0.5}, {0.5, 0.5}}));
  RngStream r(2, "purity");
  for (int i = 0; i < 20; ++i) {
    Mat rho = to_density(random_ket(r, 2)).rho();
    EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
  }
}

TEST(ToKet, Examples) {
  auto a = to_ket(QuantumState::density(dm({{1, 0}, {0, 0}})));
  EXPECT_NEAR(std::abs(a.coeffs()(0)), 1.0, 1e-12);

  auto b = to_ket(QuantumState::density(dm({{0.5, 0.5}, {0.5, 0.5}})));
  EXPECT_NEAR(fidelity(b, QuantumState::basis_state(Axis::X, 0)), 1.0, 1e-12);

  // Oracle: the dominant eigenvector of a diagonal matrix is the basis vector of its largest entry.
  auto c = to_ket(QuantumState::density(dm({{0.7, 0}, {0, 0.3}})));
  EXPECT_NEAR(std::norm(c.coeffs()(0)), 1.0, 1e-12);
  EXPECT_FALSE(c.degenerate_spectrum());

  auto d = to_ket(QuantumState::density(Mat::Identity(2, 2) * 0.5));
  EXPECT_TRUE(d.degenerate_spectrum());
}

TEST(Rotate, Examples) {
  auto z0 = QuantumState::basis_state(Axis::Z, 0);
  auto p = outcome_probabilities(rotate(z0, Axis::Z, 1.234), Basis::of(Axis::Z));
  EXPECT_NEAR(p[0], 1.0, 1e-12);

  auto flipped = rotate(z0, Axis::Y, kPi);
  EXPECT_NEAR(fidelity(flipped, QuantumState::basis_state(Axis::Z, 1)), 1.0, 1e-12);
}

TEST(Rotate, FullTurnIsIdentityOnDensity) {
  RngStream r(3, "rot");
  for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
    for (int n : {1, 2}) {
      auto s = random_density(r, n);
      expect_mat_near(rotate(s, ax, 2 * kPi).rho(), s.rho(), 1e-10);
    }
  }
}

TEST(Depolarize, Examples) {
  auto z0 = to_density(QuantumState::basis_state(Axis::Z, 0));
  expect_mat_near(depolarize(z0, 0).rho(), z0.rho());
  expect_mat_near(depolarize(z0, 1).rho(), Mat::Identity(2, 2) * 0.5);
  expect_mat_near(depolarize(z0, 0.3).rho(), dm({{0.85, 0}, {0, 0.15}}));
}

TEST(AmplitudeDamp, Examples) {
  RngStream r(4, "ad");
  auto s = random_density(r, 1);
  expect_mat_near(amplitude_damp(s, 0).rho(), s.rho());

  auto one = to_density(QuantumState::basis_state(Axis::Z, 1));
  expect_mat_near(amplitude_damp(one, 1).rho(), dm({{1, 0}, {0, 0}}));

  // Kraus sum by hand: E0 rho E0^+ + E1 rho E1^+ with rho = |+><+|.
  const double g = 0.3;
  auto plus = to_density(QuantumState::basis_state(Axis::X, 0));
  const double c = std::sqrt(1 - g) / 2;
  expect_mat_near(amplitude_damp(plus, g).rho(), dm({{0.5 + g / 2, c}, {c, (1 - g) / 2}}));
  expect_mat_near(amplitude_damp(plus, g).rho(), dm({{0.65, std::sqrt(0.7) / 2}, {std::sqrt(0.7) / 2, 0.35}}));
}

TEST(PhaseDamp, Examples) {
  RngStream r(5, "pd");
  auto s = random_density(r, 1);
  expect_mat_near(phase_damp(s, 0).rho(), s.rho());

  auto plus = to_density(QuantumState::basis_state(Axis::X, 0));
  Mat out = phase_damp(plus, 1).rho();
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(1, 0)), 0.0, 1e-12);

  for (double lam : {0.1, 0.45, 0.9}) {
    Mat o = phase_damp(s, lam).rho();
    EXPECT_NEAR(o(0, 0).real(), s.rho()(0, 0).real(), 1e-12);
    EXPECT_NEAR(o(1, 1).real(), s.rho()(1, 1).real(), 1e-12);
  }
}

TEST(Decohere, Examples) {
  RngStream r(6, "dec");
  auto s = random_density(r, 1);
  expect_mat_near(decohere(s, 0, 0).rho(), s.rho());
  for (double lam : {0.0, 0.5, 1.0}) expect_mat_near(decohere(s, 1, lam).rho(), dm({{1, 0}, {0, 0}}));

  auto plus = to_density(QuantumState::basis_state(Axis::X, 0));
  expect_mat_near(decohere(plus, 0.3, 0.45).rho(), phase_damp(amplitude_damp(plus, 0.3), 0.45).rho());
}

TEST(Kraus, CompletenessRelation) {
  for (double g : {0.0, 0.1, 0.3, 0.7, 1.0}) {
    for (const KrausSet& set : {amplitude_damping_kraus(g), phase_damping_kraus(g)}) {
      Mat sum = Mat::Zero(2, 2);
      for (const Mat& e : set) sum += e.adjoint() * e;
      expect_mat_near(sum, Mat::Identity(2, 2));
    }
  }
}

TEST(Kraus, ChannelsPreserveTraceAndPositivity) {
  RngStream r(7, "chan");
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 2;
    auto s = random_density(r, n);
    const double g = r.uniform(), l = r.uniform(), p = r.uniform();
    for (const QuantumState& out : {amplitude_damp(s, g), phase_damp(s, l), decohere(s, g, l), depolarize(s, p),
                                    rotate(s, Axis::X, 2 * kPi * r.uniform())}) {
      EXPECT_NEAR(out.rho().trace().real(), 1.0, 1e-10);
      EXPECT_TRUE(is_psd(out.rho()));
    }
  }
}

TEST(Measure, BasisStateIsDeterministic) {
  RngStream r(8, "m");
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(measure(QuantumState::basis_state(Axis::Z, 0), Basis::of(Axis::Z), r).outcome, 0);
  }
}

TEST(Measure, BornRuleFrequencies) {
  RngStream r(9, "born");
  const int n = 100000;
  struct Case {
    QuantumState s;
    Axis basis;
  };
  RngStream gen(10, "gen");
  std::vector<Case> cases{{QuantumState::basis_state(Axis::X, 0), Axis::Z},
                          {random_ket(gen, 1), Axis::Z},
                          {random_density(gen, 1), Axis::X},
                          {random_ket(gen, 1), Axis::Y}};
  for (const auto& c : cases) {
    const double p0 = outcome_probabilities(c.s, Basis::of(c.basis))[0];
    int zeros = 0;
    for (int i = 0; i < n; ++i) zeros += measure(c.s, Basis::of(c.basis), r).outcome == 0;
    EXPECT_NEAR(static_cast<double>(zeros) / n, p0, 3 * std::sqrt(p0 * (1 - p0) / n) + 1e-12);
  }
}

TEST(Measure, PsiMinusIsAnticorrelated) {
  RngStream r(11, "psi");
  auto psi = bell_state(Bell::PsiMinus);
  for (int i = 0; i < 1000; ++i) {
    int m = measure(psi, Basis::of(Axis::Z), r).outcome;
    ASSERT_TRUE(m == 1 || m == 2) << m;
  }
}

TEST(Metrics, Examples) {
  auto z0 = QuantumState::basis_state(Axis::Z, 0);
  auto z1 = QuantumState::basis_state(Axis::Z, 1);
  auto plus = QuantumState::basis_state(Axis::X, 0);
  EXPECT_NEAR(trace_distance(z0, z0), 0, 1e-12);
  EXPECT_NEAR(trace_distance(z0, z1), 1, 1e-12);
  EXPECT_NEAR(trace_distance(to_density(z0), to_density(plus)), kH, 1e-12);
  EXPECT_NEAR(fidelity(to_density(z0), to_density(z0)), 1, 1e-9);
  EXPECT_NEAR(fidelity(to_density(z0), to_density(z1)), 0, 1e-9);
  EXPECT_NEAR(fidelity(to_density(z0), to_density(plus)), kH, 1e-9);
  EXPECT_THROW(fidelity(z0, bell_state(Bell::PhiPlus)), DimensionMismatch);
}

TEST(Metrics, SymmetricAndConsistent) {
  RngStream r(12, "metric");
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 2;
    auto a = random_density(r, n);
    auto b = random_density(r, n);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-7);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
    EXPECT_NEAR(trace_distance(a, a), 0, 1e-12);
    EXPECT_NEAR(fidelity(a, a), 1, 1e-7);
  }
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
  auto reduced = partial_trace(bell_state(Bell::PsiMinus), 1);
  expect_mat_near(reduced.rho(), Mat::Identity(2, 2) * 0.5);
}

TEST(NearestAxis, PicksBlochAxis) {
  EXPECT_EQ(nearest_axis(QuantumState::basis_state(Axis::Z, 1)), Axis::Z);
  EXPECT_EQ(nearest_axis(QuantumState::basis_state(Axis::X, 1)), Axis::X);
  EXPECT_EQ(nearest_axis(QuantumState::basis_state(Axis::Y, 0)), Axis::Y);
}

}  // namespace
}  // namespace qnetsim
