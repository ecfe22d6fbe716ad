// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qnetsim/errors.hpp"
#include "qnetsim/rng.hpp"

namespace qnetsim {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Polarization bases: Z = H/V, X = D/A, Y = R/L.
enum class Axis { Z, X, Y };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::Z: return "Z";
    case Axis::X: return "X";
    case Axis::Y: return "Y";
  }
  return "?";
}

struct Basis {
  Axis tag = Axis::Z;
  Vec v0;
  Vec v1;

  static Basis of(Axis tag) {
    Basis b;
    b.tag = tag;
    b.v0 = Vec(2);
    b.v1 = Vec(2);
    switch (tag) {
      case Axis::Z:
        b.v0 << 1, 0;
        b.v1 << 0, 1;
        break;
      case Axis::X:
        b.v0 << kInvSqrt2, kInvSqrt2;
        b.v1 << kInvSqrt2, -kInvSqrt2;
        break;
      case Axis::Y:
        b.v0 << kInvSqrt2, cd(0, kInvSqrt2);
        b.v1 << kInvSqrt2, cd(0, -kInvSqrt2);
        break;
    }
    return b;
  }

  const Vec& vector(int outcome) const { return outcome == 0 ? v0 : v1; }
  Mat projector(int outcome) const {
    const Vec& v = vector(outcome);
    return v * v.adjoint();
  }
};

enum class Form { Ket, Density };

/**
 * A 1- or 2-qubit polarization state in ket or density-matrix form.
 *
 * Amplitudes are always stored in the computational (H/V) representation. The
 * basis tag records which basis the state was prepared in; noise models use it
 * to pick a rotation axis.
 */
class QuantumState {
 public:
  /// |0>.
  QuantumState() : coeffs_(Vec::Unit(2, 0)) {}

  static QuantumState ket(Vec coeffs, Axis tag = Axis::Z) {
    check_dim(coeffs.size());
    double n = coeffs.norm();
    if (n < 1e-300) throw DimensionMismatch("zero state vector");
    QuantumState s;
    s.form_ = Form::Ket;
    s.coeffs_ = coeffs / n;
    s.rho_ = Mat();
    s.tag_ = tag;
    return s;
  }

  static QuantumState density(Mat rho, Axis tag = Axis::Z) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
    check_dim(rho.rows());
    QuantumState s;
    s.form_ = Form::Density;
    s.rho_ = (rho + rho.adjoint()) * 0.5;
    s.coeffs_ = Vec();
    s.tag_ = tag;
    return s;
  }

  static QuantumState ket_from(std::initializer_list<cd> c, Axis tag = Axis::Z) {
    Vec v(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (cd x : c) v(i++) = x;
    return ket(std::move(v), tag);
  }

  /// Basis state |outcome> of the given basis.
  static QuantumState basis_state(Axis tag, int outcome) { return ket(Basis::of(tag).vector(outcome), tag); }

  int n_qubits() const { return dim() == 2 ? 1 : 2; }
  int dim() const { return static_cast<int>(form_ == Form::Ket ? coeffs_.size() : rho_.rows()); }
  Form form() const { return form_; }
  bool is_ket() const { return form_ == Form::Ket; }
  const Vec& coeffs() const {
    if (form_ != Form::Ket) throw FormMismatch("state is in density form");
    return coeffs_;
  }
  const Mat& rho() const {
    if (form_ != Form::Density) throw FormMismatch("state is in ket form");
    return rho_;
  }
  Axis basis() const { return tag_; }
  void set_basis(Axis tag) { tag_ = tag; }

  /// Density matrix regardless of form.
  Mat density_matrix() const { return form_ == Form::Ket ? Mat(coeffs_ * coeffs_.adjoint()) : rho_; }

  /// Set by to_ket when the top two eigenvalues were within 1e-9.
  bool degenerate_spectrum() const { return degenerate_; }

 private:
  static void check_dim(Eigen::Index d) {
    if (d != 2 && d != 4) throw DimensionMismatch("only 1- and 2-qubit states are supported");
  }

  friend QuantumState to_ket(const QuantumState&);

  Form form_ = Form::Ket;
  Vec coeffs_;
  Mat rho_;
  Axis tag_ = Axis::Z;
  bool degenerate_ = false;
};

// ---------------------------------------------------------------------------
// Fixed operators.

enum class Pauli { I, X, Y, Z };

inline Mat pauli(Pauli p) {
  Mat m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Single-qubit rotation R_axis(theta).
inline Mat rotation_matrix(Axis axis, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat m(2, 2);
  switch (axis) {
    case Axis::X: m << c, cd(0, -s), cd(0, -s), c; break;
    case Axis::Y: m << c, -s, s, c; break;
    case Axis::Z: m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2); break;
  }
  return m;
}

/// Lifts a single-qubit operator to act on `qubit` of an n-qubit register.
inline Mat on_qubit(const Mat& m, int qubit, int n_qubits) {
  if (n_qubits == 1) return m;
  return qubit == 0 ? kron(m, pauli(Pauli::I)) : kron(pauli(Pauli::I), m);
}

// ---------------------------------------------------------------------------
// Form conversion.

inline QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  if (!a.is_ket() || !b.is_ket()) throw FormMismatch("tensor requires ket-form inputs");
  if (a.n_qubits() != 1 || b.n_qubits() != 1) throw DimensionMismatch("tensor takes two 1-qubit states");
  return QuantumState::ket(kron(a.coeffs(), b.coeffs()), a.basis());
}

inline QuantumState to_density(const QuantumState& s) {
  if (!s.is_ket()) throw FormMismatch("to_density requires a ket");
  return QuantumState::density(s.density_matrix(), s.basis());
}

/// Rotates away the global phase so the first non-negligible amplitude is real positive.
inline Vec fix_global_phase(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return v;
}

namespace detail {

inline bool lex_greater(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-12) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-12) return a(i).imag() > b(i).imag();
  }
  return false;
}

inline Eigen::SelfAdjointEigenSolver<Mat> eig(const Mat& m) {
  return Eigen::SelfAdjointEigenSolver<Mat>((m + m.adjoint()) * 0.5);
}

}  // namespace detail

/**
 * Most probable pure state of a density matrix: the eigenvector of the largest
 * eigenvalue. When the top of the spectrum is degenerate the lexicographically
 * greatest candidate is chosen and the degenerate flag is set.
 */
inline QuantumState to_ket(const QuantumState& s) {
  if (s.is_ket()) throw FormMismatch("to_ket requires a density matrix");
  auto es = detail::eig(s.rho());
  const auto& w = es.eigenvalues();
  const Eigen::Index d = w.size();
  Vec best = fix_global_phase(es.eigenvectors().col(d - 1));
  bool degenerate = false;
  for (Eigen::Index k = d - 2; k >= 0; --k) {
    if (w(d - 1) - w(k) >= 1e-9) break;
    degenerate = true;
    Vec cand = fix_global_phase(es.eigenvectors().col(k));
    if (detail::lex_greater(cand, best)) best = cand;
  }
  QuantumState out = QuantumState::ket(best, s.basis());
  out.degenerate_ = degenerate;
  return out;
}

// ---------------------------------------------------------------------------
// Unitaries and channels.

/// Applies a unitary of matching dimension (ket: U psi, density: U rho U^dagger).
inline QuantumState apply_unitary(const QuantumState& s, const Mat& u) {
  if (u.rows() != s.dim()) throw DimensionMismatch("operator and state dimensions differ");
  if (s.is_ket()) return QuantumState::ket(u * s.coeffs(), s.basis());
  return QuantumState::density(u * s.rho() * u.adjoint(), s.basis());
}

/// R_axis(theta) on a 1-qubit state, R (x) R on a 2-qubit state.
inline QuantumState rotate(const QuantumState& s, Axis axis, double theta) {
  Mat r = rotation_matrix(axis, theta);
  return apply_unitary(s, s.n_qubits() == 1 ? r : kron(r, r));
}

inline QuantumState depolarize(const QuantumState& s, double p) {
  Mat rho = s.density_matrix();
  const auto d = rho.rows();
  return QuantumState::density(p * Mat::Identity(d, d) / static_cast<double>(d) + (1 - p) * rho, s.basis());
}

using KrausSet = std::vector<Mat>;

/// sum_k E_k rho E_k^dagger; single-qubit sets are applied as E (x) E on two qubits.
inline QuantumState apply_kraus(const QuantumState& s, const KrausSet& ops) {
  Mat rho = s.density_matrix();
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  if (s.n_qubits() == 1) {
    for (const Mat& e : ops) out += e * rho * e.adjoint();
  } else {
    for (const Mat& a : ops) {
      for (const Mat& b : ops) {
        Mat e = kron(a, b);
        out += e * rho * e.adjoint();
      }
    }
  }
  return QuantumState::density(out, s.basis());
}

inline KrausSet amplitude_damping_kraus(double gamma) {
  Mat e0(2, 2), e1(2, 2);
  e0 << 1, 0, 0, std::sqrt(1 - gamma);
  e1 << 0, std::sqrt(gamma), 0, 0;
  return {e0, e1};
}

inline KrausSet phase_damping_kraus(double lambda) {
  Mat e0(2, 2), e1(2, 2);
  e0 << 1, 0, 0, std::sqrt(1 - lambda);
  e1 << 0, 0, 0, std::sqrt(lambda);
  return {e0, e1};
}

inline QuantumState amplitude_damp(const QuantumState& s, double gamma) {
  return apply_kraus(s, amplitude_damping_kraus(gamma));
}

inline QuantumState phase_damp(const QuantumState& s, double lambda) {
  return apply_kraus(s, phase_damping_kraus(lambda));
}

/// Phase damping applied after amplitude damping.
inline QuantumState decohere(const QuantumState& s, double gamma, double lambda) {
  return phase_damp(amplitude_damp(s, gamma), lambda);
}

// ---------------------------------------------------------------------------
// Measurement.

struct Measurement {
  int outcome = 0;  // bit for 1 qubit, (b0 << 1) | b1 for 2 qubits
  QuantumState post;
};

namespace detail {

inline double expectation(const QuantumState& s, const Mat& p) {
  if (s.is_ket()) return std::max(0.0, (s.coeffs().adjoint() * p * s.coeffs())(0, 0).real());
  return std::max(0.0, (p * s.rho()).trace().real());
}

inline QuantumState project(const QuantumState& s, const Mat& p, double prob) {
  if (s.is_ket()) return QuantumState::ket(p * s.coeffs() / std::sqrt(prob), s.basis());
  return QuantumState::density(p * s.rho() * p.adjoint() / prob, s.basis());
}

inline int sample_index(const std::vector<double>& probs, RngStream& rng) {
  double total = 0;
  for (double p : probs) total += p;
  double u = rng.uniform() * total;
  int last_nonzero = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) continue;
    last_nonzero = static_cast<int>(i);
    if (u < probs[i]) return static_cast<int>(i);
    u -= probs[i];
  }
  return last_nonzero;
}

}  // namespace detail

/// Outcome probabilities of measuring every qubit in `basis`.
inline std::vector<double> outcome_probabilities(const QuantumState& s, const Basis& basis) {
  std::vector<double> probs;
  if (s.n_qubits() == 1) {
    for (int m = 0; m < 2; ++m) probs.push_back(detail::expectation(s, basis.projector(m)));
  } else {
    for (int m = 0; m < 4; ++m) {
      probs.push_back(detail::expectation(s, kron(basis.projector(m >> 1), basis.projector(m & 1))));
    }
  }
  return probs;
}

/// Projective measurement of every qubit in `basis`; zero-probability branches
/// are never selected.
inline Measurement measure(const QuantumState& s, const Basis& basis, RngStream& rng) {
  auto probs = outcome_probabilities(s, basis);
  int m = detail::sample_index(probs, rng);
  Mat p = s.n_qubits() == 1 ? basis.projector(m) : kron(basis.projector(m >> 1), basis.projector(m & 1));
  Measurement out{m, detail::project(s, p, probs[m])};
  out.post.set_basis(basis.tag);
  return out;
}

/// Measures a single qubit of a 2-qubit state; the post state stays 2-qubit.
inline Measurement measure_qubit(const QuantumState& s, int qubit, const Basis& basis, RngStream& rng) {
  if (s.n_qubits() == 1) return measure(s, basis, rng);
  std::vector<double> probs;
  std::array<Mat, 2> proj;
  for (int m = 0; m < 2; ++m) {
    proj[m] = on_qubit(basis.projector(m), qubit, 2);
    probs.push_back(detail::expectation(s, proj[m]));
  }
  int m = detail::sample_index(probs, rng);
  return {m, detail::project(s, proj[m], probs[m])};
}

/// Reduced state of one qubit of a 2-qubit state.
inline QuantumState partial_trace(const QuantumState& s, int keep) {
  if (s.n_qubits() == 1) return s;
  Mat rho = s.density_matrix();
  Mat out = Mat::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        int r = keep == 0 ? (i << 1) | k : (k << 1) | i;
        int c = keep == 0 ? (j << 1) | k : (k << 1) | j;
        out(i, j) += rho(r, c);
      }
    }
  }
  return QuantumState::density(out, s.basis());
}

/// State of the partner qubit once `measured_qubit` is known to be in basis
/// vector `outcome`. Stays a ket when the input was a ket.
inline QuantumState partner_state(const QuantumState& post, int measured_qubit, const Basis& basis, int outcome) {
  if (!post.is_ket()) return partial_trace(post, 1 - measured_qubit);
  const Vec& m = basis.vector(outcome);
  const Vec& c = post.coeffs();
  Vec v = Vec::Zero(2);
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      int idx = measured_qubit == 0 ? (j << 1) | k : (k << 1) | j;
      v(k) += std::conj(m(j)) * c(idx);
    }
  }
  return QuantumState::ket(v, post.basis());
}

// ---------------------------------------------------------------------------
// Metrics.

namespace detail {

inline Mat psd_sqrt(const Mat& m) {
  auto es = eig(m);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

inline void same_dim(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("states have different dimensions");
}

}  // namespace detail

inline double trace_distance(const QuantumState& a, const QuantumState& b) {
  detail::same_dim(a, b);
  auto es = detail::eig(a.density_matrix() - b.density_matrix());
  return std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

inline double fidelity(const QuantumState& a, const QuantumState& b) {
  detail::same_dim(a, b);
  if (a.is_ket()) {
    double v = detail::expectation(b, a.coeffs() * a.coeffs().adjoint());
    return std::clamp(std::sqrt(v), 0.0, 1.0);
  }
  if (b.is_ket()) return fidelity(b, a);
  Mat sa = detail::psd_sqrt(a.rho());
  Mat inner = detail::psd_sqrt(sa * b.rho() * sa);
  return std::clamp(inner.trace().real(), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Helpers used by sources, optics and protocols.

/// The state orthogonal to a 1-qubit pure state (or I - rho for a density matrix).
inline QuantumState orthogonal(const QuantumState& s) {
  if (s.n_qubits() != 1) throw DimensionMismatch("orthogonal() takes a 1-qubit state");
  if (s.is_ket()) {
    const Vec& c = s.coeffs();
    Vec v(2);
    v << -std::conj(c(1)), std::conj(c(0));
    return QuantumState::ket(fix_global_phase(v), s.basis());
  }
  return QuantumState::density(Mat::Identity(2, 2) - s.rho(), s.basis());
}

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline const char* bell_name(Bell b) {
  switch (b) {
    case Bell::PhiPlus: return "phi+";
    case Bell::PhiMinus: return "phi-";
    case Bell::PsiPlus: return "psi+";
    case Bell::PsiMinus: return "psi-";
  }
  return "?";
}

inline QuantumState bell_state(Bell b) {
  const double h = kInvSqrt2;
  switch (b) {
    case Bell::PhiPlus: return QuantumState::ket_from({h, 0, 0, h});
    case Bell::PhiMinus: return QuantumState::ket_from({h, 0, 0, -h});
    case Bell::PsiPlus: return QuantumState::ket_from({0, h, h, 0});
    case Bell::PsiMinus: return QuantumState::ket_from({0, h, -h, 0});
  }
  return QuantumState::ket_from({h, 0, 0, h});
}

/// Draws a pure state from the eigen-ensemble of a density matrix. Kets are
/// returned unchanged. Statistics of any later measurement are preserved.
inline Vec sample_pure(const QuantumState& s, RngStream& rng) {
  if (s.is_ket()) return s.coeffs();
  auto es = detail::eig(s.rho());
  std::vector<double> w(static_cast<size_t>(es.eigenvalues().size()));
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, es.eigenvalues()(static_cast<Eigen::Index>(i)));
  int k = detail::sample_index(w, rng);
  return es.eigenvectors().col(k);
}

/// Bloch vector (x, y, z) of a 1-qubit state.
inline std::array<double, 3> bloch_vector(const QuantumState& s) {
  Mat rho = s.density_matrix();
  return {(pauli(Pauli::X) * rho).trace().real(), (pauli(Pauli::Y) * rho).trace().real(),
          (pauli(Pauli::Z) * rho).trace().real()};
}

/// Basis whose axis is closest to the state's Bloch vector (ties prefer Z, X, Y).
inline Axis nearest_axis(const QuantumState& s) {
  auto r = bloch_vector(s);
  double ax = std::abs(r[0]), ay = std::abs(r[1]), az = std::abs(r[2]);
  if (az + 1e-12 >= ax && az + 1e-12 >= ay) return Axis::Z;
  if (ax + 1e-12 >= ay) return Axis::X;
  return Axis::Y;
}

}  // namespace qnetsim
