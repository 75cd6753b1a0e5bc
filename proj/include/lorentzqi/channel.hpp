#pragma once

// The phi-parameterized spin transformation of a two-qubit state.
//
// Three semantics are offered:
//  * Verbatim: the literal affine map on (s, t, C), including the
//    asymmetric s2 update s2 cos(phi) - s1 sin(phi).
//  * SymmetrizedVerbatim: identical except s2 -> s1 sin(phi) + s2 cos(phi),
//    mirroring the t2 update.
//  * UnitaryOracle: conjugation by the Givens rotation on span{|01>, |10>}.
//
// The Bloch maps are not completely positive in general; choi_matrix() and
// diagnose() quantify how far they leave the state space.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "lorentzqi/errors.hpp"
#include "lorentzqi/linalg.hpp"
#include "lorentzqi/states.hpp"

namespace lqi {

enum class ChannelMode { Verbatim, SymmetrizedVerbatim, UnitaryOracle };

inline constexpr double kCompletePositivityTol = 1e-10;

inline std::string to_string(ChannelMode mode) {
  switch (mode) {
    case ChannelMode::Verbatim: return "verbatim";
    case ChannelMode::SymmetrizedVerbatim: return "symmetrized";
    case ChannelMode::UnitaryOracle: return "unitary";
  }
  return "unknown";
}

inline std::optional<ChannelMode> parse_channel_mode(std::string_view name) {
  if (name == "verbatim") return ChannelMode::Verbatim;
  if (name == "symmetrized") return ChannelMode::SymmetrizedVerbatim;
  if (name == "unitary") return ChannelMode::UnitaryOracle;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bloch-parameter map

/// The literal coefficient map. T may be real, or complex for the linear
/// extension to non-Hermitian operators; the coefficients themselves are real.
template <typename T, typename Real>
BlochState<T> bloch_map(const BlochState<T>& b, Real phi, bool symmetrized) {
  const Real c = std::cos(phi), s = std::sin(phi);
  const Real c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
  const Real plus = (1 + c2) / 2, minus = (1 - c2) / 2, half_s2 = s2 / 2;

  BlochState<T> out;
  out.s(0) = b.s(0) * c - b.s(1) * s;
  out.s(1) = symmetrized ? b.s(0) * s + b.s(1) * c : b.s(1) * c - b.s(0) * s;
  out.s(2) = b.s(2) * plus + b.t(2) * minus;

  out.t(0) = b.t(0) * c - b.t(1) * s;
  out.t(1) = b.t(0) * s + b.t(1) * c;
  out.t(2) = b.s(2) * minus + b.t(2) * plus;

  const T xx = b.C(0, 0), xy = b.C(0, 1), xz = b.C(0, 2);
  const T yx = b.C(1, 0), yy = b.C(1, 1), yz = b.C(1, 2);
  const T zx = b.C(2, 0), zy = b.C(2, 1), zz = b.C(2, 2);
  out.C(0, 0) = plus * xx + minus * yy + half_s2 * (xy - yx);
  out.C(0, 1) = plus * xy + minus * yx - half_s2 * (xx + yy);
  out.C(0, 2) = c * xz - s * yz;
  out.C(1, 0) = plus * yx + minus * xy + half_s2 * (xx + yy);
  out.C(1, 1) = plus * yy - minus * xx - half_s2 * (xy + yx);
  out.C(1, 2) = c * yz + s * xz;
  out.C(2, 0) = c * zx + s * zy;
  out.C(2, 1) = c * zy + s * zx;
  out.C(2, 2) = zz;
  return out;
}

// ---------------------------------------------------------------------------
// Unitary oracle

/// |00><00| + |11><11| + cos(phi)(|01><01| + |10><10|) + sin(phi)(|10><01| - |01><10|).
template <typename Scalar = double>
Matrix4c<Scalar> givens_unitary(Scalar phi) {
  using C = Complex<Scalar>;
  Matrix4c<Scalar> u = Matrix4c<Scalar>::Identity();
  const Scalar c = std::cos(phi), s = std::sin(phi);
  u(1, 1) = C(c);
  u(2, 2) = C(c);
  u(2, 1) = C(s);
  u(1, 2) = C(-s);
  return u;
}

/// U(phi) m U(phi)^H for any 4x4 operator.
template <typename Derived>
auto conjugate_givens(const Eigen::MatrixBase<Derived>& m, typename Eigen::NumTraits<typename Derived::Scalar>::Real phi) {
  using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != 4 || m.cols() != 4) throw BadDimension("transform_unitary: expected a 4x4 matrix");
  const Matrix4c<Scalar> u = givens_unitary<Scalar>(phi);
  return Matrix4c<Scalar>(u * m * u.adjoint());
}

template <typename Scalar>
DensityMatrix<Scalar> transform_unitary(const DensityMatrix<Scalar>& d, Scalar phi) {
  if (!std::isfinite(phi)) throw NonFinite("phi is not finite");
  return DensityMatrix<Scalar>::from_matrix(conjugate_givens(d.matrix(), phi), d.positivity_tol());
}

// ---------------------------------------------------------------------------
// Mode dispatch

template <typename Scalar>
BlochState<Scalar> transform_bloch(const BlochState<Scalar>& b, Scalar phi, ChannelMode mode) {
  if (!b.all_finite()) throw NonFinite("Bloch state has a non-finite parameter");
  if (!std::isfinite(phi)) throw NonFinite("phi is not finite");
  switch (mode) {
    case ChannelMode::Verbatim: return bloch_map(b, phi, false);
    case ChannelMode::SymmetrizedVerbatim: return bloch_map(b, phi, true);
    case ChannelMode::UnitaryOracle: return from_density(transform_unitary(to_density(b), phi));
  }
  throw Error("transform_bloch: unknown channel mode");
}

/// Linear extension of the channel to an arbitrary 4x4 operator. Bloch-defined
/// modes act on the complex Pauli coefficients; the identity coefficient is
/// left untouched (the maps carry no constant offset).
template <typename Scalar>
Matrix4c<Scalar> apply_channel(const Matrix4c<Scalar>& m, Scalar phi, ChannelMode mode) {
  if (mode == ChannelMode::UnitaryOracle) return conjugate_givens(m, phi);
  const auto coeffs = pauli_coefficients(m);
  const auto mapped = bloch_map(coeffs.bloch, phi, mode == ChannelMode::SymmetrizedVerbatim);
  return assemble(mapped, coeffs.identity);
}

/// 16x16 Choi matrix sum_ij E_ij (x) Lambda(E_ij). Trace 4 for a
/// trace-preserving map; PSD iff completely positive.
template <typename Scalar = double>
Matrix16c<Scalar> choi_matrix(ChannelMode mode, Scalar phi) {
  if (!std::isfinite(phi)) throw NonFinite("phi is not finite");
  Matrix16c<Scalar> choi = Matrix16c<Scalar>::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Matrix4c<Scalar> unit = Matrix4c<Scalar>::Zero();
      unit(i, j) = Complex<Scalar>(1);
      choi += kron(unit, apply_channel(unit, phi, mode));
    }
  }
  return choi;
}

template <typename Scalar = double>
struct ChoiSummary {
  Scalar min_eigenvalue = 0;
  Scalar max_eigenvalue = 0;
  Scalar trace = 0;
  Scalar tp_residual = 0;  // max |tr_out J - I|
  bool completely_positive = false;
};

template <typename Scalar = double>
ChoiSummary<Scalar> analyze_choi(ChannelMode mode, Scalar phi) {
  const Matrix16c<Scalar> choi = choi_matrix(mode, phi);
  const auto eig = hermitian_eigen(choi);
  ChoiSummary<Scalar> out;
  out.min_eigenvalue = eig.min();
  out.max_eigenvalue = eig.max();
  out.trace = choi.trace().real();
  const auto input_marginal = partial_trace(choi, Subsystem::B, 4, 4);
  out.tp_residual = max_abs_diff(input_marginal, MatrixXc<Scalar>::Identity(4, 4));
  out.completely_positive = out.min_eigenvalue >= -Scalar(kCompletePositivityTol);
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form specializations

/// X-state (zero Bloch vectors, diagonal C) read off its closed transformed form.
template <typename Scalar = double>
BlochState<Scalar> transform_xstate_closed(Scalar cxx, Scalar cyy, Scalar czz, Scalar phi) {
  detail::require_range(double(cxx), -1, 1, "cxx");
  detail::require_range(double(cyy), -1, 1, "cyy");
  detail::require_range(double(czz), -1, 1, "czz");
  if (!std::isfinite(phi)) throw NonFinite("phi is not finite");
  const Scalar c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
  BlochState<Scalar> out;
  out.C(0, 0) = ((1 + c2) * cxx + (1 - c2) * cyy) / 2;
  out.C(0, 1) = -(cxx + cyy) * s2 / 2;
  out.C(1, 0) = (cxx + cyy) * s2 / 2;
  out.C(1, 1) = -((1 - c2) * cxx - (1 + c2) * cyy) / 2;
  out.C(2, 2) = czz;
  return out;
}

/// Generic pure state s=(p,0,0), t=(-p,0,0), C=diag(-1,-q,-q) read off its
/// closed transformed form. Differs from the general map in s2, t2 and c_yx.
template <typename Scalar = double>
BlochState<Scalar> transform_pure_closed(Scalar p, Scalar phi) {
  detail::require_range(double(p), 0, 1, "pure p");
  if (!std::isfinite(phi)) throw NonFinite("phi is not finite");
  const Scalar q = std::sqrt(1 - p * p);
  const Scalar c = std::cos(phi), c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
  BlochState<Scalar> out;
  out.s(0) = p * c;
  out.t(0) = -p * c;
  out.C(0, 0) = -((1 + q) + (1 - q) * c2) / 2;
  out.C(0, 1) = (1 + q) * s2 / 2;
  out.C(1, 0) = -(1 - q) * s2 / 2;
  out.C(1, 1) = ((1 - q) - (1 + q) * c2) / 2;
  out.C(2, 2) = -q;
  return out;
}

/// Entrywise (general map - closed form) for the generic pure state.
template <typename Scalar = double>
BlochState<Scalar> pure_closed_form_residual(Scalar p, Scalar phi, ChannelMode mode = ChannelMode::Verbatim) {
  const auto general = transform_bloch(make_state<Scalar>(GenericPure{double(p)}), phi, mode);
  const auto closed = transform_pure_closed(p, phi);
  BlochState<Scalar> diff;
  diff.s = general.s - closed.s;
  diff.t = general.t - closed.t;
  diff.C = general.C - closed.C;
  return diff;
}

// ---------------------------------------------------------------------------
// Diagnostics

template <typename Scalar = double>
struct ChannelDiagnostics {
  Scalar trace_preserving_residual = 0;
  Scalar hermiticity_residual = 0;
  Scalar min_output_eigenvalue = 0;  // Verbatim output
  Scalar choi_min_eigenvalue = 0;    // Verbatim Choi at the same phi
  Scalar mode_discrepancy = 0;       // max-abs Verbatim vs UnitaryOracle output
};

template <typename Scalar>
ChannelDiagnostics<Scalar> diagnose(const BlochState<Scalar>& b, Scalar phi) {
  const Matrix4c<Scalar> verbatim = assemble(transform_bloch(b, phi, ChannelMode::Verbatim));
  const Matrix4c<Scalar> oracle = transform_unitary(to_density(b), phi).matrix();

  ChannelDiagnostics<Scalar> out;
  out.trace_preserving_residual = std::abs(verbatim.trace() - Complex<Scalar>(1));
  out.hermiticity_residual = hermiticity_residual(verbatim);
  out.min_output_eigenvalue = hermitian_eigen(verbatim).min();
  out.choi_min_eigenvalue = hermitian_eigen(choi_matrix(ChannelMode::Verbatim, phi)).min();
  out.mode_discrepancy = max_abs_diff(verbatim, oracle);
  return out;
}

}  // namespace lqi
