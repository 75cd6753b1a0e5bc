#pragma once

// Two-qubit states in the 15-parameter Bloch form
//
//   rho = 1/4 (I + sum_i s_i sigma_i (x) I + sum_j t_j I (x) tau_j
//              + sum_ij c_ij sigma_i (x) tau_j)
//
// and their 4x4 density-matrix counterpart.

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "lorentzqi/errors.hpp"
#include "lorentzqi/linalg.hpp"

namespace lqi {

inline constexpr double kDefaultPositivityTol = 1e-9;
inline constexpr double kDensityTraceTol = 1e-9;

/// Bloch vectors s (qubit A), t (qubit B) and correlation tensor C.
///
/// Scalar is normally real. A complex Scalar is allowed for the
/// coefficient-space extension used when a Bloch-defined map is applied to
/// non-Hermitian matrix units.
template <typename Scalar = double>
struct BlochState {
  using Vector = Eigen::Matrix<Scalar, 3, 1>;
  using Tensor = Eigen::Matrix<Scalar, 3, 3>;

  Vector s = Vector::Zero();
  Vector t = Vector::Zero();
  Tensor C = Tensor::Zero();

  static BlochState zero() { return {}; }

  bool all_finite() const { return s.allFinite() && t.allFinite() && C.allFinite(); }

  bool within_unit_range() const {
    auto ok = [](const auto& m) { return (m.array().abs() <= 1.0).all(); };
    return all_finite() && ok(s) && ok(t) && ok(C);
  }

  template <typename Other>
  BlochState<Other> cast() const {
    BlochState<Other> out;
    out.s = s.template cast<Other>();
    out.t = t.template cast<Other>();
    out.C = C.template cast<Other>();
    return out;
  }

  /// Flattened order: s1..s3, t1..t3, c11, c12, ..., c33 (row-major C).
  std::array<Scalar, 15> flatten() const {
    std::array<Scalar, 15> out{};
    for (int i = 0; i < 3; ++i) {
      out[i] = s(i);
      out[3 + i] = t(i);
      for (int j = 0; j < 3; ++j) out[6 + 3 * i + j] = C(i, j);
    }
    return out;
  }

  static BlochState unflatten(const std::array<Scalar, 15>& v) {
    BlochState out;
    for (int i = 0; i < 3; ++i) {
      out.s(i) = v[i];
      out.t(i) = v[3 + i];
      for (int j = 0; j < 3; ++j) out.C(i, j) = v[6 + 3 * i + j];
    }
    return out;
  }
};

template <typename Scalar>
auto max_abs_diff(const BlochState<Scalar>& a, const BlochState<Scalar>& b) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  return std::max<Real>({max_abs_diff(a.s, b.s), max_abs_diff(a.t, b.t), max_abs_diff(a.C, b.C)});
}

// ---------------------------------------------------------------------------
// Pauli-product basis

/// sigma_mu (x) sigma_nu for mu, nu in 0..3 (0 = identity).
template <typename Scalar = double>
const Matrix4c<Scalar>& pauli_product(int mu, int nu) {
  static const auto table = [] {
    std::array<Matrix4c<Scalar>, 16> t;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) t[4 * a + b] = kron(pauli<Scalar>(a), pauli<Scalar>(b));
    }
    return t;
  }();
  return table[static_cast<std::size_t>(4 * mu + nu)];
}

/// (1/4)(identity * I + Bloch terms) for real or complex coefficients.
template <typename T>
auto assemble(const BlochState<T>& b, T identity = T(1)) {
  using Real = typename Eigen::NumTraits<T>::Real;
  using C = Complex<Real>;
  Matrix4c<Real> m = C(identity) * pauli_product<Real>(0, 0);
  for (int i = 0; i < 3; ++i) {
    m += C(b.s(i)) * pauli_product<Real>(i + 1, 0);
    m += C(b.t(i)) * pauli_product<Real>(0, i + 1);
    for (int j = 0; j < 3; ++j) m += C(b.C(i, j)) * pauli_product<Real>(i + 1, j + 1);
  }
  return Matrix4c<Real>(m / Real(4));
}

/// Complex Pauli coefficients tr(m sigma_mu (x) sigma_nu), the inverse of
/// assemble() on all of C^{4x4}.
template <typename Scalar>
struct PauliCoefficients {
  Complex<Scalar> identity;
  BlochState<Complex<Scalar>> bloch;
};

template <typename Scalar>
PauliCoefficients<Scalar> pauli_coefficients(const Matrix4c<Scalar>& m) {
  auto coeff = [&](int mu, int nu) { return (m * pauli_product<Scalar>(mu, nu)).trace(); };
  PauliCoefficients<Scalar> out;
  out.identity = coeff(0, 0);
  for (int i = 0; i < 3; ++i) {
    out.bloch.s(i) = coeff(i + 1, 0);
    out.bloch.t(i) = coeff(0, i + 1);
    for (int j = 0; j < 3; ++j) out.bloch.C(i, j) = coeff(i + 1, j + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density matrices

/// Hermitian, unit-trace 4x4 matrix with its spectrum cached. Positivity is
/// diagnosed (min_eigenvalue, physical) rather than enforced.
template <typename Scalar = double>
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix4c<Scalar>& m, Scalar positivity_tol = Scalar(kDefaultPositivityTol)) {
    if (!m.allFinite()) throw NonFinite("density matrix has a non-finite entry");
    const Scalar herm = hermiticity_residual(m);
    if (!(herm < Scalar(kDefaultHermitianTol))) {
      throw NotHermitian("density matrix hermiticity residual " + std::to_string(double(herm)));
    }
    const Scalar trace_residual = std::abs(m.trace() - Complex<Scalar>(1));
    if (!(trace_residual < Scalar(kDensityTraceTol))) {
      throw NotNormalized("density matrix trace residual " + std::to_string(double(trace_residual)));
    }
    return DensityMatrix(m, positivity_tol);
  }

  const Matrix4c<Scalar>& matrix() const { return matrix_; }
  const EigenDecomposition<Scalar, 4>& spectrum() const { return spectrum_; }
  Scalar min_eigenvalue() const { return spectrum_.min(); }
  Scalar positivity_tol() const { return positivity_tol_; }
  bool physical() const { return spectrum_.min() >= -positivity_tol_; }

 private:
  DensityMatrix(const Matrix4c<Scalar>& m, Scalar tol)
      : matrix_(m), spectrum_(hermitian_eigen(m)), positivity_tol_(tol) {}

  Matrix4c<Scalar> matrix_;
  EigenDecomposition<Scalar, 4> spectrum_;
  Scalar positivity_tol_;
};

/// Assemble the density matrix of a Bloch state. Only finiteness is
/// required; jointly unphysical parameter sets are flagged, not rejected.
template <typename Scalar>
DensityMatrix<Scalar> to_density(const BlochState<Scalar>& b, Scalar positivity_tol = Scalar(kDefaultPositivityTol)) {
  if (!b.all_finite()) throw NonFinite("Bloch state has a non-finite parameter");
  return DensityMatrix<Scalar>::from_matrix(assemble(b), positivity_tol);
}

/// s_i = tr(rho sigma_i), t_j = tr(rho tau_j), c_ij = tr(rho sigma_i tau_j).
template <typename Derived>
auto from_density(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != 4 || m.cols() != 4) throw BadDimension("from_density: expected a 4x4 matrix");
  const auto coeffs = pauli_coefficients<Scalar>(Matrix4c<Scalar>(m));
  BlochState<Scalar> out;
  out.s = coeffs.bloch.s.real();
  out.t = coeffs.bloch.t.real();
  out.C = coeffs.bloch.C.real();
  return out;
}

template <typename Scalar>
BlochState<Scalar> from_density(const DensityMatrix<Scalar>& d) {
  return from_density(d.matrix());
}

// ---------------------------------------------------------------------------
// Validation

template <typename Scalar = double>
struct ValidationReport {
  Scalar hermiticity_residual = 0;
  Scalar trace_residual = 0;
  Scalar min_eigenvalue = 0;
  bool physical = false;
};

/// Diagnose an arbitrary 4x4 matrix. Never throws; a non-finite input
/// reports NaN residuals and physical = false.
template <typename Scalar>
ValidationReport<Scalar> validate(const Matrix4c<Scalar>& m, Scalar positivity_tol = Scalar(kDefaultPositivityTol)) {
  ValidationReport<Scalar> r;
  if (!m.allFinite()) {
    r.hermiticity_residual = r.trace_residual = r.min_eigenvalue = std::numeric_limits<Scalar>::quiet_NaN();
    return r;
  }
  r.hermiticity_residual = hermiticity_residual(m);
  r.trace_residual = std::abs(m.trace() - Complex<Scalar>(1));
  const Matrix4c<Scalar> herm = (m + m.adjoint()) / Scalar(2);
  r.min_eigenvalue = hermitian_eigen(herm, std::numeric_limits<Scalar>::infinity()).min();
  r.physical = r.min_eigenvalue >= -positivity_tol && r.hermiticity_residual < Scalar(kDefaultHermitianTol) &&
               r.trace_residual < Scalar(kDensityTraceTol);
  return r;
}

template <typename Scalar>
ValidationReport<Scalar> validate(const DensityMatrix<Scalar>& d, Scalar positivity_tol = Scalar(kDefaultPositivityTol)) {
  ValidationReport<Scalar> r;
  r.hermiticity_residual = hermiticity_residual(d.matrix());
  r.trace_residual = std::abs(d.matrix().trace() - Complex<Scalar>(1));
  r.min_eigenvalue = d.min_eigenvalue();
  r.physical = r.min_eigenvalue >= -positivity_tol;
  return r;
}

// ---------------------------------------------------------------------------
// State families

/// Zero Bloch vectors, C = -x I. Physical for x in [-1/3, 1].
struct Werner {
  double x = 0;
};

/// Zero Bloch vectors, C = diag(cxx, cyy, czz).
struct XState {
  double cxx = 0, cyy = 0, czz = 0;
};

/// s = (p,0,0), t = (-p,0,0), C = diag(-1, -q, -q) with q = sqrt(1 - p^2).
struct GenericPure {
  double p = 0;
  double q() const { return std::sqrt(1.0 - p * p); }
};

struct Explicit {
  BlochState<double> state;
};

using StateFamily = std::variant<Werner, XState, GenericPure, Explicit>;

inline std::string family_name(const StateFamily& f) {
  struct Visitor {
    std::string operator()(const Werner&) const { return "werner"; }
    std::string operator()(const XState&) const { return "xstate"; }
    std::string operator()(const GenericPure&) const { return "pure"; }
    std::string operator()(const Explicit&) const { return "explicit"; }
  };
  return std::visit(Visitor{}, f);
}

namespace detail {
inline void require_range(double v, double lo, double hi, const char* what) {
  if (!std::isfinite(v)) throw NonFinite(std::string(what) + " is not finite");
  if (v < lo || v > hi) {
    throw OutOfRange(std::string(what) + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
}
}  // namespace detail

template <typename Scalar = double>
BlochState<Scalar> make_state(const StateFamily& family) {
  struct Visitor {
    BlochState<Scalar> operator()(const Werner& w) const {
      detail::require_range(w.x, -1, 1, "werner x");
      BlochState<Scalar> b;
      b.C = -Scalar(w.x) * BlochState<Scalar>::Tensor::Identity();
      return b;
    }
    BlochState<Scalar> operator()(const XState& x) const {
      detail::require_range(x.cxx, -1, 1, "cxx");
      detail::require_range(x.cyy, -1, 1, "cyy");
      detail::require_range(x.czz, -1, 1, "czz");
      BlochState<Scalar> b;
      b.C.diagonal() << Scalar(x.cxx), Scalar(x.cyy), Scalar(x.czz);
      return b;
    }
    BlochState<Scalar> operator()(const GenericPure& g) const {
      detail::require_range(g.p, 0, 1, "pure p");
      const Scalar p = Scalar(g.p);
      const Scalar q = std::sqrt(Scalar(1) - p * p);
      BlochState<Scalar> b;
      b.s(0) = p;
      b.t(0) = -p;
      b.C.diagonal() << Scalar(-1), -q, -q;
      return b;
    }
    BlochState<Scalar> operator()(const Explicit& e) const {
      if (!e.state.all_finite()) throw NonFinite("explicit Bloch state has a non-finite parameter");
      if (!e.state.within_unit_range()) throw OutOfRange("explicit Bloch parameters must lie in [-1, 1]");
      return e.state.template cast<Scalar>();
    }
  };
  return std::visit(Visitor{}, family);
}

}  // namespace lqi
