#pragma once

// Dense complex linear algebra for the small fixed sizes used by two-qubit
// work (2x2, 4x4, 8x8, 16x16): Pauli constants, Kronecker products, partial
// trace / transpose and a cyclic complex Jacobi eigensolver for Hermitian
// matrices. Everything is templated on the real scalar type.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lorentzqi/errors.hpp"

namespace lqi {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar, int N>
using CMatrix = Eigen::Matrix<Complex<Scalar>, N, N>;

template <typename Scalar = double>
using Matrix2c = CMatrix<Scalar, 2>;
template <typename Scalar = double>
using Matrix4c = CMatrix<Scalar, 4>;
template <typename Scalar = double>
using Matrix16c = CMatrix<Scalar, 16>;
template <typename Scalar = double>
using MatrixXc = CMatrix<Scalar, Eigen::Dynamic>;

/// One tensor factor of a two-party system; A is the left (most
/// significant) factor in the computational basis |ab>.
enum class Subsystem { A, B };

inline constexpr double kDefaultHermitianTol = 1e-9;
inline constexpr int kJacobiMaxSweeps = 100;

// ---------------------------------------------------------------------------
// Pauli matrices

/// Pauli matrix by index: 0 = identity, 1 = x, 2 = y, 3 = z.
template <typename Scalar = double>
Matrix2c<Scalar> pauli(int index) {
  using C = Complex<Scalar>;
  const C zero(0, 0), one(1, 0), i(0, 1);
  Matrix2c<Scalar> m;
  switch (index) {
    case 0: m << one, zero, zero, one; break;
    case 1: m << zero, one, one, zero; break;
    case 2: m << zero, -i, i, zero; break;
    case 3: m << one, zero, zero, -one; break;
    default: throw BadDimension("pauli index must be in 0..3, got " + std::to_string(index));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Kronecker product

namespace detail {
constexpr int product_size(int a, int b) {
  return (a == Eigen::Dynamic || b == Eigen::Dynamic) ? Eigen::Dynamic : a * b;
}
}  // namespace detail

/// Kronecker product a (x) b. Fixed-size inputs give a fixed-size result.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>, "kron operands must share a scalar type");
  constexpr int kRows = detail::product_size(DerivedA::RowsAtCompileTime, DerivedB::RowsAtCompileTime);
  constexpr int kCols = detail::product_size(DerivedA::ColsAtCompileTime, DerivedB::ColsAtCompileTime);
  Eigen::Matrix<Scalar, kRows, kCols> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residuals

template <typename DerivedA, typename DerivedB>
auto max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// max |m - m^H| entrywise.
template <typename Derived>
auto hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

/// Eigenvalues ascending; column k of `eigenvectors` belongs to eigenvalues(k).
template <typename Scalar, int N>
struct EigenDecomposition {
  Eigen::Matrix<Scalar, N, 1> eigenvalues;
  CMatrix<Scalar, N> eigenvectors;
  int sweeps = 0;

  CMatrix<Scalar, N> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<Complex<Scalar>>().asDiagonal() * eigenvectors.adjoint();
  }

  Scalar min() const { return eigenvalues(0); }
  Scalar max() const { return eigenvalues(eigenvalues.size() - 1); }
};

namespace detail {

template <typename Scalar, int N>
Scalar off_diagonal_norm(const CMatrix<Scalar, N>& a) {
  Scalar sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q). J = diag-phase * real rotation,
// applied as a <- J^H a J and v <- v J.
template <typename Scalar, int N>
void jacobi_rotate(CMatrix<Scalar, N>& a, CMatrix<Scalar, N>& v, Eigen::Index p, Eigen::Index q) {
  using C = Complex<Scalar>;
  const C apq = a(p, q);
  const Scalar mag = std::abs(apq);
  if (mag == Scalar(0)) return;

  const C phase = std::conj(apq / mag);
  const Scalar app = a(p, p).real();
  const Scalar aqq = a(q, q).real();
  const Scalar theta = (aqq - app) / (Scalar(2) * mag);
  Scalar t;
  if (std::abs(theta) > Scalar(1e150)) {
    t = Scalar(0.5) / theta;
  } else {
    t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
  }
  const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
  const Scalar s = t * c;

  const C jpp(c, 0), jpq(s, 0), jqp = -s * phase, jqq = c * phase;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const C akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const C apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = C(0);
  a(q, p) = C(0);
  a(p, p) = C(app - t * mag, 0);
  a(q, q) = C(aqq + t * mag, 0);

  for (Eigen::Index k = 0; k < n; ++k) {
    const C vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Eigenvalues come back ascending (stable for ties). Each eigenvector is
/// phase-fixed so its first component with magnitude above 1e-12 is real and
/// positive. Throws NotHermitian when max|m - m^H| >= tol and NoConvergence
/// after kJacobiMaxSweeps sweeps.
template <typename Derived>
auto hermitian_eigen(const Eigen::MatrixBase<Derived>& m,
                     typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = kDefaultHermitianTol) {
  using C = typename Derived::Scalar;
  using Scalar = typename Eigen::NumTraits<C>::Real;
  constexpr int N = Derived::RowsAtCompileTime;
  static_assert(N == Derived::ColsAtCompileTime, "hermitian_eigen needs a square matrix type");

  if (m.rows() != m.cols()) throw BadDimension("hermitian_eigen: matrix is not square");
  if (!m.allFinite()) throw NonFinite("hermitian_eigen: non-finite entry");
  const Scalar residual = m.rows() > 0 ? hermiticity_residual(m) : Scalar(0);
  if (!(residual < tol)) {
    throw NotHermitian("hermitian_eigen: hermiticity residual " + std::to_string(double(residual)));
  }

  const Eigen::Index n = m.rows();
  CMatrix<Scalar, N> a = (m + m.adjoint()) / Scalar(2);
  CMatrix<Scalar, N> v = CMatrix<Scalar, N>::Identity(n, n);

  const Scalar threshold = std::max(Scalar(1e-13), Scalar(16) * std::numeric_limits<Scalar>::epsilon()) *
                           std::max(Scalar(1), a.norm());
  int sweeps = 0;
  while (detail::off_diagonal_norm<Scalar, N>(a) >= threshold) {
    if (sweeps == kJacobiMaxSweeps) throw NoConvergence("hermitian_eigen: sweep cap reached");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) detail::jacobi_rotate<Scalar, N>(a, v, p, q);
    }
    ++sweeps;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition<Scalar, N> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  out.sweeps = sweeps;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    auto col = out.eigenvectors.col(k);
    col = v.col(src);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(col(r)) > Scalar(1e-12)) {
        col *= std::conj(col(r)) / std::abs(col(r));
        col(r) = C(col(r).real(), 0);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial trace / partial transpose on a bipartite (dim_a x dim_b) space

/// Trace out `traced`, leaving the reduced matrix of the other factor.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, Subsystem traced, Eigen::Index dim_a, Eigen::Index dim_b) {
  using C = typename Derived::Scalar;
  const Eigen::Index n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n) throw BadDimension("partial_trace: dimension mismatch");
  const Eigen::Index keep = traced == Subsystem::A ? dim_b : dim_a;
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Zero(keep, keep);
  if (traced == Subsystem::B) {
    for (Eigen::Index k = 0; k < dim_b; ++k) {
      for (Eigen::Index i = 0; i < dim_a; ++i) {
        for (Eigen::Index j = 0; j < dim_a; ++j) out(i, j) += m(i * dim_b + k, j * dim_b + k);
      }
    }
  } else {
    for (Eigen::Index k = 0; k < dim_a; ++k) out += m.block(k * dim_b, k * dim_b, dim_b, dim_b);
  }
  return out;
}

/// Two-qubit reduced state: 4x4 in, 2x2 out.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, Subsystem traced) {
  using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != 4 || m.cols() != 4) throw BadDimension("partial_trace: expected a 4x4 matrix");
  return Matrix2c<Scalar>(partial_trace(m, traced, 2, 2));
}

/// Transpose applied to the `transposed` tensor factor only. Involutive.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, Subsystem transposed, Eigen::Index dim_a,
                       Eigen::Index dim_b) {
  using C = typename Derived::Scalar;
  const Eigen::Index n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n) throw BadDimension("partial_transpose: dimension mismatch");
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index k = 0; k < dim_a; ++k) {
      const auto block = m.block(i * dim_b, k * dim_b, dim_b, dim_b);
      if (transposed == Subsystem::B) {
        out.block(i * dim_b, k * dim_b, dim_b, dim_b) = block.transpose();
      } else {
        out.block(k * dim_b, i * dim_b, dim_b, dim_b) = block;
      }
    }
  }
  return out;
}

template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, Subsystem transposed) {
  using Scalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != 4 || m.cols() != 4) throw BadDimension("partial_transpose: expected a 4x4 matrix");
  return Matrix4c<Scalar>(partial_transpose(m, transposed, 2, 2));
}

}  // namespace lqi
