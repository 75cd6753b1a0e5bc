#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's eigensolver, Kronecker product or partial operations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;

inline M2 sx() { M2 m; m << 0, 1, 1, 0; return m; }
inline M2 sy() { M2 m; m << 0, C(0, -1), C(0, 1), 0; return m; }
inline M2 sz() { M2 m; m << 1, 0, 0, -1; return m; }

/// (a (x) b)_{(i k),(j l)} = a_ij b_kl, by index arithmetic.
inline M4 kron(const M2& a, const M2& b) {
  M4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
  }
  return out;
}

/// (rho^{T_B})_{(i j),(k l)} = rho_{(i l),(k j)}.
inline M4 partial_transpose_b(const M4& m) {
  M4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return out;
}

/// Eigen's own Hermitian solver, ascending.
template <typename Matrix>
Eigen::VectorXd eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Characteristic-polynomial coefficients c_0..c_n of det(lambda I - m)
/// (monic, c_n = 1) by Faddeev-LeVerrier.
inline std::vector<C> characteristic_polynomial(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  std::vector<C> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1;
  Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / double(k);
  }
  return c;
}

/// Monic polynomial coefficients with the given roots.
inline std::vector<C> polynomial_from_roots(const std::vector<double>& roots) {
  std::vector<C> c{1};
  for (double r : roots) {
    std::vector<C> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

/// Textbook Wootters: square roots of the eigenvalues of the non-Hermitian
/// product rho (Y(x)Y) rho* (Y(x)Y), via a general complex eigensolver.
inline double textbook_concurrence(const M4& rho) {
  const M4 yy = kron(sy(), sy());
  const M4 product = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<M4> solver(product, false);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline M4 singlet() {
  M4 m = M4::Zero();
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return m;
}

inline M4 projector(int basis_index) {
  M4 m = M4::Zero();
  m(basis_index, basis_index) = 1;
  return m;
}

}  // namespace oracle
