#pragma once

// Entanglement and information measures for two-qubit density matrices.
// Entropies are in bits. Unphysical inputs (negative eigenvalues beyond the
// positivity tolerance) are evaluated over their positive part and are
// expected to be flagged by the caller via DensityMatrix::physical().

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

#include <Eigen/Dense>

#include "lorentzqi/linalg.hpp"
#include "lorentzqi/states.hpp"

namespace lqi {

/// -sum lambda log2 lambda over the strictly positive eigenvalues.
template <typename Derived>
auto entropy_bits(const Eigen::MatrixBase<Derived>& eigenvalues) {
  using Scalar = typename Derived::Scalar;
  Scalar h = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const Scalar l = eigenvalues(i);
    if (l > 0) h -= l * std::log2(l);
  }
  return h;
}

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
///
/// The l_i are the singular values of tau_kl = <w_k| Y(x)Y |w_l*>, with
/// w_k = sqrt(p_k) e_k running over the eigenpairs of rho. They are read off
/// the Hermitian dilation [[0, tau], [tau^H, 0]], whose spectrum is +-l_i,
/// so no square root of a near-zero eigenvalue is ever taken. Eigenvalues of
/// rho below 64 eps * max are dropped (negative ones always).
template <typename Scalar>
Scalar concurrence(const DensityMatrix<Scalar>& d) {
  const auto& eig = d.spectrum();
  const Scalar cutoff = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(eig.max(), Scalar(0));

  Matrix4c<Scalar> w = Matrix4c<Scalar>::Zero();
  for (int k = 0; k < 4; ++k) {
    const Scalar p = eig.eigenvalues(k);
    if (p > cutoff) w.col(k) = std::sqrt(p) * eig.eigenvectors.col(k);
  }
  const Matrix4c<Scalar> tau = w.adjoint() * pauli_product<Scalar>(2, 2) * w.conjugate();

  CMatrix<Scalar, 8> dilation = CMatrix<Scalar, 8>::Zero();
  dilation.template topRightCorner<4, 4>() = tau;
  dilation.template bottomLeftCorner<4, 4>() = tau.adjoint();
  const auto sv = hermitian_eigen(dilation, std::numeric_limits<Scalar>::infinity()).eigenvalues;

  // sv ascending: sv(7) >= sv(6) >= sv(5) >= sv(4) are the singular values.
  Scalar value = sv(7) - std::max(sv(6), Scalar(0)) - std::max(sv(5), Scalar(0)) - std::max(sv(4), Scalar(0));
  value = std::max(value, Scalar(0));
  if (d.physical()) value = std::min(value, Scalar(1));
  return value;
}

template <typename Scalar>
Scalar concurrence(const Matrix4c<Scalar>& m) {
  return concurrence(DensityMatrix<Scalar>::from_matrix(m));
}

/// Sum of |negative eigenvalues| of the partial transpose on B.
template <typename Scalar>
Scalar negativity(const Matrix4c<Scalar>& m) {
  const auto eig = hermitian_eigen(partial_transpose(m, Subsystem::B));
  Scalar sum = 0;
  for (int k = 0; k < 4; ++k) {
    if (eig.eigenvalues(k) < 0) sum -= eig.eigenvalues(k);
  }
  return sum;
}

template <typename Scalar>
Scalar negativity(const DensityMatrix<Scalar>& d) {
  return negativity(d.matrix());
}

/// Global von Neumann entropy in bits; 2 for the maximally mixed state.
template <typename Scalar>
Scalar von_neumann_entropy(const DensityMatrix<Scalar>& d) {
  return entropy_bits(d.spectrum().eigenvalues);
}

template <typename Scalar>
Scalar von_neumann_entropy(const Matrix4c<Scalar>& m) {
  return entropy_bits(hermitian_eigen(m).eigenvalues);
}

/// (S(rho_A), S(rho_B)) in bits.
template <typename Scalar>
std::pair<Scalar, Scalar> marginal_entropies(const Matrix4c<Scalar>& m) {
  const Matrix2c<Scalar> rho_a = partial_trace(m, Subsystem::B);
  const Matrix2c<Scalar> rho_b = partial_trace(m, Subsystem::A);
  return {entropy_bits(hermitian_eigen(rho_a).eigenvalues), entropy_bits(hermitian_eigen(rho_b).eigenvalues)};
}

template <typename Scalar>
std::pair<Scalar, Scalar> marginal_entropies(const DensityMatrix<Scalar>& d) {
  return marginal_entropies(d.matrix());
}

/// tr(rho^2).
template <typename Derived>
auto purity(const Eigen::MatrixBase<Derived>& m) {
  return (m * m).trace().real();
}

template <typename Scalar>
Scalar purity(const DensityMatrix<Scalar>& d) {
  return purity(d.matrix());
}

template <typename Scalar = double>
struct MetricsRecord {
  Scalar phi = 0;
  Scalar concurrence = 0;
  Scalar negativity = 0;
  Scalar entropy_global = 0;
  Scalar entropy_a = 0;
  Scalar entropy_b = 0;
  Scalar purity = 0;
  Scalar min_eigenvalue = 0;
  bool physical = false;
};

template <typename Scalar>
MetricsRecord<Scalar> evaluate_metrics(const DensityMatrix<Scalar>& d, Scalar phi) {
  MetricsRecord<Scalar> r;
  r.phi = phi;
  r.concurrence = concurrence(d);
  r.negativity = negativity(d);
  r.entropy_global = von_neumann_entropy(d);
  std::tie(r.entropy_a, r.entropy_b) = marginal_entropies(d);
  r.purity = purity(d);
  r.min_eigenvalue = d.min_eigenvalue();
  r.physical = d.physical();
  return r;
}

}  // namespace lqi
