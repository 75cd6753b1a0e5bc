#pragma once

// Random sampling of test inputs: Ginibre density matrices, Hermitian and
// unitary matrices, and unconstrained Bloch parameter sets.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "lorentzqi/linalg.hpp"
#include "lorentzqi/states.hpp"

namespace lqi {

using Rng = std::mt19937_64;

template <typename Scalar, int N>
CMatrix<Scalar, N> random_ginibre(Rng& rng, Eigen::Index n = N) {
  std::normal_distribution<Scalar> normal(0, 1);
  CMatrix<Scalar, N> g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex<Scalar>(normal(rng), normal(rng));
  }
  return g;
}

/// G G^H / tr(G G^H): a full-rank physical two-qubit state.
template <typename Scalar = double>
Matrix4c<Scalar> random_density(Rng& rng) {
  const Matrix4c<Scalar> g = random_ginibre<Scalar, 4>(rng);
  const Matrix4c<Scalar> rho = g * g.adjoint();
  Matrix4c<Scalar> out = rho / rho.trace().real();
  return (out + out.adjoint()) / Scalar(2);
}

template <typename Scalar, int N>
CMatrix<Scalar, N> random_hermitian(Rng& rng, Eigen::Index n = N) {
  const CMatrix<Scalar, N> g = random_ginibre<Scalar, N>(rng, n);
  return (g + g.adjoint()) / Scalar(2);
}

/// exp(i H) for Hermitian H, through its eigendecomposition.
template <typename Scalar, int N>
CMatrix<Scalar, N> unitary_from_hermitian(const CMatrix<Scalar, N>& h) {
  const auto eig = hermitian_eigen(h);
  Eigen::Matrix<Complex<Scalar>, N, 1> phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(Scalar(1), eig.eigenvalues(k));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

template <typename Scalar = double>
Matrix2c<Scalar> random_unitary2(Rng& rng) {
  return unitary_from_hermitian<Scalar, 2>(random_hermitian<Scalar, 2>(rng));
}

/// 15 independent uniforms on [-1, 1]; usually not a physical state.
template <typename Scalar = double>
BlochState<Scalar> random_bloch(Rng& rng) {
  std::uniform_real_distribution<Scalar> u(-1, 1);
  std::array<Scalar, 15> v{};
  for (auto& x : v) x = u(rng);
  return BlochState<Scalar>::unflatten(v);
}

template <typename Scalar = double>
BlochState<Scalar> random_physical_bloch(Rng& rng) {
  return from_density(random_density<Scalar>(rng));
}

}  // namespace lqi
