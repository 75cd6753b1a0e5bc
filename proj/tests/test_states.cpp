#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lorentzqi/channel.hpp"
#include "lorentzqi/metrics.hpp"
#include "lorentzqi/random.hpp"
#include "lorentzqi/states.hpp"
#include "oracles.hpp"

using namespace lqi;

TEST_CASE("to_density of the zero Bloch state is maximally mixed") {
  const auto d = to_density(BlochState<>::zero());
  CHECK(max_abs_diff(d.matrix(), Matrix4c<>(Matrix4c<>::Identity() / 4.0)) == 0.0);
  CHECK(d.physical());
}

TEST_CASE("to_density of C = -I is the singlet") {
  BlochState<> b;
  b.C = -Eigen::Matrix3d::Identity();
  CHECK(max_abs_diff(to_density(b).matrix(), oracle::singlet()) < 1e-16);
}

TEST_CASE("to_density of Werner(x) matches the termwise expansion") {
  for (double x : {-1.0 / 3, 0.0, 0.25, 0.7, 1.0}) {
    Matrix4c<> expected = Matrix4c<>::Zero();
    expected.diagonal() << (1 - x) / 4, (1 + x) / 4, (1 + x) / 4, (1 - x) / 4;
    expected(1, 2) = expected(2, 1) = -x / 2;
    CHECK(max_abs_diff(to_density(make_state(Werner{x})).matrix(), expected) < 1e-16);
  }
}

TEST_CASE("to_density rejects non-finite parameters") {
  BlochState<> b;
  b.s(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(to_density(b), NonFinite);
}

TEST_CASE("from_density examples") {
  const auto zero = from_density(Matrix4c<>(Matrix4c<>::Identity() / 4.0));
  CHECK(max_abs_diff(zero, BlochState<>::zero()) < 1e-16);

  const auto singlet = from_density(oracle::singlet());
  CHECK(singlet.s.norm() < 1e-16);
  CHECK(singlet.t.norm() < 1e-16);
  CHECK(max_abs_diff(singlet.C, Eigen::Matrix3d(-Eigen::Matrix3d::Identity())) < 1e-16);

  const auto up = from_density(oracle::projector(0));
  CHECK(max_abs_diff(up.s, Eigen::Vector3d(0, 0, 1)) == 0.0);
  CHECK(max_abs_diff(up.t, Eigen::Vector3d(0, 0, 1)) == 0.0);
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
  c(2, 2) = 1;
  CHECK(max_abs_diff(up.C, c) == 0.0);
}

TEST_CASE("from_density checks dimensions") {
  CHECK_THROWS_AS(from_density(MatrixXc<>::Identity(2, 2)), BadDimension);
}

TEST_CASE("Bloch round trip on random states") {
  Rng rng(101);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto m = random_density(rng);
    worst = std::max(worst, max_abs_diff(to_density(from_density(m)).matrix(), m));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("DensityMatrix construction checks") {
  Matrix4c<> m = Matrix4c<>::Identity() / 4.0;
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix<>::from_matrix(m), NotHermitian);
  CHECK_THROWS_AS(DensityMatrix<>::from_matrix(Matrix4c<>(Matrix4c<>::Identity())), NotNormalized);
}

TEST_CASE("make_state families") {
  const auto singlet = make_state(Werner{1.0});
  CHECK(max_abs_diff(singlet.C, Eigen::Matrix3d(-Eigen::Matrix3d::Identity())) == 0.0);

  const auto product = make_state(GenericPure{1.0});
  CHECK(product.s == Eigen::Vector3d(1, 0, 0));
  CHECK(product.t == Eigen::Vector3d(-1, 0, 0));
  CHECK(product.C == Eigen::Vector3d(-1, 0, 0).asDiagonal().toDenseMatrix());
  const auto d = to_density(product);
  CHECK(std::abs(purity(d) - 1) < 1e-15);
  CHECK(concurrence(d) < 1e-12);
  // |+> (x) |->
  Eigen::Vector4cd psi(0.5, -0.5, 0.5, -0.5);
  CHECK(max_abs_diff(d.matrix(), Matrix4c<>(psi * psi.adjoint())) < 1e-16);

  const auto mes = make_state(GenericPure{0.0});
  CHECK(mes.s.norm() == 0.0);
  CHECK(mes.t.norm() == 0.0);
  CHECK(max_abs_diff(mes.C, Eigen::Matrix3d(-Eigen::Matrix3d::Identity())) == 0.0);

  const auto x = make_state(XState{-0.9, -0.8, -0.7});
  CHECK(x.C.diagonal() == Eigen::Vector3d(-0.9, -0.8, -0.7));
  CHECK(x.C(0, 1) == 0.0);
}

TEST_CASE("make_state range errors") {
  CHECK_THROWS_AS(make_state(Werner{1.5}), OutOfRange);
  CHECK_THROWS_AS(make_state(XState{0, 2, 0}), OutOfRange);
  CHECK_THROWS_AS(make_state(GenericPure{-0.1}), OutOfRange);
  CHECK_THROWS_AS(make_state(GenericPure{std::nan("")}), NonFinite);
  BlochState<> b;
  b.C(0, 0) = 1.2;
  CHECK_THROWS_AS(make_state(Explicit{b}), OutOfRange);
  b.C(0, 0) = 0.9;
  CHECK_NOTHROW(make_state(Explicit{b}));
}

TEST_CASE("Explicit accepts jointly unphysical parameters") {
  BlochState<> b;
  b.C = Eigen::Matrix3d::Identity();  // product of diagonal +1: not a state
  const auto d = to_density(make_state(Explicit{b}));
  CHECK_FALSE(d.physical());
  CHECK(d.min_eigenvalue() == doctest::Approx(-0.5));
}

TEST_CASE("Werner family physical exactly on [-1/3, 1]") {
  for (int k = 0; k <= 133; ++k) {
    const double x = std::min(-1.0 / 3.0 + 0.01 * k, 1.0);
    const auto d = to_density(make_state(Werner{x}));
    CHECK(d.min_eigenvalue() >= -1e-12);
    CHECK(std::abs(d.min_eigenvalue() - std::min((1 - x) / 4, (1 + 3 * x) / 4)) < 1e-14);
  }
  CHECK_FALSE(to_density(make_state(Werner{-0.34})).physical());
}

TEST_CASE("generic pure family has unit purity") {
  for (int k = 0; k <= 100; ++k) CHECK(std::abs(purity(to_density(make_state(GenericPure{0.01 * k}))) - 1) < 1e-12);
}

TEST_CASE("Werner and X-state marginals are maximally mixed") {
  const Matrix2c<> half = Matrix2c<>::Identity() / 2.0;
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 50; ++k) {
    for (const StateFamily& f : {StateFamily{Werner{u(rng)}}, StateFamily{XState{u(rng), u(rng), u(rng)}}}) {
      const auto m = to_density(make_state(f)).matrix();
      CHECK(max_abs_diff(partial_trace(m, Subsystem::A), half) < 1e-12);
      CHECK(max_abs_diff(partial_trace(m, Subsystem::B), half) < 1e-12);
    }
  }
}

TEST_CASE("validate reports") {
  const auto singlet = validate(to_density(make_state(Werner{1.0})));
  CHECK(singlet.physical);
  CHECK(std::abs(singlet.min_eigenvalue) < 1e-9);
  CHECK(validate(to_density(make_state(Werner{1.0}))).physical);

  // Verbatim singlet at pi/4: spectrum {-0.25, -0.0590170, 0.25, 1.0590170}
  // (numpy eigvalsh on the assembled output).
  const auto out = transform_bloch(make_state(Werner{1.0}), std::numbers::pi / 4, ChannelMode::Verbatim);
  const auto report = validate(to_density(out));
  CHECK_FALSE(report.physical);
  CHECK(report.min_eigenvalue == doctest::Approx(-0.25).epsilon(1e-12));
  const auto spectrum = to_density(out).spectrum().eigenvalues;
  CHECK(spectrum(1) == doctest::Approx(-0.05901699437494742).epsilon(1e-12));
  CHECK(spectrum(3) == doctest::Approx(1.0590169943749475).epsilon(1e-12));
}

TEST_CASE("validate on raw matrices never throws") {
  Matrix4c<> m = Matrix4c<>::Identity();
  m(0, 3) = 3.0;
  ValidationReport<double> r;
  CHECK_NOTHROW(r = validate(m));
  CHECK_FALSE(r.physical);
  CHECK(r.hermiticity_residual == 3.0);
  CHECK(r.trace_residual == 3.0);
  m(1, 1) = std::nan("");
  CHECK_NOTHROW(r = validate(m));
  CHECK(std::isnan(r.min_eigenvalue));
}

TEST_CASE("flatten/unflatten layout") {
  Rng rng(1);
  const auto b = random_bloch(rng);
  const auto v = b.flatten();
  CHECK(v[0] == b.s(0));
  CHECK(v[5] == b.t(2));
  CHECK(v[7] == b.C(0, 1));
  CHECK(v[9] == b.C(1, 0));
  CHECK(max_abs_diff(BlochState<>::unflatten(v), b) == 0.0);
}
