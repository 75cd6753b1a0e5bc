#include "lorentzqi/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lorentzqi/linalg.hpp"
#include "lorentzqi/metrics.hpp"
#include "lorentzqi/random.hpp"

namespace lqi {

std::optional<Mutation> parse_mutation(std::string_view name) {
  if (name == "none") return Mutation::None;
  if (name == "s2-sign") return Mutation::FlipS2Sign;
  return std::nullopt;
}

BlochMap channel_under_test(Mutation mutation) {
  if (mutation == Mutation::None) {
    return [](const BlochState<double>& b, double phi, ChannelMode mode) { return transform_bloch(b, phi, mode); };
  }
  return [](const BlochState<double>& b, double phi, ChannelMode mode) {
    auto out = transform_bloch(b, phi, mode);
    if (mode == ChannelMode::Verbatim) out.s(1) += 2 * b.s(0) * std::sin(phi);
    return out;
  };
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult bound_check(std::string name, double worst, double tol) {
  return {std::move(name), worst <= tol, "max residual " + sci(worst) + " (tol " + sci(tol) + ")"};
}

BlochState<double> golden_input() {
  BlochState<double> b;
  b.s << 0.3, -0.2, 0.1;
  b.t << 0.4, 0.5, -0.6;
  b.C << 0.1, -0.2, 0.3, 0.4, 0.5, -0.6, 0.7, -0.8, 0.9;
  return b;
}

// Verbatim map at phi = 0.7 on golden_input(), flattened (s, t, C row-major).
constexpr std::array<double, 15> kGoldenVerbatim = {
    0.3582961936328848,   -0.346233743628205,   -0.19051149998491562, -0.01617196870505011, 0.6401081685373207,
    -0.3094885000150843,  -0.029628347576586334, -0.24662506186661037, 0.6159832685279611,  0.44662506186661033,
    0.15244516987122625,  -0.26564000619938577, 0.020015381308989055, -0.1609213687612071, 0.9};

}  // namespace

std::vector<CheckResult> run_validation_suite(Mutation mutation, std::uint64_t seed) {
  const BlochMap map = channel_under_test(mutation);
  constexpr std::array kModes = {ChannelMode::Verbatim, ChannelMode::SymmetrizedVerbatim, ChannelMode::UnitaryOracle};
  std::vector<std::function<CheckResult(Rng&)>> checks;

  checks.push_back([](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const auto h = random_hermitian<double, 4>(rng);
      const auto e = hermitian_eigen(h);
      worst = std::max({worst, max_abs_diff(e.reconstruct(), h),
                        max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, Matrix4c<>::Identity())});
    }
    for (int i = 0; i < 5; ++i) {
      const auto h = random_hermitian<double, 16>(rng);
      const auto e = hermitian_eigen(h);
      worst = std::max({worst, max_abs_diff(e.reconstruct(), h),
                        max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, Matrix16c<>::Identity())});
    }
    return bound_check("linalg: Jacobi reconstruction and orthonormality", worst, 1e-10);
  });

  checks.push_back([](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const auto m = random_hermitian<double, 4>(rng);
      for (auto sub : {Subsystem::A, Subsystem::B}) {
        const auto pt = partial_transpose(m, sub);
        worst = std::max({worst, max_abs_diff(partial_transpose(pt, sub), m), std::abs(pt.trace() - m.trace()),
                          hermiticity_residual(pt)});
        worst = std::max(worst, std::abs(partial_trace(m, sub).trace() - m.trace()));
      }
    }
    return bound_check("linalg: partial transpose involution, trace preservation", worst, 1e-14);
  });

  checks.push_back([](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const auto m = random_density(rng);
      worst = std::max(worst, max_abs_diff(to_density(from_density(m)).matrix(), m));
    }
    return bound_check("states: Bloch round trip", worst, 1e-12);
  });

  checks.push_back([](Rng&) {
    double worst = 0;
    bool physical = true;
    for (int k = 0; k <= 133; ++k) {
      const double x = -1.0 / 3.0 + k * 0.01;
      const auto d = to_density(make_state(Werner{std::min(x, 1.0)}));
      physical = physical && d.min_eigenvalue() >= -1e-12;
      worst = std::max(worst, std::abs(d.min_eigenvalue() - std::min((1 - x) / 4, (1 + 3 * x) / 4)));
    }
    auto r = bound_check("states: Werner spectrum and physicality on [-1/3, 1]", worst, 1e-12);
    r.passed = r.passed && physical;
    return r;
  });

  checks.push_back([](Rng&) {
    double worst = 0;
    for (int k = 0; k <= 100; ++k) {
      worst = std::max(worst, std::abs(purity(to_density(make_state(GenericPure{k * 0.01}))) - 1));
    }
    return bound_check("states: generic pure family has unit purity", worst, 1e-12);
  });

  checks.push_back([map, kModes](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const auto b = random_bloch(rng);
      for (auto mode : kModes) worst = std::max(worst, max_abs_diff(map(b, 0.0, mode), b));
    }
    return bound_check("channel: identity at phi = 0 (all modes)", worst, 1e-13);
  });

  checks.push_back([map, kModes](Rng& rng) {
    double worst = 0;
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    for (int i = 0; i < 50; ++i) {
      const auto b = random_physical_bloch(rng);
      const double phi = angle(rng);
      for (auto mode : kModes) {
        const auto out = map(b, phi, mode);
        worst = std::max({worst, std::abs(out.C(2, 2) - b.C(2, 2)), std::abs(assemble(out).trace() - 1.0)});
      }
    }
    return bound_check("channel: unit trace and c_zz preserved", worst, 1e-13);
  });

  checks.push_back([map](Rng&) {
    const auto out = map(golden_input(), 0.7, ChannelMode::Verbatim).flatten();
    double worst = 0;
    for (std::size_t i = 0; i < out.size(); ++i) worst = std::max(worst, std::abs(out[i] - kGoldenVerbatim[i]));
    return bound_check("channel: verbatim map matches frozen golden values", worst, 1e-14);
  });

  checks.push_back([map](Rng& rng) {
    double worst = 0;
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (int i = 0; i < 50; ++i) {
      const auto b = random_bloch(rng);
      const double phi = angle(rng);
      auto v = map(b, phi, ChannelMode::Verbatim);
      const auto s = map(b, phi, ChannelMode::SymmetrizedVerbatim);
      v.s(1) += 2 * b.s(0) * std::sin(phi);
      worst = std::max(worst, max_abs_diff(v, s));
    }
    return bound_check("channel: verbatim and symmetrized differ by 2 s1 sin(phi) in s2 only", worst, 1e-13);
  });

  checks.push_back([map](Rng& rng) {
    double worst = 0;
    std::uniform_real_distribution<double> coeff(-1, 1), angle(0, 2 * kPi);
    for (int i = 0; i < 20; ++i) {
      const double cxx = coeff(rng), cyy = coeff(rng), czz = coeff(rng);
      for (int k = 0; k < 10; ++k) {
        const double phi = angle(rng);
        worst = std::max(worst, max_abs_diff(map(make_state(XState{cxx, cyy, czz}), phi, ChannelMode::Verbatim),
                                             transform_xstate_closed(cxx, cyy, czz, phi)));
      }
    }
    return bound_check("channel: X-state closed form agrees with general map", worst, 1e-13);
  });

  checks.push_back([map](Rng& rng) {
    double worst = 0;
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (int i = 0; i < 50; ++i) {
      const auto b = random_bloch(rng);
      const double phi = angle(rng);
      worst = std::max(worst, max_abs_diff(map(b, phi, ChannelMode::Verbatim), map(b, phi + 2 * kPi, ChannelMode::Verbatim)));
    }
    return bound_check("channel: verbatim map is 2 pi periodic", worst, 1e-12);
  });

  checks.push_back([](Rng& rng) {
    double worst = 0, worst_composition = 0;
    for (int i = 0; i < 10; ++i) {
      const auto d = DensityMatrix<>::from_matrix(random_density(rng));
      const double entropy0 = von_neumann_entropy(d), purity0 = purity(d);
      for (int k = 0; k < 37; ++k) {
        const double phi = k * kPi / 18;
        const auto out = transform_unitary(d, phi);
        worst = std::max({worst, max_abs_diff(out.spectrum().eigenvalues, d.spectrum().eigenvalues),
                          std::abs(von_neumann_entropy(out) - entropy0), std::abs(purity(out) - purity0)});
        const auto composed = transform_unitary(transform_unitary(d, phi), 0.37);
        worst_composition =
            std::max(worst_composition, max_abs_diff(composed.matrix(), transform_unitary(d, phi + 0.37).matrix()));
      }
    }
    auto r = bound_check("channel: unitary oracle conserves spectrum, entropy, purity", worst, 1e-10);
    r.passed = r.passed && worst_composition <= 1e-12;
    r.detail += "; composition residual " + sci(worst_composition) + " (tol 1e-12)";
    return r;
  });

  checks.push_back([map](Rng&) {
    const auto d = to_density(map(make_state(Werner{1.0}), kPi / 4, ChannelMode::Verbatim));
    const bool ok = d.min_eigenvalue() <= -0.2 + 0.06 && d.min_eigenvalue() >= -0.2 - 0.06 && !d.physical();
    return CheckResult{"channel: verbatim singlet at pi/4 detected unphysical", ok,
                       "min eigenvalue " + sci(d.min_eigenvalue())};
  });

  checks.push_back([](Rng&) {
    const double unitary = analyze_choi(ChannelMode::UnitaryOracle, 1.0).min_eigenvalue;
    const double identity = analyze_choi(ChannelMode::Verbatim, 0.0).min_eigenvalue;
    const double verbatim = analyze_choi(ChannelMode::Verbatim, kPi / 4).min_eigenvalue;
    const bool ok = unitary >= -kCompletePositivityTol && identity >= -kCompletePositivityTol && verbatim < -1e-6;
    return CheckResult{"channel: Choi positivity (unitary CP, verbatim(pi/4) not CP)", ok,
                       "min eig unitary " + sci(unitary) + ", verbatim(0) " + sci(identity) + ", verbatim(pi/4) " +
                           sci(verbatim)};
  });

  checks.push_back([](Rng&) {
    double worst = 0;
    for (double x : {-1.0 / 3, 0.0, 1.0 / 3, 0.4, 0.6, 0.7, 0.9, 1.0}) {
      const double c = concurrence(to_density(make_state(Werner{x})));
      worst = std::max(worst, std::abs(c - std::max(0.0, (3 * x - 1) / 2)));
    }
    return bound_check("metrics: Werner concurrence closed form", worst, 1e-9);
  });

  checks.push_back([](Rng&) {
    const auto d = to_density(make_state(Werner{1.0}));
    const auto [sa, sb] = marginal_entropies(d);
    const double worst = std::max({std::abs(concurrence(d) - 1), std::abs(negativity(d) - 0.5),
                                   std::abs(von_neumann_entropy(d)), std::abs(sa - 1), std::abs(sb - 1),
                                   std::abs(purity(d) - 1)});
    return bound_check("metrics: singlet anchors", worst, 1e-9);
  });

  checks.push_back([](Rng& rng) {
    int disagreements = 0;
    for (int i = 0; i < 200; ++i) {
      const auto d = DensityMatrix<>::from_matrix(random_density(rng));
      if ((concurrence(d) > 1e-8) != (negativity(d) > 1e-8)) ++disagreements;
    }
    return CheckResult{"metrics: concurrence > 0 iff negativity > 0", disagreements == 0,
                       std::to_string(disagreements) + " disagreements in 200 states"};
  });

  checks.push_back([](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const auto d = DensityMatrix<>::from_matrix(random_density(rng));
      const Matrix4c<> local = kron(random_unitary2(rng), random_unitary2(rng));
      const Matrix4c<> rotated = local * d.matrix() * local.adjoint();
      const auto r = DensityMatrix<>::from_matrix((rotated + rotated.adjoint()) / 2.0);
      const auto [a0, b0] = marginal_entropies(d);
      const auto [a1, b1] = marginal_entropies(r);
      worst = std::max({worst, std::abs(concurrence(d) - concurrence(r)), std::abs(negativity(d) - negativity(r)),
                        std::abs(von_neumann_entropy(d) - von_neumann_entropy(r)), std::abs(a0 - a1),
                        std::abs(b0 - b1)});
    }
    return bound_check("metrics: local-unitary invariance", worst, 1e-10);
  });

  checks.push_back([](Rng& rng) {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      const auto d = DensityMatrix<>::from_matrix(random_density(rng));
      const auto m = evaluate_metrics(d, 0.0);
      ok = ok && m.entropy_global >= 0 && m.entropy_global <= 2 + 1e-12 && m.entropy_a >= 0 &&
           m.entropy_a <= 1 + 1e-12 && m.entropy_b >= 0 && m.entropy_b <= 1 + 1e-12 && m.concurrence >= 0 &&
           m.concurrence <= 1 && m.purity > 0 && m.purity <= 1 + 1e-12;
    }
    return CheckResult{"metrics: entropy, purity and concurrence bounds", ok, "200 random states"};
  });

  checks.push_back([](Rng& rng) {
    double worst = 0;
    for (int i = 0; i < 5; ++i) {
      const auto b = random_physical_bloch(rng);
      const auto base = evaluate_metrics(to_density(b), 0.0);
      for (int k = 0; k <= 72; ++k) {
        const double phi = k * kPi / 36;
        const auto m = evaluate_metrics(to_density(transform_bloch(b, phi, ChannelMode::UnitaryOracle)), phi);
        worst = std::max({worst, std::abs(m.entropy_global - base.entropy_global), std::abs(m.purity - base.purity)});
      }
    }
    return bound_check("metrics: entropy and purity constant along a unitary-oracle sweep", worst, 1e-10);
  });

  std::vector<CheckResult> results;
  Rng rng(seed);
  for (const auto& check : checks) {
    try {
      results.push_back(check(rng));
    } catch (const std::exception& e) {
      results.push_back({"(check raised)", false, e.what()});
    }
  }
  return results;
}

int run_validate(std::ostream& out, Mutation mutation) {
  const auto results = run_validation_suite(mutation);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace lqi
