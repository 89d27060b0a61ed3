#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pivsusy/seeds.hpp"
#include "test_oracles.hpp"

using namespace pivsusy;
using seeds::apply_annihilation;
using seeds::apply_creation;
using seeds::build_seed_chain;
using seeds::seed_u_jet;
using seeds::SeedSpec;
using seeds::ValueJet;

TEST_CASE("nu to lambda conversion") {
  CHECK(seeds::nu_to_lambda(0.0, 1.3) == 0.0);
  // Gamma(1)/Gamma(1/2) and Gamma(3/2)/Gamma(1)
  CHECK(seeds::nu_to_lambda(0.7, -0.5) ==
        doctest::Approx(1.4 / 1.7724538509055160273).epsilon(1e-12));
  CHECK(seeds::nu_to_lambda(0.5, -1.5) ==
        doctest::Approx(1.7724538509055160273 / 2.0).epsilon(1e-12));
  // (1-2eps)/4 = -1 is a pole for eps = 5/2
  CHECK_THROWS_AS(seeds::nu_to_lambda(0.3, 2.5), PoleError);
}

TEST_CASE("seed value and first derivative at the origin") {
  for (const double eps : {-1.5, -0.5, 0.3, 2.5, 7.0}) {
    const auto jet = seed_u_jet(0.0, eps, 0.8, -0.6, 3);
    CHECK(std::abs(jet.values[0] - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(jet.values[1] - Complex{0.8, -0.6}) < 1e-14);
  }
}

TEST_CASE("derivative at the origin confirmed by central differences") {
  const double h = 1e-5;
  const auto up = seed_u_jet(h, 1.3, 0.4, 0.9, 1);
  const auto dn = seed_u_jet(-h, 1.3, 0.4, 0.9, 1);
  const Complex fd = (up.values[0] - dn.values[0]) / (2.0 * h);
  CHECK(std::abs(fd - Complex{0.4, 0.9}) < 1e-9);
}

TEST_CASE("eps = -1/2 with a vanishing coefficient gives exp(x^2/2)") {
  for (const double x : {-3.0, -0.4, 1.7, 4.2}) {
    const auto jet = seed_u_jet(x, -0.5, 0.0, 0.0, 4);
    CHECK(std::abs(jet.values[0] - Complex{std::exp(0.5 * x * x), 0.0}) <
          1e-12 * std::exp(0.5 * x * x));
    CHECK(jet.values[0].imag() == 0.0);
  }
}

TEST_CASE("real case stays real and even case stays even") {
  for (const double x : {-2.3, 0.9, 3.1}) {
    const auto real_jet = seed_u_jet(x, -0.8, 0.35, 0.0, 4);
    for (const auto& v : real_jet.values)
      CHECK(std::abs(v.imag()) < 1e-13 * std::max(1.0, std::abs(v.real())));
    const auto plus = seed_u_jet(x, 0.7, 0.0, 0.0, 2);
    const auto minus = seed_u_jet(-x, 0.7, 0.0, 0.0, 2);
    CHECK(std::abs(plus.values[0] - minus.values[0]) <
          1e-13 * std::abs(plus.values[0]));
  }
}

TEST_CASE("hypergeometric seed vs independent Taylor marcher") {
  // >= 20 random (eps, lambda, kappa); absolute agreement to 1e-8 on [0,5]
  const auto xs = pivsusy::num::linspace(0.0, 5.0, 26);
  const std::vector<double> pts(xs.begin(), xs.end());
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = oracles::uniform(-3.0, 3.0);
    const double lambda = oracles::uniform(-2.0, 2.0);
    const double kappa = oracles::uniform(-2.0, 2.0);
    oracles::TaylorOscillatorMarcher marcher(eps, lambda, kappa);
    const auto reference = marcher.values_at(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto jet = seed_u_jet(pts[i], eps, lambda, kappa, 1);
      CAPTURE(eps);
      CAPTURE(pts[i]);
      CHECK(std::abs(jet.values[0] - reference[i]) < 1e-8);
    }
  }
}

TEST_CASE("ground state is annihilated") {
  // e^{-x^2/2} lives at eps = 1/2
  const auto ground = seeds::gaussian_ground_jet(1.2, 3);
  const auto zero = apply_annihilation(ground);
  CHECK(std::abs(zero.values[0]) < 1e-15);
  CHECK(std::abs(zero.values[1]) < 1e-15);
  CHECK(zero.epsilon == doctest::Approx(-0.5));
}

TEST_CASE("annihilation of exp(x^2/2) by hand") {
  // (1/sqrt(2)) (x u + u') = sqrt(2) x exp(x^2/2) when u = exp(x^2/2)
  const double x = 0.9;
  const auto u = seed_u_jet(x, -0.5, 0.0, 0.0, 3);
  const auto v = apply_annihilation(u);
  const double want = std::sqrt(2.0) * x * std::exp(0.5 * x * x);
  CHECK(std::abs(v.values[0] - Complex{want, 0.0}) < 1e-12 * want);
  CHECK(v.epsilon == doctest::Approx(-1.5));
}

TEST_CASE("annihilation drops the Schrodinger residual energy by one") {
  const double eps = 1.7, lambda = 0.6, kappa = 1.1;
  for (int j = 1; j <= 3; ++j) {
    auto f = [&](double x) {
      ValueJet jet = seed_u_jet(x, eps, lambda, kappa, 1);
      for (int i = 0; i < j; ++i) jet = apply_annihilation(jet);
      return jet.values[0];
    };
    const auto xs = pivsusy::num::linspace(-3.0, 3.0, 25);
    const std::vector<double> pts(xs.begin(), xs.end());
    CHECK(oracles::schrodinger_residual(f, eps - j, pts) < 1e-8);
  }
}

TEST_CASE("creation raises the energy") {
  const double eps = 0.4;
  auto f = [&](double x) {
    return apply_creation(seed_u_jet(x, eps, 0.3, 0.2, 1)).values[0];
  };
  const auto xs = pivsusy::num::linspace(-3.0, 3.0, 25);
  CHECK(oracles::schrodinger_residual(f, eps + 1.0, {xs.begin(), xs.end()}) < 1e-8);
}

TEST_CASE("seed chain energies and residuals") {
  const auto spec = SeedSpec::from_lambda_kappa(7.0, 1.0, 1.0, 3);
  const auto chain = build_seed_chain(spec, 0.8, 5);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].epsilon == doctest::Approx(7.0));
  CHECK(chain[1].epsilon == doctest::Approx(6.0));
  CHECK(chain[2].epsilon == doctest::Approx(5.0));

  const auto xs = pivsusy::num::linspace(-3.0, 3.0, 25);
  const std::vector<double> pts(xs.begin(), xs.end());
  for (int j = 0; j < 3; ++j) {
    auto f = [&](double x) { return build_seed_chain(spec, x, 3)[j].values[0]; };
    CHECK(oracles::schrodinger_residual(f, 7.0 - j, pts) < 1e-8);
  }
  CHECK(build_seed_chain(SeedSpec::from_lambda_kappa(1.0, 0.2, 0.0, 1), 0.8, 3).size() == 1);
}

TEST_CASE("jet closure matches finite differences of lower entries") {
  const double h = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const double eps = oracles::uniform(-2.0, 2.0);
    const double x = oracles::uniform(-2.0, 2.0);
    const auto jet = seed_u_jet(x, eps, 0.5, 0.7, 4);
    const auto up = seed_u_jet(x + h, eps, 0.5, 0.7, 1);
    const auto dn = seed_u_jet(x - h, eps, 0.5, 0.7, 1);
    const Complex fd2 = (up.values[0] - 2.0 * jet.values[0] + dn.values[0]) / (h * h);
    CHECK(std::abs(fd2 - jet.values[2]) < 1e-6 * std::max(1.0, std::abs(jet.values[2])));
  }
}

TEST_CASE("riccati spot-check") {
  // alpha = x for u = exp(x^2/2): residual vanishes identically
  const auto u = seed_u_jet(1.4, -0.5, 0.0, 0.0, 3);
  CHECK(seeds::riccati_check(u) < 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto jet = seed_u_jet(oracles::uniform(-2.0, 2.0), oracles::uniform(-2.0, 2.0),
                                oracles::uniform(-1.0, 1.0), oracles::uniform(-1.0, 1.0), 3);
    CHECK(seeds::riccati_check(jet) < 1e-9 * std::max(1.0, std::abs(jet.values[0])));
  }
  // negative control: corrupt the second derivative
  auto bad = seed_u_jet(0.7, 1.0, 0.4, 0.3, 3);
  bad.values[2] += Complex{0.1, 0.0};
  CHECK(seeds::riccati_check(bad) > 1e-3);
  // zero denominator
  ValueJet null_jet;
  null_jet.x = 0.0;
  null_jet.epsilon = 0.5;
  null_jet.values = {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  CHECK_THROWS_AS(seeds::riccati_check(null_jet), ZeroDenominatorError);
}

TEST_CASE("spec construction rules") {
  CHECK_THROWS_AS(SeedSpec::from_lambda_kappa(1.0, 0.0, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SeedSpec::from_lambda_kappa(1.0, 0.0, 0.0, 7), std::invalid_argument);
  const auto real_spec = SeedSpec::from_nu(-0.5, 0.7, 1);
  CHECK(real_spec.kappa == 0.0);
  CHECK(real_spec.real_regime());
  CHECK(real_spec.nu.has_value());
  const auto complex_spec = SeedSpec::from_lambda_kappa(2.5, 1.0, 1.0, 1);
  CHECK(!complex_spec.real_regime());
}

TEST_CASE("oscillator eigenjets are normalized eigenfunctions") {
  // closure residual via the independent stencil oracle
  for (const int n : {0, 1, 3, 5}) {
    auto f = [&](double x) { return seeds::oscillator_eigenjet(n, x, 1).values[0]; };
    const auto xs = pivsusy::num::linspace(-4.0, 4.0, 33);
    CHECK(oracles::schrodinger_residual(f, n + 0.5, {xs.begin(), xs.end()}) < 1e-8);
  }
  // L2 normalization
  const auto xs = pivsusy::num::linspace(-10.0, 10.0, 2001);
  std::vector<Complex> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    v[i] = seeds::oscillator_eigenjet(4, xs[i], 1).values[0];
  CHECK(pivsusy::num::l2_norm_sq(xs, v) == doctest::Approx(1.0).epsilon(1e-10));
}
