#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pivsusy/special_functions.hpp"
#include "test_oracles.hpp"

using namespace pivsusy;
using special::gamma_fn;
using special::kummer_1f1;
using special::kummer_1f1_jet;
using special::KummerParams;

namespace {

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("1F1 at z = 0 is 1") {
  for (const double a : {-2.3, 0.25, 1.75}) {
    const Complex v = kummer_1f1({{a, 0.4}, {0.5, 0.0}, {0.0, 0.0}});
    CHECK(rel_err(v, {1.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("1F1(1,2;z) = (e^z - 1)/z") {
  const Complex v = kummer_1f1({{1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}});
  CHECK(rel_err(v, {std::exp(1.0) - 1.0, 0.0}) < 1e-14);
}

TEST_CASE("1F1(a,a;z) = e^z") {
  for (const double x : {0.7, 2.0, 4.5}) {
    const double z = x * x;
    const Complex v = kummer_1f1({{0.5, 0.0}, {0.5, 0.0}, {z, 0.0}});
    CHECK(rel_err(v, {std::exp(z), 0.0}) < 1e-13);
  }
}

TEST_CASE("1F1 complex argument against the brute-force series oracle") {
  const Complex a{0.25, 0.0}, b{0.5, 0.0}, z{1.0, 0.5};
  const Complex frozen{1.6613297737411677, 0.5698201901975813};  // 400-term oracle
  const Complex live = oracles::brute_kummer_series(a, b, z);
  CHECK(rel_err(live, frozen) < 1e-14);  // the oracle reproduces its frozen value
  CHECK(rel_err(kummer_1f1({a, b, z}), frozen) < 1e-12);
}

TEST_CASE("series/asymptotic seam stays accurate across the switchover") {
  // spot values from the brute-force oracle at the seam and beyond
  for (const double z : {24.0, 26.0, 40.0, 80.0, 100.0}) {
    for (const double a : {-3.25, -1.75, 0.25, 1.25}) {
      for (const double b : {0.5, 1.5}) {
        const Complex want = oracles::brute_kummer_series({a, 0.0}, {b, 0.0}, {z, 0.0}, 800);
        const Complex got = kummer_1f1({{a, 0.0}, {b, 0.0}, {z, 0.0}});
        CAPTURE(z);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(rel_err(got, want) < 1e-9);
      }
    }
  }
}

TEST_CASE("pole and range rejection") {
  CHECK_THROWS_AS(kummer_1f1({{0.3, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), PoleError);
  CHECK_THROWS_AS(kummer_1f1({{0.3, 0.0}, {-2.0, 0.0}, {1.0, 0.0}}), PoleError);
  CHECK_THROWS_AS(kummer_1f1({{0.3, 0.0}, {0.5, 0.0}, {101.0, 0.0}}), RangeError);
  CHECK_NOTHROW(kummer_1f1({{0.3, 0.0}, {-1.5, 0.0}, {1.0, 0.0}}));
}

TEST_CASE("jet entries follow the contiguous shift") {
  const KummerParams p{{0.7, 0.0}, {1.3, 0.0}, {2.0, 1.0}};
  const auto jet = kummer_1f1_jet(p, 3);
  REQUIRE(jet.size() == 4);
  CHECK(rel_err(jet[0], kummer_1f1(p)) == 0.0);
  // first derivative at z = 0 is a/b
  const auto at0 = kummer_1f1_jet({{0.7, 0.0}, {1.3, 0.0}, {0.0, 0.0}}, 1);
  CHECK(rel_err(at0[1], Complex{0.7 / 1.3, 0.0}) < 1e-15);
  // 1F1(1,1;z) = e^z: every derivative equals e^z
  const auto exp_jet = kummer_1f1_jet({{1.0, 0.0}, {1.0, 0.0}, {1.5, 0.0}}, 4);
  for (const auto& v : exp_jet) CHECK(rel_err(v, {std::exp(1.5), 0.0}) < 1e-13);
  CHECK_THROWS_AS(kummer_1f1_jet(p, 5), InsufficientOrderError);
}

TEST_CASE("jet matches a central finite difference of the value") {
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a{oracles::uniform(-2.0, 2.0), oracles::uniform(-0.5, 0.5)};
    const Complex b{oracles::uniform(0.3, 3.0), 0.0};
    const Complex z{oracles::uniform(-8.0, 8.0), oracles::uniform(-2.0, 2.0)};
    const auto jet = kummer_1f1_jet({a, b, z}, 1);
    const Complex fd =
        (kummer_1f1({a, b, z + h}) - kummer_1f1({a, b, z - h})) / (2.0 * h);
    CHECK(rel_err(fd, jet[1]) < 1e-6);
  }
}

TEST_CASE("complex-step derivative agrees with the jet on the real axis") {
  const Complex a{0.45, 0.0}, b{1.2, 0.0}, z{3.0, 0.0};
  const double h = 1e-20;
  const Complex shifted = kummer_1f1({a, b, z + Complex{0.0, h}});
  const auto jet = kummer_1f1_jet({a, b, z}, 1);
  CHECK(rel_err({shifted.imag() / h, 0.0}, jet[1]) < 1e-12);
}

TEST_CASE("gamma classical values") {
  CHECK(rel_err(gamma_fn({1.0, 0.0}), {1.0, 0.0}) < 1e-14);
  CHECK(rel_err(gamma_fn({0.5, 0.0}), {1.7724538509055160273, 0.0}) < 1e-14);
  CHECK(rel_err(gamma_fn({5.0, 0.0}), {24.0, 0.0}) < 1e-13);
  CHECK_THROWS_AS(gamma_fn({0.0, 0.0}), PoleError);
  CHECK_THROWS_AS(gamma_fn({-3.0, 0.0}), PoleError);
}

TEST_CASE("gamma recurrence over the validated domain") {
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = oracles::uniform(0.1, 29.0);
    const Complex lhs = gamma_fn({x + 1.0, 0.0});
    const Complex rhs = x * gamma_fn({x, 0.0});
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("gamma reflection identity") {
  for (int trial = 0; trial < 100; ++trial) {
    const double x = oracles::uniform(0.05, 0.95);
    const Complex product = gamma_fn({x, 0.0}) * gamma_fn({1.0 - x, 0.0});
    const double want = 3.14159265358979323846 / std::sin(3.14159265358979323846 * x);
    CHECK(rel_err(product, {want, 0.0}) < 1e-12);
  }
}

TEST_CASE("contiguous relation b(M(a) - M(a-1)) = z M(a, b+1)") {
  for (int trial = 0; trial < 200; ++trial) {
    const Complex a{oracles::uniform(-3.0, 3.0), oracles::uniform(-1.0, 1.0)};
    const Complex b{oracles::uniform(0.4, 4.0), oracles::uniform(-0.5, 0.5)};
    const Complex z{oracles::uniform(-10.0, 10.0), oracles::uniform(-3.0, 3.0)};
    const Complex lhs = b * (kummer_1f1({a, b, z}) - kummer_1f1({a - 1.0, b, z}));
    const Complex rhs = z * kummer_1f1({a, b + 1.0, z});
    CHECK(std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0}) < 1e-10);
  }
}

TEST_CASE("Kummer transformation self-consistency") {
  for (int trial = 0; trial < 200; ++trial) {
    const Complex a{oracles::uniform(-2.0, 2.0), 0.0};
    const Complex b{oracles::uniform(0.4, 3.0), 0.0};
    const Complex z{oracles::uniform(0.5, 10.0), oracles::uniform(-2.0, 2.0)};
    const Complex lhs = kummer_1f1({a, b, z});
    const Complex rhs = std::exp(z) * oracles::brute_kummer_series(b - a, b, -z);
    CHECK(rel_err(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("extended-precision mode agrees with the default") {
  special::KummerConfig cfg;
  cfg.extended_precision = true;
  const KummerParams p{{-1.3, 0.2}, {0.7, 0.0}, {12.0, 3.0}};
  CHECK(rel_err(kummer_1f1(p, cfg), kummer_1f1(p)) < 1e-12);
}
