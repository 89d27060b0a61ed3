// Independent oracles used by the test suites. Everything here stays off the
// library's evaluation paths: brute-force series, a Taylor marcher for the
// oscillator equation, stencil residual oracles, Laplace determinants and
// exact rational arithmetic.
#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "pivsusy/numerics.hpp"

namespace oracles {

using pivsusy::Complex;

// Plain 400-term compensated power series for 1F1(a,b;z).
inline Complex brute_kummer_series(Complex a, Complex b, Complex z, int terms = 400) {
  Complex sum{0.0, 0.0}, comp{0.0, 0.0};
  auto add = [&](Complex t) {
    const Complex y = t - comp;
    const Complex u = sum + y;
    comp = (u - sum) - y;
    sum = u;
  };
  Complex term{1.0, 0.0};
  add(term);
  for (int n = 0; n < terms; ++n) {
    term *= (a + double(n)) * z / ((b + double(n)) * double(n + 1));
    add(term);
  }
  return sum;
}

// High-order Taylor one-step marcher for u'' = (x^2 - 2 eps) u starting from
// u(0) = 1, u'(0) = lambda + i kappa. Returns u at the requested ascending
// points. Written independently of the hypergeometric evaluation path.
class TaylorOscillatorMarcher {
 public:
  TaylorOscillatorMarcher(double eps, double lambda, double kappa)
      : eps_(eps), u_(1.0, 0.0), du_(lambda, kappa) {}

  std::vector<Complex> values_at(const std::vector<double>& xs) {
    std::vector<Complex> out;
    out.reserve(xs.size());
    for (const double x : xs) {
      advance_to(x);
      out.push_back(u_);
    }
    return out;
  }

 private:
  static constexpr int kOrder = 20;
  static constexpr double kStep = 0.0625;

  void advance_to(double x) {
    while (x - x0_ > 1e-15) {
      const double h = std::min(kStep, x - x0_);
      step(h);
    }
  }

  void step(double h) {
    // derivative table closed by the equation itself
    Complex d[kOrder + 1];
    d[0] = u_;
    d[1] = du_;
    const double q = x0_ * x0_ - 2.0 * eps_;
    for (int m = 0; m + 2 <= kOrder; ++m) {
      Complex acc = q * d[m];
      if (m >= 1) acc += 2.0 * m * x0_ * d[m - 1];
      if (m >= 2) acc += double(m) * double(m - 1) * d[m - 2];
      d[m + 2] = acc;
    }
    Complex u{0.0, 0.0}, du{0.0, 0.0};
    double hp = 1.0, fact = 1.0;
    for (int m = 0; m <= kOrder; ++m) {
      if (m > 0) {
        hp *= h;
        fact *= double(m);
      }
      u += d[m] * hp / fact;
      if (m + 1 <= kOrder) du += d[m + 1] * hp / fact;
    }
    u_ = u;
    du_ = du;
    x0_ += h;
  }

  double eps_;
  double x0_ = 0.0;
  Complex u_, du_;
};

// max_x |(-f''/2 + (x^2/2) f - eps f)| / |f| with an independent 5-point
// stencil around each check point (default step 1e-3). Points where |f| is
// negligible against the largest sample are skipped.
inline double schrodinger_residual(const std::function<Complex(double)>& f, double eps,
                                   const std::vector<double>& xs, double h = 1e-3) {
  double fmax = 0.0;
  std::vector<Complex> centers(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    centers[i] = f(xs[i]);
    fmax = std::max(fmax, std::abs(centers[i]));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Complex c = centers[i];
    if (std::abs(c) < 1e-3 * fmax) continue;
    const Complex d2 = (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * c + 16.0 * f(x + h) -
                        f(x + 2 * h)) /
                       (12.0 * h * h);
    const Complex res = -0.5 * d2 + (0.5 * x * x - eps) * c;
    worst = std::max(worst, std::abs(res) / std::abs(c));
  }
  return worst;
}

// max_x |(-psi''/2 + V psi - E psi)| / max|psi| for a partner-side state, with
// caller-supplied potential samples.
inline double hamiltonian_residual(const std::function<Complex(double)>& psi,
                                   const std::function<Complex(double)>& potential, double energy,
                                   const std::vector<double>& xs, double h = 1e-3) {
  double pmax = 0.0;
  std::vector<Complex> centers(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    centers[i] = psi(xs[i]);
    pmax = std::max(pmax, std::abs(centers[i]));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Complex c = centers[i];
    const Complex d2 = (-psi(x - 2 * h) + 16.0 * psi(x - h) - 30.0 * c + 16.0 * psi(x + h) -
                        psi(x + 2 * h)) /
                       (12.0 * h * h);
    const Complex res = -0.5 * d2 + (potential(x) - energy) * c;
    worst = std::max(worst, std::abs(res));
  }
  return worst / pmax;
}

// Recursive Laplace expansion; the reference for the LU path.
inline Complex laplace_det(const std::vector<Complex>& m, int n) {
  if (n == 1) return m[0];
  Complex acc{0.0, 0.0};
  double sign = 1.0;
  for (int col = 0; col < n; ++col) {
    std::vector<Complex> minor;
    minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (c != col) minor.push_back(m[r * n + c]);
    acc += sign * m[col] * laplace_det(minor, n - 1);
    sign = -sign;
  }
  return acc;
}

// Exact rational arithmetic for the algebraic identities.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Rational operator-(Rational a, Rational b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// Exact derivative lists of p(x) e^{-x^2/2} for polynomial p given by
// coefficients (ascending powers).
inline pivsusy::num::Jet poly_gauss_jet(std::vector<double> p, double x, int order) {
  auto eval = [&](const std::vector<double>& c) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  const double gauss = std::exp(-0.5 * x * x);
  pivsusy::num::Jet jet(static_cast<std::size_t>(order) + 1);
  for (int m = 0; m <= order; ++m) {
    jet[static_cast<std::size_t>(m)] = Complex{eval(p) * gauss, 0.0};
    // d/dx [p e^{-x^2/2}] = (p' - x p) e^{-x^2/2}
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += double(i) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= p[i];
    p = next;
  }
  return jet;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

}  // namespace oracles
