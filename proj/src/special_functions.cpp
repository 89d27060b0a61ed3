#include "pivsusy/special_functions.hpp"

#include <cmath>
#include <limits>

namespace pivsusy::special {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.5 && std::abs(z.real() - r) <= tol;
}

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's table).
// Relative accuracy is close to machine precision over the artifact's range.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Complex gamma_lanczos(Complex z) {
  if (z.real() < 0.5) {
    // Reflection keeps the rational part on the well-conditioned half plane.
    return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
  }
  z -= 1.0;
  Complex acc = kLanczos[0];
  for (int i = 1; i < 15; ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

// 1/Gamma(z); zero at the poles instead of throwing, which is what the
// large-|z| expansion needs when a or b-a is a non-positive integer.
Complex gamma_reciprocal(Complex z, double tol) {
  if (near_nonpositive_integer(z, tol)) return Complex{0.0, 0.0};
  return 1.0 / gamma_lanczos(z);
}

template <class Real>
std::complex<Real> series_sum(std::complex<Real> a, std::complex<Real> b, std::complex<Real> z,
                              int max_terms, bool& converged) {
  using C = std::complex<Real>;
  // Compensated accumulation; at moderate |z| the early terms overshoot the
  // final sum by several orders of magnitude.
  C s{Real(0), Real(0)}, comp{Real(0), Real(0)};
  auto add = [&](C t) {
    const C y = t - comp;
    const C u = s + y;
    comp = (u - s) - y;
    s = u;
  };
  C term{Real(1), Real(0)};
  add(term);
  const Real eps = std::numeric_limits<Real>::epsilon();
  int quiet = 0;
  converged = false;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + Real(n)) * z / ((b + Real(n)) * Real(n + 1));
    add(term);
    if (std::abs(term) <= eps * std::abs(s)) {
      if (++quiet >= 2) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  return s;
}

Complex kummer_series(Complex a, Complex b, Complex z, const KummerConfig& cfg, bool& converged) {
  if (cfg.extended_precision) {
    using CL = std::complex<long double>;
    const CL r = series_sum<long double>(CL(a.real(), a.imag()), CL(b.real(), b.imag()),
                                         CL(z.real(), z.imag()), cfg.max_series_terms, converged);
    return Complex{static_cast<double>(r.real()), static_cast<double>(r.imag())};
  }
  return series_sum<double>(a, b, z, cfg.max_series_terms, converged);
}

// One Poincare-type sum  sum_n (p)_n (q)_n / (n! w^n)  truncated at its
// smallest term; floor_rel reports |smallest term| / |partial sum|.
Complex asym_component(Complex p, Complex q, Complex w, int max_terms, double& floor_rel) {
  num::KahanSum s;
  Complex term{1.0, 0.0};
  s.add(term);
  double smallest = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    const Complex next = term * (p + double(n)) * (q + double(n)) / (double(n + 1) * w);
    if (std::abs(next) >= std::abs(term)) break;  // divergent tail reached
    term = next;
    s.add(term);
    smallest = std::abs(term);
    if (smallest <= 1e-18 * std::abs(s.value())) break;
  }
  const double scale = std::abs(s.value());
  floor_rel = scale > 0.0 ? smallest / scale : 1.0;
  return s.value();
}

// Large-|z| expansion for Re(z) >= 0. Returns the estimate together with its
// achieved relative floor so the dispatcher can fall back to the series.
Complex kummer_asymptotic(Complex a, Complex b, Complex z, const KummerConfig& cfg,
                          double& floor_rel) {
  double fd = 1.0, fr = 1.0;
  const Complex sd = asym_component(b - a, 1.0 - a, z, cfg.max_asym_terms, fd);
  const Complex sr = asym_component(a, a - b + 1.0, -z, cfg.max_asym_terms, fr);

  const Complex dominant = std::exp(z) * std::pow(z, a - b) * gamma_reciprocal(a, cfg.pole_tol) * sd;
  // On the positive real axis the recessive multiplier takes its median
  // (Stokes) value cos(pi a); off axis the sign of Im(z) picks the branch.
  Complex phase;
  if (std::abs(z.imag()) <= 1e-14 * std::abs(z.real()))
    phase = std::cos(kPi * a);
  else if (z.imag() > 0.0)
    phase = std::exp(Complex{0.0, kPi} * a);
  else
    phase = std::exp(Complex{0.0, -kPi} * a);
  const Complex recessive =
      phase * std::pow(z, -a) * gamma_reciprocal(b - a, cfg.pole_tol) * sr;

  const Complex total = gamma_lanczos(b) * (dominant + recessive);
  const double scale = std::abs(total);
  if (scale == 0.0) {
    floor_rel = 1.0;
    return total;
  }
  floor_rel = (fd * std::abs(gamma_lanczos(b) * dominant) +
               fr * std::abs(gamma_lanczos(b) * recessive)) /
              scale;
  return total;
}

Complex kummer_dispatch(Complex a, Complex b, Complex z, const KummerConfig& cfg) {
  if (near_nonpositive_integer(b, cfg.pole_tol))
    throw PoleError("kummer_1f1: b is a non-positive integer");
  const double r = std::abs(z);
  if (r > cfg.max_radius) throw RangeError("kummer_1f1: |z| beyond configured range");

  if (z.real() < 0.0) {
    // Map to the growth side; the reflected series has no leading-order
    // cancellation there.
    return std::exp(z) * kummer_dispatch(b - a, b, -z, cfg);
  }
  bool converged = false;
  if (r <= cfg.series_radius) {
    const Complex v = kummer_series(a, b, z, cfg, converged);
    ensure_finite(v, "kummer_1f1: series produced a non-finite value");
    return v;
  }
  double floor_rel = 1.0;
  const Complex asym = kummer_asymptotic(a, b, z, cfg, floor_rel);
  if (floor_rel <= cfg.asym_floor && is_finite(asym)) return asym;
  // The expansion bottoms out too early for this (a,b); the series is still
  // convergent and well conditioned on Re(z) >= 0.
  const Complex v = kummer_series(a, b, z, cfg, converged);
  ensure_finite(v, "kummer_1f1: series produced a non-finite value");
  return v;
}

}  // namespace

Complex kummer_1f1(const KummerParams& p, const KummerConfig& cfg) {
  return kummer_dispatch(p.a, p.b, p.z, cfg);
}

std::vector<Complex> kummer_1f1_jet(const KummerParams& p, int order, const KummerConfig& cfg) {
  if (order < 0 || order > 4)
    throw InsufficientOrderError("kummer_1f1_jet: order must lie in [0, 4]");
  std::vector<Complex> jet(static_cast<std::size_t>(order) + 1);
  Complex shift{1.0, 0.0};  // (a)_m / (b)_m
  for (int m = 0; m <= order; ++m) {
    const double fm = static_cast<double>(m);
    jet[m] = shift * kummer_dispatch(p.a + fm, p.b + fm, p.z, cfg);
    shift *= (p.a + fm) / (p.b + fm);
  }
  return jet;
}

Complex gamma_fn(Complex z) {
  if (near_nonpositive_integer(z, 1e-12))
    throw PoleError("gamma_fn: pole at non-positive integer");
  const Complex v = gamma_lanczos(z);
  ensure_finite(v, "gamma_fn: non-finite result");
  return v;
}

}  // namespace pivsusy::special
