#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "pivsusy/errors.hpp"

namespace pivsusy {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void ensure_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw NonFiniteError(what);
}

namespace num {

// ---------------------------------------------------------------------------
// Truncated derivative lists ("jets"): j[m] holds f^(m) at a fixed point.
// All operations follow the Leibniz rule and keep the shorter length.

using Jet = std::vector<Complex>;

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

inline Jet jet_mul(const Jet& f, const Jet& g) {
  const int n = static_cast<int>(std::min(f.size(), g.size()));
  Jet h(n, Complex{0.0, 0.0});
  for (int m = 0; m < n; ++m)
    for (int i = 0; i <= m; ++i) h[m] += binom(m, i) * f[i] * g[m - i];
  return h;
}

// Derivative list of f/g. Requires g[0] != 0.
inline Jet jet_div(const Jet& f, const Jet& g) {
  if (g.empty() || std::abs(g[0]) == 0.0)
    throw ZeroDenominatorError("jet_div: leading denominator value is zero");
  const int n = static_cast<int>(std::min(f.size(), g.size()));
  Jet h(n);
  for (int m = 0; m < n; ++m) {
    Complex acc = f[m];
    for (int i = 0; i < m; ++i) acc -= binom(m, i) * h[i] * g[m - i];
    h[m] = acc / g[0];
  }
  return h;
}

// Derivative list of f' (drops one order).
inline Jet jet_shift(const Jet& f) {
  if (f.empty()) return {};
  return Jet(f.begin() + 1, f.end());
}

// Derivative list of (ln f)' = f'/f; entry m is (ln f)^(m+1).
inline Jet jet_log_deriv(const Jet& f) { return jet_div(jet_shift(f), f); }

// ---------------------------------------------------------------------------
// Compensated (Kahan-Neumaier style) accumulation; std::complex arithmetic is
// componentwise so the classic scheme applies unchanged.

struct KahanSum {
  Complex s{0.0, 0.0};
  Complex c{0.0, 0.0};
  void add(Complex t) {
    const Complex y = t - c;
    const Complex u = s + y;
    c = (u - s) - y;
    s = u;
  }
  Complex value() const { return s; }
};

// ---------------------------------------------------------------------------
// Dense complex determinant by LU with partial pivoting (row-major, n x n).
// The matrix is consumed.

inline Complex det_inplace(std::vector<Complex>& a, int n) {
  Complex det{1.0, 0.0};
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double m = std::abs(a[r * n + col]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (best == 0.0) return Complex{0.0, 0.0};
    if (piv != col) {
      for (int j = col; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      det = -det;
    }
    const Complex d = a[col * n + col];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a[r * n + col] / d;
      if (f == Complex{0.0, 0.0}) continue;
      for (int j = col + 1; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      a[r * n + col] = Complex{0.0, 0.0};
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Uniform-grid samples of a complex function.

struct GridFunction {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<Complex> v;

  std::size_t size() const { return v.size(); }
  double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
};

// 5-point central first derivative; trims two points per side.
inline GridFunction fd_derivative(const GridFunction& f) {
  if (f.size() < 5) throw InsufficientOrderError("fd_derivative: need at least 5 samples");
  GridFunction g;
  g.x0 = f.x0 + 2.0 * f.h;
  g.h = f.h;
  g.v.resize(f.size() - 4);
  const double s = 1.0 / (12.0 * f.h);
  for (std::size_t i = 2; i + 2 < f.size(); ++i)
    g.v[i - 2] = s * (f.v[i - 2] - 8.0 * f.v[i - 1] + 8.0 * f.v[i + 1] - f.v[i + 2]);
  return g;
}

// 5-point central second derivative; trims two points per side.
inline GridFunction fd_second_derivative(const GridFunction& f) {
  if (f.size() < 5) throw InsufficientOrderError("fd_second_derivative: need at least 5 samples");
  GridFunction g;
  g.x0 = f.x0 + 2.0 * f.h;
  g.h = f.h;
  g.v.resize(f.size() - 4);
  const double s = 1.0 / (12.0 * f.h * f.h);
  for (std::size_t i = 2; i + 2 < f.size(); ++i)
    g.v[i - 2] = s * (-f.v[i - 2] + 16.0 * f.v[i - 1] - 30.0 * f.v[i] + 16.0 * f.v[i + 1] -
                      f.v[i + 2]);
  return g;
}

inline double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (const Complex& z : f.v) m = std::max(m, std::abs(z));
  return m;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + h * static_cast<double>(i);
  xs[n - 1] = hi;
  return xs;
}

// Integral of |f|^2; composite Simpson on uniform odd-count grids, trapezoid
// cleanup otherwise.
inline double l2_norm_sq(std::span<const double> xs, std::span<const Complex> v) {
  const std::size_t n = xs.size();
  if (n < 2 || v.size() != n) return 0.0;
  auto w = [&](std::size_t i) { return std::norm(v[i]); };
  const double h = xs[1] - xs[0];
  bool uniform = true;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-12 * std::max(1.0, std::abs(h))) {
      uniform = false;
      break;
    }
  if (uniform && n % 2 == 1) {
    double s = w(0) + w(n - 1);
    for (std::size_t i = 1; i + 1 < n; i += 2) s += 4.0 * w(i);
    for (std::size_t i = 2; i + 1 < n; i += 2) s += 2.0 * w(i);
    return s * h / 3.0;
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += 0.5 * (w(i) + w(i + 1)) * (xs[i + 1] - xs[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Deterministic parallel map: each index writes its own slot, so output is
// bitwise identical for any worker count. Worker count comes from
// PIV_SUSY_THREADS, defaulting to the hardware concurrency.

inline unsigned worker_count() {
  static const unsigned n = [] {
    if (const char* env = std::getenv("PIV_SUSY_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
  }();
  return n;
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n ? n : 1);
  if (workers <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace num
}  // namespace pivsusy
