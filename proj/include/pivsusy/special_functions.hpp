#pragma once

#include <vector>

#include "pivsusy/numerics.hpp"

namespace pivsusy::special {

// Evaluation strategy for the confluent hypergeometric function. The power
// series handles |z| below series_radius; beyond it the argument is first
// mapped to Re(z) >= 0 through 1F1(a,b;z) = e^z 1F1(b-a,b;-z) and then either
// the large-|z| expansion or the (still convergent) series is used, whichever
// meets asym_floor. Arguments past max_radius are rejected.
struct KummerConfig {
  double series_radius = 25.0;
  double max_radius = 100.0;
  double asym_floor = 1e-10;     // required relative truncation floor
  int max_series_terms = 600;
  int max_asym_terms = 200;
  double pole_tol = 1e-12;       // integer-proximity tolerance for poles
  bool extended_precision = false;  // sum the series in long double
};

struct KummerParams {
  Complex a;
  Complex b;
  Complex z;
};

// 1F1(a,b;z). Throws PoleError when b sits on a non-positive integer and
// RangeError when |z| exceeds the configured evaluation range.
Complex kummer_1f1(const KummerParams& p, const KummerConfig& cfg = {});

// [1F1, d/dz 1F1, ...] up to `order` derivatives through the contiguous shift
// d/dz 1F1(a,b;z) = (a/b) 1F1(a+1,b+1;z). Capped at order 4.
std::vector<Complex> kummer_1f1_jet(const KummerParams& p, int order,
                                    const KummerConfig& cfg = {});

// Complex gamma function (Lanczos, g = 607/128). Throws PoleError at
// non-positive integers.
Complex gamma_fn(Complex z);

}  // namespace pivsusy::special
