#pragma once

#include <span>
#include <vector>

#include "pivsusy/susy.hpp"

namespace pivsusy::painleve {

using seeds::SeedSpec;

enum class Family { One = 1, Two = 2, Three = 3 };

susy::ExtremalFamily extremal_of(Family f);

struct PIVParams {
  double a = 0.0;
  double b = 0.0;
  Family family = Family::One;
  double epsilon1 = 0.0;
  int k = 1;
};

// The three one-parameter families:
//   1: a = -eps1 + 2k - 3/2,      b = -2 (eps1 + 1/2)^2
//   2: a = 2 eps1 - k,            b = -2 k^2
//   3: a = -eps1 - k - 3/2,       b = -2 (eps1 - k + 1/2)^2
PIVParams family_params(Family family, double epsilon1, int k);

// a = e2 + e3 - 2 e1 - 1, b = -2 (e2 - e3)^2 from an extremal-energy triple.
std::pair<double, double> abe_params(double e1, double e2, double e3);

struct PIVSolutionSample {
  double x = 0.0;
  Complex g{0.0, 0.0};
  Complex g1{0.0, 0.0};
  Complex g2{0.0, 0.0};
  // g'' - [ g'^2/(2g) + (3/2) g^3 + 4 x g^2 + 2 (x^2 - a) g + b/g ] as
  // evaluated from the stored derivatives; zero where |g| sits below the
  // degenerate floor (such points are excluded from residual maxima).
  Complex residual{0.0, 0.0};
};

struct SolveConfig {
  double degenerate_floor = 1e-12;  // |g| below this on the whole grid => DegenerateG
  double exclude_rel = 1e-6;        // pointwise |g| exclusion, relative to max |g|
};

// g = -x - (ln psi)' with psi the family's extremal state; g', g'' from exact
// Wronskian jets. Throws SingularExtremalStateError when psi dips to zero on
// the grid and DegenerateGError when g vanishes identically.
std::vector<PIVSolutionSample> g_solution(const SeedSpec& spec, Family family,
                                          std::span<const double> grid,
                                          const SolveConfig& scfg = {},
                                          const special::KummerConfig& cfg = {});

Complex piv_rhs(Complex g, Complex g1, double x, double a, double b);

enum class ResidualMode { ExactJets, FiniteDifference };

// ExactJets: max |residual| recomputed from the stored derivatives.
// FiniteDifference: ignores g', g'', differentiates the g column numerically
// (uniform grids only) and reports the defect relative to the local magnitude
// of the equation's terms, so samples next to off-axis movable poles are
// judged at their own scale.
double piv_residual(std::span<const PIVSolutionSample> samples, const PIVParams& params,
                    ResidualMode mode = ResidualMode::ExactJets,
                    const SolveConfig& scfg = {});

enum class Classification { RealOrComplex, ComplexOnly };

struct ScanPoint {
  Family family = Family::One;
  double epsilon1 = 0.0;
  int k = 1;
  double a = 0.0;
  double b = 0.0;
  Classification cls = Classification::ComplexOnly;
};

// The (a,b) solution curves per family and order over an epsilon1 range.
std::vector<ScanPoint> parameter_space_scan(double eps1_lo, double eps1_hi, double eps1_step,
                                            int k_lo, int k_hi);

}  // namespace pivsusy::painleve
