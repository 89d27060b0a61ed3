#pragma once

#include <functional>
#include <optional>
#include <string>

#include "pivsusy/painleve.hpp"

namespace pivsusy::ladder {

using seeds::SeedSpec;
using seeds::ValueJet;

// The decoupled (f, h, V) triple reconstructed from a P_IV sample:
//   f = x + g
//   h = -x^2 + g'/2 - g^2/2 - 2xg + a
//   V = x^2/2 - g'/2 + g^2/2 + xg + e1 - 1/2
struct PHATriple {
  double x = 0.0;
  Complex f{0.0, 0.0};
  Complex h{0.0, 0.0};
  Complex v{0.0, 0.0};
};

PHATriple fhv_from_g(const painleve::PIVSolutionSample& sample,
                     const painleve::PIVParams& params, double e1);

enum class Direction { Raise, Lower };

// One first-order factor (∓ d/dx + alpha)/sqrt(2) with a caller-supplied
// superpotential.
struct OperatorFactor {
  std::function<Complex(double)> alpha;
  Direction direction = Direction::Lower;
};

Complex apply_first_order(const OperatorFactor& factor, const ValueJet& f_jet);

// Ladder operators L^± = B_k^+ a^± B_k^-.

// Exact path on jets; consumes 2k+1 derivative orders, so the state must
// carry order >= 2k+2. Returns the image jet at energy E ± 1.
ValueJet apply_ladder_exact(const SeedSpec& spec, Direction dir, const ValueJet& state,
                            const special::KummerConfig& cfg = {});

// Finite-difference path on uniform samples (5-point stencils); the output
// domain shrinks by 2(2k+1) points per side.
num::GridFunction apply_ladder(const SeedSpec& spec, Direction dir,
                               const num::GridFunction& state,
                               const special::KummerConfig& cfg = {});

// H_k f = -f''/2 + V_k f with the 5-point second derivative.
num::GridFunction apply_hamiltonian_fd(const SeedSpec& spec, const num::GridFunction& state,
                                       const special::KummerConfig& cfg = {});

struct QPolynomial {
  std::vector<double> roots;
  int order() const { return static_cast<int>(roots.size()) - 1; }
  double eval(double e) const;
};

// Q with roots {eps1 - k + 1, 1/2, eps1 + 1} (the three extremal energies).
QPolynomial third_order_q(const SeedSpec& spec);
// Q of the natural (2k+1)-order operators B_k^+ a^± B_k^-:
// prod_j (E-1-eps_j) * (E-1/2) * prod_j (E-eps_j). Coincides with the cubic
// for k = 1.
QPolynomial natural_q(const SeedSpec& spec);

struct PhaReport {
  // max_x |H(L^± psi) - (E ± 1) L^± psi| / scale over the eigenstate basket
  double commutator_dev = 0.0;
  // max_x |L^+ L^- psi - Q(E) psi| / scale over the basket
  double q_dev = 0.0;
  std::vector<std::pair<double, double>> p_values;  // (E, Q(E+1) - Q(E))
  double p_third_difference = 0.0;                  // vanishes for a quadratic P
  int basket_size = 0;
};

PhaReport pha_checks(const SeedSpec& spec, std::span<const double> grid,
                     const special::KummerConfig& cfg = {});

struct SpectrumDescriptor {
  double infinite_ladder_base = 0.5;
  std::vector<double> finite_ladder;  // eps1-k+1, ..., eps1
  std::optional<int> degenerate_overlap;
};

SpectrumDescriptor spectrum(const SeedSpec& spec);

struct DegenerateCheck {
  std::string name;
  double value = 0.0;      // measured deviation
  double threshold = 0.0;
  bool pass = false;
};

struct DegenerateReport {
  int j = 0;
  std::vector<DegenerateCheck> checks;
  bool all_pass = false;
};

// One-way ladder structure at eps1 = E_j (first-order transformation only).
// Throws NotDegenerateError when eps1 is not an oscillator level.
DegenerateReport degenerate_ladder_classification(const SeedSpec& spec,
                                                  std::span<const double> grid,
                                                  const special::KummerConfig& cfg = {});

}  // namespace pivsusy::ladder
