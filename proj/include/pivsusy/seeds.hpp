#pragma once

#include <optional>
#include <vector>

#include "pivsusy/numerics.hpp"
#include "pivsusy/special_functions.hpp"

namespace pivsusy::seeds {

// Beyond sixth order the Wronskian conditioning degrades in double precision.
inline constexpr int kMaxTransformationOrder = 6;

// Configuration of one k-th order transformation of the oscillator. The free
// data are the factorization energy of the first seed and the complex
// combination coefficient lambda + i kappa; the nu parametrization of the real
// case is normalized into (lambda, kappa = 0) at construction.
struct SeedSpec {
  double epsilon1 = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  int k = 1;
  std::optional<double> nu;

  // Real non-singular regime flag (not enforced; complex transformations
  // deliberately leave it).
  bool real_regime() const { return kappa == 0.0 && epsilon1 < 0.5; }

  double epsilon_j(int j) const { return epsilon1 - static_cast<double>(j - 1); }

  static SeedSpec from_lambda_kappa(double epsilon1, double lambda, double kappa, int k);
  static SeedSpec from_nu(double epsilon1, double nu, int k);
};

// lambda = 2 nu Gamma((3-2eps)/4) / Gamma((1-2eps)/4); throws PoleError when
// either argument sits on a non-positive integer.
double nu_to_lambda(double nu, double epsilon);

// Function value and derivatives at one point, closed under the oscillator
// equation u'' = (x^2 - 2 eps) u: entries beyond the first two are always
// rebuilt from that recurrence.
struct ValueJet {
  double x = 0.0;
  double epsilon = 0.0;
  std::vector<Complex> values;

  int order() const { return static_cast<int>(values.size()) - 1; }
  Complex deriv(int m) const;
  // Recurrence extension to `target_order` (same point, same energy).
  ValueJet extended(int target_order) const;
};

// The seed u(x;eps) = e^{-x^2/2} [ 1F1((1-2eps)/4, 1/2; x^2)
//                                 + x (lambda + i kappa) 1F1((3-2eps)/4, 3/2; x^2) ].
// First derivative comes from the hypergeometric jets, the rest from the
// oscillator recurrence.
ValueJet seed_u_jet(double x, double epsilon, double lambda, double kappa, int order,
                    const special::KummerConfig& cfg = {});

// a^- = (x + d/dx)/sqrt(2): energy drops by one; derivatives rebuilt at the
// shifted energy.
ValueJet apply_annihilation(const ValueJet& jet);

// a^+ = (x - d/dx)/sqrt(2): energy raised by one.
ValueJet apply_creation(const ValueJet& jet);

// [u_1, ..., u_k] with u_j = (a^-)^{j-1} u_1 and energies eps1 - (j-1).
std::vector<ValueJet> build_seed_chain(const SeedSpec& spec, double x, int order,
                                       const special::KummerConfig& cfg = {});

// |alpha' + alpha^2 - 2(x^2/2 - eps)| for alpha = u'/u. Zero by construction
// for recurrence-closed jets; a live check against corrupted data.
double riccati_check(const ValueJet& jet);

// Normalized oscillator eigenfunction psi_n as a closed jet (energy n + 1/2).
ValueJet oscillator_eigenjet(int n, double x, int order);

// Unnormalized ground-state Gaussian e^{-x^2/2} as a closed jet.
ValueJet gaussian_ground_jet(double x, int order);

}  // namespace pivsusy::seeds
