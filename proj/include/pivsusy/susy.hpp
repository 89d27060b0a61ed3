#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pivsusy/seeds.hpp"

namespace pivsusy::susy {

using seeds::SeedSpec;
using seeds::ValueJet;

// W and its first derivatives at one point. w3 is only meaningful when the
// input jets carried order >= k+2 (has_w3 reports that).
struct WronskianJet {
  double x = 0.0;
  Complex w{0.0, 0.0};
  Complex w1{0.0, 0.0};
  Complex w2{0.0, 0.0};
  Complex w3{0.0, 0.0};
  bool has_w3 = false;
};

// Derivatives 0..nderiv of the Wronskian determinant of `jets`, computed as
// signed sums of row-replacement determinants (never by numerical
// differentiation). The empty set yields [1, 0, ...].
std::vector<Complex> wronskian_det_jet(std::span<const ValueJet> jets, int nderiv);

WronskianJet wronskian_jet(std::span<const ValueJet> jets);

// V_k(x) = x^2/2 - (ln W)''.
Complex partner_potential(const SeedSpec& spec, double x,
                          const special::KummerConfig& cfg = {});

// [V_k, V_k', ..., V_k^(nderiv)] at x.
num::Jet partner_potential_jet(const SeedSpec& spec, double x, int nderiv,
                               const special::KummerConfig& cfg = {});

// B_k^+ target as the bordered-Wronskian ratio (-1/sqrt(2))^k W(u...,f)/W(u...).
// The empty seed list is the identity map.
Complex crum_apply(std::span<const ValueJet> seed_jets, const ValueJet& target);
Complex crum_map(const SeedSpec& spec, const ValueJet& target,
                 const special::KummerConfig& cfg = {});

enum class ExtremalFamily { E1, E2, E3 };

double extremal_energy(const SeedSpec& spec, ExtremalFamily family);

struct ExtremalState {
  ExtremalFamily family = ExtremalFamily::E1;
  double energy = 0.0;
  std::vector<std::pair<double, Complex>> samples;
};

ExtremalState extremal_state(const SeedSpec& spec, ExtremalFamily family,
                             std::span<const double> grid,
                             const special::KummerConfig& cfg = {});

// B_k^+ psi_n / sqrt((E_n - eps_1)...(E_n - eps_k)); throws
// DegenerateLevelError when E_n hits a factorization energy.
std::vector<std::pair<double, Complex>> mapped_eigenfunction(
    const SeedSpec& spec, int n, std::span<const double> grid,
    const special::KummerConfig& cfg = {});

// W(u_1,...,u_{j-1},u_{j+1},...,u_k) / W(u_1,...,u_k), j in 1..k.
std::vector<std::pair<double, Complex>> new_level_eigenfunction(
    const SeedSpec& spec, int j, std::span<const double> grid,
    const special::KummerConfig& cfg = {});

struct ScanConfig {
  double dip_rel = 1e-10;         // |W| dip threshold relative to the grid median
  double imag_floor_rel = 1e-10;  // |Im W| floor treated as identically real
};

// Approximate real zeros of W on the grid; empty certifies non-singularity on
// the scanned interval. Reports, never throws.
std::vector<double> singularity_scan(const SeedSpec& spec, std::span<const double> grid,
                                     const ScanConfig& scan = {},
                                     const special::KummerConfig& cfg = {});

// --- jets of transformed states, closed under psi'' = 2 (V_k - E) psi ---
// These jets live on the partner side: never re-extend them with
// ValueJet::extended (that applies the oscillator closure).

ValueJet partner_closed_jet(const SeedSpec& spec, double x, Complex psi, Complex dpsi,
                            double energy, int order,
                            const special::KummerConfig& cfg = {});

// Unnormalized B_k^+ target; target must be an oscillator eigenjet of order
// >= k+1 so the bordered Wronskian derivative exists.
ValueJet crum_image_jet(const SeedSpec& spec, const ValueJet& target, int order,
                        const special::KummerConfig& cfg = {});

ValueJet mapped_eigenjet(const SeedSpec& spec, int n, double x, int order,
                         const special::KummerConfig& cfg = {});
ValueJet new_level_eigenjet(const SeedSpec& spec, int j, double x, int order,
                            const special::KummerConfig& cfg = {});
ValueJet extremal_eigenjet(const SeedSpec& spec, ExtremalFamily family, double x, int order,
                           const special::KummerConfig& cfg = {});

}  // namespace pivsusy::susy
