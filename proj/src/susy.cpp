#include "pivsusy/susy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace pivsusy::susy {

namespace {

void check_positions(std::span<const ValueJet> jets) {
  for (std::size_t i = 1; i < jets.size(); ++i)
    if (jets[i].x != jets[0].x)
      throw PositionMismatchError("wronskian: jets sampled at different points");
}

int min_order(std::span<const ValueJet> jets) {
  int m = 1 << 20;
  for (const auto& j : jets) m = std::min(m, j.order());
  return m;
}

Complex det_of_rows(std::span<const ValueJet> jets, const std::vector<int>& rows) {
  const int m = static_cast<int>(jets.size());
  std::vector<Complex> mat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mat[i * m + j] = jets[j].deriv(rows[i]);
  return num::det_inplace(mat, m);
}

struct SetTerm {
  std::vector<int> rows;  // strictly increasing derivative orders
  double coef;
};

// d/dx det = sum over rows of the determinant with that row bumped by one;
// bumping into an existing row kills the term.
std::vector<SetTerm> differentiate_sets(const std::vector<SetTerm>& in, int m) {
  std::map<std::vector<int>, double> next;
  for (const auto& t : in) {
    for (int i = 0; i < m; ++i) {
      if (i + 1 < m && t.rows[i + 1] == t.rows[i] + 1) continue;
      std::vector<int> rows = t.rows;
      rows[i] += 1;
      next[rows] += t.coef;
    }
  }
  std::vector<SetTerm> out;
  out.reserve(next.size());
  for (auto& [rows, coef] : next)
    if (coef != 0.0) out.push_back({rows, coef});
  return out;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex crum_prefactor(int k) {
  Complex c{1.0, 0.0};
  for (int i = 0; i < k; ++i) c *= -kInvSqrt2;
  return c;
}

double median_abs(const std::vector<Complex>& vs) {
  std::vector<double> mags(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) mags[i] = std::abs(vs[i]);
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + mid, mags.end());
  return mags[mid];
}

}  // namespace

std::vector<Complex> wronskian_det_jet(std::span<const ValueJet> jets, int nderiv) {
  std::vector<Complex> out(static_cast<std::size_t>(nderiv) + 1, Complex{0.0, 0.0});
  const int m = static_cast<int>(jets.size());
  if (m == 0) {
    out[0] = Complex{1.0, 0.0};
    return out;
  }
  check_positions(jets);
  const int max_row = m - 1 + nderiv;
  if (min_order(jets) < max_row)
    throw OrderMismatchError("wronskian_det_jet: jets carry too few derivatives");

  std::vector<SetTerm> level(1);
  level[0].coef = 1.0;
  level[0].rows.resize(static_cast<std::size_t>(m));
  std::iota(level[0].rows.begin(), level[0].rows.end(), 0);

  for (int d = 0; d <= nderiv; ++d) {
    Complex acc{0.0, 0.0};
    for (const auto& t : level) acc += t.coef * det_of_rows(jets, t.rows);
    out[static_cast<std::size_t>(d)] = acc;
    if (d < nderiv) level = differentiate_sets(level, m);
  }
  return out;
}

WronskianJet wronskian_jet(std::span<const ValueJet> jets) {
  if (jets.empty()) throw OrderMismatchError("wronskian_jet: need at least one jet");
  const int k = static_cast<int>(jets.size());
  if (min_order(jets) < k + 1)
    throw OrderMismatchError("wronskian_jet: jets must carry order >= k+1");
  const bool with_w3 = min_order(jets) >= k + 2;
  const auto d = wronskian_det_jet(jets, with_w3 ? 3 : 2);
  WronskianJet out;
  out.x = jets[0].x;
  out.w = d[0];
  out.w1 = d[1];
  out.w2 = d[2];
  if (with_w3) {
    out.w3 = d[3];
    out.has_w3 = true;
  }
  return out;
}

Complex partner_potential(const SeedSpec& spec, double x, const special::KummerConfig& cfg) {
  const auto chain = seeds::build_seed_chain(spec, x, spec.k + 1, cfg);
  const auto d = wronskian_det_jet(chain, 2);
  if (std::abs(d[0]) == 0.0)
    throw SingularPointError("partner_potential: Wronskian vanishes at x = " +
                             std::to_string(x));
  const Complex v = 0.5 * x * x - (d[2] * d[0] - d[1] * d[1]) / (d[0] * d[0]);
  ensure_finite(v, "partner_potential: non-finite value");
  return v;
}

num::Jet partner_potential_jet(const SeedSpec& spec, double x, int nderiv,
                               const special::KummerConfig& cfg) {
  const int det_derivs = nderiv + 2;
  const auto chain = seeds::build_seed_chain(spec, x, spec.k - 1 + det_derivs, cfg);
  const auto d = wronskian_det_jet(chain, det_derivs);
  if (std::abs(d[0]) == 0.0)
    throw SingularPointError("partner_potential_jet: Wronskian vanishes");
  const num::Jet logd = num::jet_log_deriv(d);  // logd[m] = (ln W)^(m+1)
  num::Jet v(static_cast<std::size_t>(nderiv) + 1, Complex{0.0, 0.0});
  for (int n = 0; n <= nderiv; ++n) {
    Complex poly{0.0, 0.0};
    if (n == 0) poly = Complex{0.5 * x * x, 0.0};
    if (n == 1) poly = Complex{x, 0.0};
    if (n == 2) poly = Complex{1.0, 0.0};
    v[static_cast<std::size_t>(n)] = poly - logd[static_cast<std::size_t>(n) + 1];
  }
  return v;
}

Complex crum_apply(std::span<const ValueJet> seed_jets, const ValueJet& target) {
  const int k = static_cast<int>(seed_jets.size());
  if (k == 0) return target.values.empty() ? Complex{0.0, 0.0} : target.values[0];
  for (const auto& j : seed_jets)
    if (j.x != target.x)
      throw PositionMismatchError("crum_apply: target sampled at a different point");
  std::vector<ValueJet> bordered(seed_jets.begin(), seed_jets.end());
  bordered.push_back(target);
  const Complex den = wronskian_det_jet(seed_jets, 0)[0];
  if (std::abs(den) == 0.0)
    throw SingularPointError("crum_apply: seed Wronskian vanishes");
  const Complex numer = wronskian_det_jet(bordered, 0)[0];
  return crum_prefactor(k) * numer / den;
}

Complex crum_map(const SeedSpec& spec, const ValueJet& target, const special::KummerConfig& cfg) {
  const auto chain = seeds::build_seed_chain(spec, target.x, std::max(spec.k, 1), cfg);
  return crum_apply(chain, target);
}

double extremal_energy(const SeedSpec& spec, ExtremalFamily family) {
  switch (family) {
    case ExtremalFamily::E1:
      return spec.epsilon1 - static_cast<double>(spec.k - 1);
    case ExtremalFamily::E2:
      return 0.5;
    case ExtremalFamily::E3:
      return spec.epsilon1 + 1.0;
  }
  return 0.0;
}

ExtremalState extremal_state(const SeedSpec& spec, ExtremalFamily family,
                             std::span<const double> grid, const special::KummerConfig& cfg) {
  ExtremalState out;
  out.family = family;
  out.energy = extremal_energy(spec, family);
  out.samples.resize(grid.size());

  const int order = spec.k + 1;
  std::vector<Complex> den(grid.size());
  std::vector<Complex> numer(grid.size());
  num::parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    const auto chain = seeds::build_seed_chain(spec, x, order, cfg);
    den[i] = wronskian_det_jet(chain, 0)[0];
    switch (family) {
      case ExtremalFamily::E1: {
        const std::span<const ValueJet> head(chain.data(), chain.size() - 1);
        numer[i] = wronskian_det_jet(head, 0)[0];
        break;
      }
      case ExtremalFamily::E2: {
        std::vector<ValueJet> bordered(chain.begin(), chain.end());
        bordered.push_back(seeds::gaussian_ground_jet(x, order));
        numer[i] = crum_prefactor(spec.k) * wronskian_det_jet(bordered, 0)[0];
        break;
      }
      case ExtremalFamily::E3: {
        std::vector<ValueJet> bordered(chain.begin(), chain.end());
        bordered.push_back(seeds::apply_creation(chain.front()));
        numer[i] = crum_prefactor(spec.k) * wronskian_det_jet(bordered, 0)[0];
        break;
      }
    }
  });
  const double scale = median_abs(den);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!is_finite(den[i]) || std::abs(den[i]) < 1e-10 * scale)
      throw SingularPointError("extremal_state: transformation singular near x = " +
                               std::to_string(grid[i]));
    out.samples[i] = {grid[i], numer[i] / den[i]};
  }
  return out;
}

std::vector<std::pair<double, Complex>> mapped_eigenfunction(const SeedSpec& spec, int n,
                                                             std::span<const double> grid,
                                                             const special::KummerConfig& cfg) {
  if (n < 0) throw std::invalid_argument("mapped_eigenfunction: n must be >= 0");
  const double energy = static_cast<double>(n) + 0.5;
  Complex denom_sq{1.0, 0.0};
  for (int j = 1; j <= spec.k; ++j) {
    const double gap = energy - spec.epsilon_j(j);
    if (std::abs(gap) < 1e-9)
      throw DegenerateLevelError("mapped_eigenfunction: E_n equals a factorization energy");
    denom_sq *= gap;
  }
  const Complex norm = 1.0 / std::sqrt(denom_sq);

  std::vector<std::pair<double, Complex>> out(grid.size());
  const int order = spec.k + 1;
  std::vector<Complex> den(grid.size());
  num::parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    const auto chain = seeds::build_seed_chain(spec, x, order, cfg);
    den[i] = wronskian_det_jet(chain, 0)[0];
    std::vector<ValueJet> bordered(chain.begin(), chain.end());
    bordered.push_back(seeds::oscillator_eigenjet(n, x, order));
    out[i] = {x, norm * crum_prefactor(spec.k) * wronskian_det_jet(bordered, 0)[0]};
  });
  const double scale = median_abs(den);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!is_finite(den[i]) || std::abs(den[i]) < 1e-10 * scale)
      throw SingularPointError("mapped_eigenfunction: transformation singular near x = " +
                               std::to_string(grid[i]));
    out[i].second /= den[i];
  }
  return out;
}

std::vector<std::pair<double, Complex>> new_level_eigenfunction(const SeedSpec& spec, int j,
                                                                std::span<const double> grid,
                                                                const special::KummerConfig& cfg) {
  if (j < 1 || j > spec.k)
    throw std::invalid_argument("new_level_eigenfunction: j must lie in 1..k");
  std::vector<std::pair<double, Complex>> out(grid.size());
  const int order = spec.k + 1;
  std::vector<Complex> den(grid.size());
  num::parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    const auto chain = seeds::build_seed_chain(spec, x, order, cfg);
    den[i] = wronskian_det_jet(chain, 0)[0];
    std::vector<ValueJet> reduced;
    reduced.reserve(chain.size() - 1);
    for (int idx = 0; idx < spec.k; ++idx)
      if (idx != j - 1) reduced.push_back(chain[static_cast<std::size_t>(idx)]);
    out[i] = {x, wronskian_det_jet(reduced, 0)[0]};
  });
  const double scale = median_abs(den);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!is_finite(den[i]) || std::abs(den[i]) < 1e-10 * scale)
      throw SingularPointError("new_level_eigenfunction: transformation singular near x = " +
                               std::to_string(grid[i]));
    out[i].second /= den[i];
  }
  return out;
}

std::vector<double> singularity_scan(const SeedSpec& spec, std::span<const double> grid,
                                     const ScanConfig& scan, const special::KummerConfig& cfg) {
  std::vector<Complex> w(grid.size());
  num::parallel_for(grid.size(), [&](std::size_t i) {
    const auto chain = seeds::build_seed_chain(spec, grid[i], std::max(spec.k - 1, 1), cfg);
    w[i] = wronskian_det_jet(chain, 0)[0];
  });
  const double scale = median_abs(w);
  std::vector<double> hits;
  auto push = [&](double x) {
    if (hits.empty() || std::abs(hits.back() - x) > 1e-12) hits.push_back(x);
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!is_finite(w[i]) || std::abs(w[i]) < scan.dip_rel * scale) {
      push(grid[i]);
      continue;
    }
    if (i + 1 >= grid.size()) continue;
    const double re0 = w[i].real(), re1 = w[i + 1].real();
    const double im0 = w[i].imag(), im1 = w[i + 1].imag();
    const bool re_cross = re0 * re1 < 0.0;
    const bool im_cross = im0 * im1 < 0.0;
    const bool im_flat = std::max(std::abs(im0), std::abs(im1)) < scan.imag_floor_rel * scale;
    if (re_cross && (im_cross || im_flat)) {
      // Linear interpolation on the real part locates the crossing.
      const double t = re0 / (re0 - re1);
      push(grid[i] + t * (grid[i + 1] - grid[i]));
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

ValueJet partner_closed_jet(const SeedSpec& spec, double x, Complex psi, Complex dpsi,
                            double energy, int order, const special::KummerConfig& cfg) {
  ValueJet jet;
  jet.x = x;
  jet.epsilon = energy;
  jet.values.assign(static_cast<std::size_t>(std::max(order, 1)) + 1, Complex{0.0, 0.0});
  jet.values[0] = psi;
  jet.values[1] = dpsi;
  if (order < 2) return jet;
  const num::Jet v = partner_potential_jet(spec, x, order - 2, cfg);
  for (int m = 0; m + 2 <= order; ++m) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= m; ++i) {
      Complex vi = v[static_cast<std::size_t>(i)];
      if (i == 0) vi -= energy;
      acc += num::binom(m, i) * vi * jet.values[static_cast<std::size_t>(m - i)];
    }
    jet.values[static_cast<std::size_t>(m + 2)] = 2.0 * acc;
  }
  return jet;
}

ValueJet crum_image_jet(const SeedSpec& spec, const ValueJet& target, int order,
                        const special::KummerConfig& cfg) {
  const int chain_order = spec.k + 1;
  if (target.order() < chain_order)
    throw OrderMismatchError("crum_image_jet: target needs order >= k+1");
  const auto chain = seeds::build_seed_chain(spec, target.x, chain_order, cfg);
  const auto den = wronskian_det_jet(chain, 1);
  if (std::abs(den[0]) == 0.0)
    throw SingularPointError("crum_image_jet: seed Wronskian vanishes");
  std::vector<ValueJet> bordered(chain.begin(), chain.end());
  bordered.push_back(target);
  const auto numer = wronskian_det_jet(bordered, 1);
  const Complex c = crum_prefactor(spec.k);
  const Complex psi = c * numer[0] / den[0];
  const Complex dpsi = c * (numer[1] * den[0] - numer[0] * den[1]) / (den[0] * den[0]);
  return partner_closed_jet(spec, target.x, psi, dpsi, target.epsilon, order, cfg);
}

ValueJet mapped_eigenjet(const SeedSpec& spec, int n, double x, int order,
                         const special::KummerConfig& cfg) {
  const double energy = static_cast<double>(n) + 0.5;
  Complex denom_sq{1.0, 0.0};
  for (int j = 1; j <= spec.k; ++j) {
    const double gap = energy - spec.epsilon_j(j);
    if (std::abs(gap) < 1e-9)
      throw DegenerateLevelError("mapped_eigenjet: E_n equals a factorization energy");
    denom_sq *= gap;
  }
  const Complex norm = 1.0 / std::sqrt(denom_sq);
  ValueJet jet = crum_image_jet(spec, seeds::oscillator_eigenjet(n, x, spec.k + 1), order, cfg);
  for (auto& v : jet.values) v *= norm;
  return jet;
}

ValueJet new_level_eigenjet(const SeedSpec& spec, int j, double x, int order,
                            const special::KummerConfig& cfg) {
  if (j < 1 || j > spec.k) throw std::invalid_argument("new_level_eigenjet: j must lie in 1..k");
  const auto chain = seeds::build_seed_chain(spec, x, spec.k + 1, cfg);
  const auto den = wronskian_det_jet(chain, 1);
  if (std::abs(den[0]) == 0.0)
    throw SingularPointError("new_level_eigenjet: seed Wronskian vanishes");
  std::vector<ValueJet> reduced;
  reduced.reserve(chain.size() - 1);
  for (int idx = 0; idx < spec.k; ++idx)
    if (idx != j - 1) reduced.push_back(chain[static_cast<std::size_t>(idx)]);
  const auto numer = wronskian_det_jet(reduced, 1);
  const Complex psi = numer[0] / den[0];
  const Complex dpsi = (numer[1] * den[0] - numer[0] * den[1]) / (den[0] * den[0]);
  return partner_closed_jet(spec, x, psi, dpsi, spec.epsilon_j(j), order, cfg);
}

ValueJet extremal_eigenjet(const SeedSpec& spec, ExtremalFamily family, double x, int order,
                           const special::KummerConfig& cfg) {
  switch (family) {
    case ExtremalFamily::E1:
      return new_level_eigenjet(spec, spec.k, x, order, cfg);
    case ExtremalFamily::E2:
      return crum_image_jet(spec, seeds::gaussian_ground_jet(x, spec.k + 1), order, cfg);
    case ExtremalFamily::E3: {
      const auto u1 = seeds::seed_u_jet(x, spec.epsilon1, spec.lambda, spec.kappa,
                                        spec.k + 2, cfg);
      return crum_image_jet(spec, seeds::apply_creation(u1), order, cfg);
    }
  }
  throw std::invalid_argument("extremal_eigenjet: unknown family");
}

}  // namespace pivsusy::susy
