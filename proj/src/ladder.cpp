#include "pivsusy/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pivsusy::ladder {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kAnnihilationThreshold = 1e-5;
constexpr double kProportionalityTolerance = 1e-4;

// (∓ f' + alpha f)/sqrt(2) on derivative lists; output is one order shorter.
num::Jet factor_apply(const num::Jet& alpha, const num::Jet& f, bool raising) {
  const num::Jet df = num::jet_shift(f);
  const num::Jet af = num::jet_mul(alpha, f);
  const std::size_t n = std::min(df.size(), af.size());
  num::Jet out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = kInvSqrt2 * ((raising ? -df[i] : df[i]) + af[i]);
  return out;
}

// Superpotential jets alpha_j = (ln W_j)' - (ln W_{j-1})' for the whole chain.
std::vector<num::Jet> chain_alpha_jets(const SeedSpec& spec, double x, int nderiv,
                                       const special::KummerConfig& cfg) {
  const auto chain = seeds::build_seed_chain(spec, x, spec.k + nderiv + 1, cfg);
  std::vector<num::Jet> alphas(static_cast<std::size_t>(spec.k));
  num::Jet prev(static_cast<std::size_t>(nderiv) + 1, Complex{0.0, 0.0});  // ln W_0 = 0
  for (int j = 1; j <= spec.k; ++j) {
    const std::span<const ValueJet> prefix(chain.data(), static_cast<std::size_t>(j));
    const auto det = susy::wronskian_det_jet(prefix, nderiv + 1);
    if (std::abs(det[0]) == 0.0)
      throw SingularPointError("ladder: intermediate Wronskian vanishes");
    const num::Jet logd = num::jet_log_deriv(det);
    num::Jet alpha(static_cast<std::size_t>(nderiv) + 1);
    for (std::size_t m = 0; m <= static_cast<std::size_t>(nderiv); ++m)
      alpha[m] = logd[m] - prev[m];
    alphas[static_cast<std::size_t>(j - 1)] = alpha;
    prev = logd;
  }
  return alphas;
}

num::Jet position_jet(double x, std::size_t len) {
  num::Jet a(len, Complex{0.0, 0.0});
  a[0] = Complex{x, 0.0};
  if (len > 1) a[1] = Complex{1.0, 0.0};
  return a;
}

// Per-point superpotential samples over a uniform grid, one row per stage.
std::vector<std::vector<Complex>> alpha_samples(const SeedSpec& spec,
                                                const num::GridFunction& dom,
                                                const special::KummerConfig& cfg) {
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(spec.k),
                                         std::vector<Complex>(dom.size()));
  num::parallel_for(dom.size(), [&](std::size_t i) {
    const auto alphas = chain_alpha_jets(spec, dom.x(i), 0, cfg);
    for (int j = 0; j < spec.k; ++j) rows[static_cast<std::size_t>(j)][i] = alphas[j][0];
  });
  return rows;
}

// First-order FD step (f' by 5-point stencil), trimming two points per side.
num::GridFunction factor_apply_fd(const num::GridFunction& f,
                                  const std::vector<Complex>& alpha_full,
                                  std::size_t offset, bool raising) {
  const num::GridFunction df = num::fd_derivative(f);
  num::GridFunction out = df;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Complex a = alpha_full[offset + i + 2];
    out.v[i] = kInvSqrt2 * ((raising ? -df.v[i] : df.v[i]) + a * f.v[i + 2]);
  }
  return out;
}

double max_abs_vec(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

PHATriple fhv_from_g(const painleve::PIVSolutionSample& s, const painleve::PIVParams& params,
                     double e1) {
  PHATriple t;
  t.x = s.x;
  const double x = s.x;
  t.f = x + s.g;
  t.h = -x * x + 0.5 * s.g1 - 0.5 * s.g * s.g - 2.0 * x * s.g + params.a;
  t.v = 0.5 * x * x - 0.5 * s.g1 + 0.5 * s.g * s.g + x * s.g + e1 - 0.5;
  return t;
}

Complex apply_first_order(const OperatorFactor& factor, const ValueJet& f_jet) {
  if (f_jet.order() < 1)
    throw InsufficientOrderError("apply_first_order: jet must carry a first derivative");
  const Complex a = factor.alpha(f_jet.x);
  const Complex df = f_jet.values[1];
  return kInvSqrt2 * ((factor.direction == Direction::Raise ? -df : df) +
                      a * f_jet.values[0]);
}

ValueJet apply_ladder_exact(const SeedSpec& spec, Direction dir, const ValueJet& state,
                            const special::KummerConfig& cfg) {
  const int consumed = 2 * spec.k + 1;
  if (state.order() < consumed + 1)
    throw InsufficientOrderError("apply_ladder_exact: state order must be >= 2k+2");
  const int nderiv = state.order() - 1;
  const auto alphas = chain_alpha_jets(spec, state.x, nderiv, cfg);

  num::Jet cur = state.values;
  for (int j = spec.k; j >= 1; --j)  // B_k^- = A_1^- ... A_k^-
    cur = factor_apply(alphas[static_cast<std::size_t>(j - 1)], cur, false);
  cur = factor_apply(position_jet(state.x, cur.size()), cur, dir == Direction::Raise);
  for (int j = 1; j <= spec.k; ++j)  // B_k^+ = A_k^+ ... A_1^+
    cur = factor_apply(alphas[static_cast<std::size_t>(j - 1)], cur, true);

  ValueJet out;
  out.x = state.x;
  out.epsilon = state.epsilon + (dir == Direction::Raise ? 1.0 : -1.0);
  out.values = std::move(cur);
  return out;
}

num::GridFunction apply_ladder(const SeedSpec& spec, Direction dir,
                               const num::GridFunction& state,
                               const special::KummerConfig& cfg) {
  const std::size_t trim_total = 4 * static_cast<std::size_t>(2 * spec.k + 1);
  if (state.size() < trim_total + 5)
    throw InsufficientOrderError("apply_ladder: grid too small for the stencil chain");
  const auto alphas = alpha_samples(spec, state, cfg);

  num::GridFunction cur = state;
  std::size_t offset = 0;
  for (int j = spec.k; j >= 1; --j) {
    cur = factor_apply_fd(cur, alphas[static_cast<std::size_t>(j - 1)], offset, false);
    offset += 2;
  }
  {
    const num::GridFunction df = num::fd_derivative(cur);
    num::GridFunction next = df;
    for (std::size_t i = 0; i < next.size(); ++i) {
      const double x = next.x(i);
      next.v[i] = kInvSqrt2 *
                  ((dir == Direction::Raise ? -df.v[i] : df.v[i]) + x * cur.v[i + 2]);
    }
    cur = next;
    offset += 2;
  }
  for (int j = 1; j <= spec.k; ++j) {
    cur = factor_apply_fd(cur, alphas[static_cast<std::size_t>(j - 1)], offset, true);
    offset += 2;
  }
  return cur;
}

num::GridFunction apply_hamiltonian_fd(const SeedSpec& spec, const num::GridFunction& state,
                                       const special::KummerConfig& cfg) {
  const num::GridFunction d2 = num::fd_second_derivative(state);
  num::GridFunction out = d2;
  std::vector<Complex> v(out.size());
  num::parallel_for(out.size(), [&](std::size_t i) {
    v[i] = susy::partner_potential(spec, out.x(i), cfg);
  });
  for (std::size_t i = 0; i < out.size(); ++i)
    out.v[i] = -0.5 * d2.v[i] + v[i] * state.v[i + 2];
  return out;
}

double QPolynomial::eval(double e) const {
  double q = 1.0;
  for (const double r : roots) q *= (e - r);
  return q;
}

QPolynomial third_order_q(const SeedSpec& spec) {
  return {{spec.epsilon1 - static_cast<double>(spec.k - 1), 0.5, spec.epsilon1 + 1.0}};
}

QPolynomial natural_q(const SeedSpec& spec) {
  QPolynomial q;
  for (int j = 1; j <= spec.k; ++j) q.roots.push_back(spec.epsilon_j(j) + 1.0);
  q.roots.push_back(0.5);
  for (int j = 1; j <= spec.k; ++j) q.roots.push_back(spec.epsilon_j(j));
  std::sort(q.roots.begin(), q.roots.end());
  return q;
}

PhaReport pha_checks(const SeedSpec& spec, std::span<const double> grid,
                     const special::KummerConfig& cfg) {
  if (grid.size() < 16) throw std::invalid_argument("pha_checks: grid too small");
  PhaReport report;
  const QPolynomial q = natural_q(spec);

  // Eigenstate basket: a few mapped levels, skipping degenerate overlaps.
  std::vector<int> levels;
  for (int n = 0; n <= 3; ++n) {
    bool degenerate = false;
    for (int j = 1; j <= spec.k; ++j)
      if (std::abs((n + 0.5) - spec.epsilon_j(j)) < 1e-9) degenerate = true;
    if (!degenerate) levels.push_back(n);
  }

  const int state_order = 2 * (2 * spec.k + 1) + 2;
  double comm_dev = 0.0, q_dev = 0.0;
  int basket = 0;

  for (const int n : levels) {
    const double energy = n + 0.5;
    std::vector<Complex> psi(grid.size());
    std::vector<Complex> lower(grid.size()), raise(grid.size()), qimg(grid.size());
    num::parallel_for(grid.size(), [&](std::size_t i) {
      const ValueJet jet = susy::mapped_eigenjet(spec, n, grid[i], state_order, cfg);
      psi[i] = jet.values[0];
      const ValueJet down = apply_ladder_exact(spec, Direction::Lower, jet, cfg);
      const ValueJet up = apply_ladder_exact(spec, Direction::Raise, jet, cfg);
      lower[i] = down.values[0];
      raise[i] = up.values[0];
      qimg[i] = apply_ladder_exact(spec, Direction::Raise, down, cfg).values[0];
    });
    const double psi_scale = max_abs_vec(psi);

    // On eigenstates [H, L^±] = ±L^± reads H(L^± psi) = (E ± 1) L^± psi.
    const double h = grid[1] - grid[0];
    for (const auto dir : {Direction::Lower, Direction::Raise}) {
      const auto& img = dir == Direction::Lower ? lower : raise;
      num::GridFunction f;
      f.x0 = grid[0];
      f.h = h;
      f.v = img;
      const num::GridFunction himg = apply_hamiltonian_fd(spec, f, cfg);
      const double eshift = energy + (dir == Direction::Raise ? 1.0 : -1.0);
      const double scale = std::max(max_abs_vec(img), psi_scale);
      double dev = 0.0;
      for (std::size_t i = 0; i < himg.size(); ++i)
        dev = std::max(dev, std::abs(himg.v[i] - eshift * f.v[i + 2]));
      comm_dev = std::max(comm_dev, dev / scale);
    }

    // L^+ L^- psi = Q(E) psi.
    const double qe = q.eval(energy);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      dev = std::max(dev, std::abs(qimg[i] - qe * psi[i]));
    q_dev = std::max(q_dev, dev / (std::max(std::abs(qe), 1.0) * psi_scale));
    ++basket;
  }

  report.commutator_dev = comm_dev;
  report.q_dev = q_dev;
  report.basket_size = basket;

  for (int n = 0; n <= 6; ++n) {
    const double e = n + 0.5;
    report.p_values.push_back({e, q.eval(e + 1.0) - q.eval(e)});
  }
  if (spec.k == 1) {
    // third difference of a quadratic vanishes
    double worst = 0.0;
    for (std::size_t i = 0; i + 3 < report.p_values.size(); ++i) {
      const double d3 = report.p_values[i + 3].second - 3.0 * report.p_values[i + 2].second +
                        3.0 * report.p_values[i + 1].second - report.p_values[i].second;
      worst = std::max(worst, std::abs(d3));
    }
    report.p_third_difference = worst;
  } else {
    report.p_third_difference = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

SpectrumDescriptor spectrum(const SeedSpec& spec) {
  SpectrumDescriptor d;
  d.infinite_ladder_base = 0.5;
  for (int j = spec.k; j >= 1; --j) d.finite_ladder.push_back(spec.epsilon_j(j));
  const double jf = spec.epsilon1 - 0.5;
  const int j = static_cast<int>(std::lround(jf));
  if (j >= 0 && std::abs(jf - j) < 1e-9) d.degenerate_overlap = j;
  return d;
}

DegenerateReport degenerate_ladder_classification(const SeedSpec& spec,
                                                  std::span<const double> grid,
                                                  const special::KummerConfig& cfg) {
  if (spec.k != 1)
    throw std::invalid_argument("degenerate_ladder_classification: first-order case only");
  const double jf = spec.epsilon1 - 0.5;
  const int j = static_cast<int>(std::lround(jf));
  if (j < 0 || std::abs(jf - j) > 1e-9)
    throw NotDegenerateError(
        "degenerate_ladder_classification: eps1 is not an oscillator level");

  DegenerateReport report;
  report.j = j;

  const int state_order = 5;
  const int lmax = j + 2;

  // phi_l = unnormalized A_1^+ psi_l with enough derivatives for one ladder
  // application.
  const std::size_t npts = grid.size();
  std::vector<std::vector<Complex>> phi(static_cast<std::size_t>(lmax) + 1),
      lowerv(static_cast<std::size_t>(lmax) + 1), raisev(static_cast<std::size_t>(lmax) + 1);
  std::vector<Complex> inv_u1(npts);
  for (auto& v : phi) v.resize(npts);
  for (auto& v : lowerv) v.resize(npts);
  for (auto& v : raisev) v.resize(npts);

  num::parallel_for(npts, [&](std::size_t i) {
    const double x = grid[i];
    inv_u1[i] = susy::new_level_eigenjet(spec, 1, x, 1, cfg).values[0];
    for (int l = 0; l <= lmax; ++l) {
      const ValueJet target = seeds::oscillator_eigenjet(l, x, spec.k + 1);
      const ValueJet img = susy::crum_image_jet(spec, target, state_order, cfg);
      phi[static_cast<std::size_t>(l)][i] = img.values[0];
      lowerv[static_cast<std::size_t>(l)][i] =
          apply_ladder_exact(spec, Direction::Lower, img, cfg).values[0];
      raisev[static_cast<std::size_t>(l)][i] =
          apply_ladder_exact(spec, Direction::Raise, img, cfg).values[0];
    }
  });

  auto annihilation = [&](const std::string& name, const std::vector<Complex>& out,
                          const std::vector<Complex>& pre) {
    const double value = max_abs_vec(out) / std::max(max_abs_vec(pre), 1e-300);
    report.checks.push_back(
        {name, value, kAnnihilationThreshold, value < kAnnihilationThreshold});
  };
  auto proportional = [&](const std::string& name, const std::vector<Complex>& out,
                          const std::vector<Complex>& target, bool require_nonzero) {
    const double tmax = max_abs_vec(target);
    const double omax = max_abs_vec(out);
    if (require_nonzero && omax < 1e-8 * tmax) {
      report.checks.push_back({name + "_nonzero", omax / std::max(tmax, 1e-300), 1e-8, false});
      return;
    }
    Complex mean{0.0, 0.0};
    int count = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(target[i]) < 1e-6 * tmax) continue;
      mean += out[i] / target[i];
      ++count;
    }
    if (count == 0) {
      report.checks.push_back({name, 1.0, kProportionalityTolerance, false});
      return;
    }
    mean /= static_cast<double>(count);
    double dev = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(target[i]) < 1e-6 * tmax) continue;
      dev = std::max(dev, std::abs(out[i] / target[i] - mean));
    }
    const double value = dev / std::max(std::abs(mean), 1e-300);
    report.checks.push_back(
        {name, value, kProportionalityTolerance, value < kProportionalityTolerance});
  };

  for (int l = 1; l <= lmax; ++l) {
    if (l == j) continue;
    const auto& target =
        (l - 1 == j) ? inv_u1 : phi[static_cast<std::size_t>(l - 1)];
    proportional("lower_maps_" + std::to_string(l) + "_to_" + std::to_string(l - 1),
                 lowerv[static_cast<std::size_t>(l)], target, l - 1 == j);
  }
  annihilation("lower_annihilates_j", lowerv[static_cast<std::size_t>(j)],
               phi[static_cast<std::size_t>(j)]);
  if (j != 0) annihilation("lower_annihilates_0", lowerv[0], phi[0]);
  annihilation("raise_annihilates_j", raisev[static_cast<std::size_t>(j)],
               phi[static_cast<std::size_t>(j)]);
  proportional("one_way_down_j_plus_1", lowerv[static_cast<std::size_t>(j + 1)], inv_u1, true);
  if (j >= 1)
    proportional("one_way_up_j_minus_1", raisev[static_cast<std::size_t>(j - 1)], inv_u1, true);

  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace pivsusy::ladder
