#include "pivsusy/painleve.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pivsusy::painleve {

namespace {

// log-derivative triple (l1, l2, l3) = ((ln f)', (ln f)'', (ln f)''') from a
// determinant jet [f, f', f'', f'''].
std::array<Complex, 3> log_derivs(const std::vector<Complex>& d) {
  const num::Jet l = num::jet_log_deriv(d);
  return {l[0], l[1], l[2]};
}

}  // namespace

susy::ExtremalFamily extremal_of(Family f) {
  switch (f) {
    case Family::One:
      return susy::ExtremalFamily::E1;
    case Family::Two:
      return susy::ExtremalFamily::E2;
    case Family::Three:
      return susy::ExtremalFamily::E3;
  }
  throw std::invalid_argument("extremal_of: unknown family");
}

PIVParams family_params(Family family, double epsilon1, int k) {
  if (k < 1) throw std::invalid_argument("family_params: k must be >= 1");
  PIVParams p;
  p.family = family;
  p.epsilon1 = epsilon1;
  p.k = k;
  const double kk = static_cast<double>(k);
  switch (family) {
    case Family::One:
      p.a = -epsilon1 + 2.0 * kk - 1.5;
      p.b = -2.0 * (epsilon1 + 0.5) * (epsilon1 + 0.5);
      break;
    case Family::Two:
      p.a = 2.0 * epsilon1 - kk;
      p.b = -2.0 * kk * kk;
      break;
    case Family::Three:
      p.a = -epsilon1 - kk - 1.5;
      p.b = -2.0 * (epsilon1 - kk + 0.5) * (epsilon1 - kk + 0.5);
      break;
  }
  return p;
}

std::pair<double, double> abe_params(double e1, double e2, double e3) {
  return {e2 + e3 - 2.0 * e1 - 1.0, -2.0 * (e2 - e3) * (e2 - e3)};
}

Complex piv_rhs(Complex g, Complex g1, double x, double a, double b) {
  return g1 * g1 / (2.0 * g) + 1.5 * g * g * g + 4.0 * x * g * g +
         2.0 * (x * x - a) * g + b / g;
}

std::vector<PIVSolutionSample> g_solution(const SeedSpec& spec, Family family,
                                          std::span<const double> grid,
                                          const SolveConfig& scfg,
                                          const special::KummerConfig& cfg) {
  const PIVParams params = family_params(family, spec.epsilon1, spec.k);
  const int order = spec.k + 3;  // bordered Wronskians need three derivatives

  struct PointData {
    Complex numer0{0.0, 0.0};
    std::array<Complex, 3> ln{};
    Complex den0{0.0, 0.0};
    std::array<Complex, 3> ld{};
  };
  std::vector<PointData> pts(grid.size());

  num::parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    const auto chain = seeds::build_seed_chain(spec, x, order, cfg);
    const auto den = susy::wronskian_det_jet(chain, 3);
    std::vector<Complex> numer;
    switch (family) {
      case Family::One: {
        const std::span<const seeds::ValueJet> head(chain.data(), chain.size() - 1);
        numer = susy::wronskian_det_jet(head, 3);
        break;
      }
      case Family::Two: {
        std::vector<seeds::ValueJet> bordered(chain.begin(), chain.end());
        bordered.push_back(seeds::gaussian_ground_jet(x, order));
        numer = susy::wronskian_det_jet(bordered, 3);
        break;
      }
      case Family::Three: {
        std::vector<seeds::ValueJet> bordered(chain.begin(), chain.end());
        bordered.push_back(seeds::apply_creation(chain.front()));
        numer = susy::wronskian_det_jet(bordered, 3);
        break;
      }
    }
    pts[i].den0 = den[0];
    pts[i].numer0 = numer[0];
    // Log-derivatives are deferred until the singular pre-checks pass.
    if (std::abs(den[0]) > 0.0) pts[i].ld = log_derivs(den);
    if (std::abs(numer[0]) > 0.0) pts[i].ln = log_derivs(numer);
  });

  // Transformation singularities (zeros of W) and extremal-state zeros both
  // break the log-derivative; check against grid-median scales.
  std::vector<Complex> dens(grid.size()), nums(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dens[i] = pts[i].den0;
    nums[i] = pts[i].numer0;
  }
  auto median = [](std::vector<Complex> v) {
    std::vector<double> m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::abs(v[i]);
    const std::size_t mid = m.size() / 2;
    std::nth_element(m.begin(), m.begin() + mid, m.end());
    return m[mid];
  };
  const double den_scale = median(dens);
  const double num_scale = median(nums);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!is_finite(dens[i]) || std::abs(dens[i]) < 1e-10 * den_scale)
      throw SingularPointError("g_solution: transformation singular near x = " +
                               std::to_string(grid[i]));
    if (!is_finite(nums[i]) || std::abs(nums[i]) < 1e-10 * num_scale)
      throw SingularExtremalStateError("g_solution: extremal state vanishes near x = " +
                                       std::to_string(grid[i]));
  }

  std::vector<PIVSolutionSample> out(grid.size());
  double gmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    PIVSolutionSample s;
    s.x = x;
    s.g = -x - pts[i].ln[0] + pts[i].ld[0];
    s.g1 = -1.0 - pts[i].ln[1] + pts[i].ld[1];
    s.g2 = -pts[i].ln[2] + pts[i].ld[2];
    ensure_finite(s.g, "g_solution: non-finite g");
    gmax = std::max(gmax, std::abs(s.g));
    out[i] = s;
  }
  if (gmax < scfg.degenerate_floor)
    throw DegenerateGError("g_solution: g vanishes identically on the grid");
  for (auto& s : out) {
    if (std::abs(s.g) < scfg.degenerate_floor) continue;  // residual stays 0, excluded
    s.residual = s.g2 - piv_rhs(s.g, s.g1, s.x, params.a, params.b);
  }
  return out;
}

double piv_residual(std::span<const PIVSolutionSample> samples, const PIVParams& params,
                    ResidualMode mode, const SolveConfig& scfg) {
  if (samples.empty()) return 0.0;
  double gmax = 0.0;
  for (const auto& s : samples) gmax = std::max(gmax, std::abs(s.g));
  if (gmax < scfg.degenerate_floor)
    throw DegenerateGError("piv_residual: g vanishes identically");
  const double exclude = scfg.exclude_rel * gmax;

  double worst = 0.0;
  if (mode == ResidualMode::ExactJets) {
    for (const auto& s : samples) {
      if (std::abs(s.g) < exclude) continue;
      worst = std::max(worst,
                       std::abs(s.g2 - piv_rhs(s.g, s.g1, s.x, params.a, params.b)));
    }
    return worst;
  }

  // Finite-difference mode: rebuild g', g'' from the g column alone.
  if (samples.size() < 5)
    throw std::invalid_argument("piv_residual: finite-difference mode needs >= 5 samples");
  num::GridFunction g;
  g.x0 = samples[0].x;
  g.h = samples[1].x - samples[0].x;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i)
    if (std::abs((samples[i + 1].x - samples[i].x) - g.h) > 1e-9 * std::max(1.0, std::abs(g.h)))
      throw std::invalid_argument("piv_residual: finite-difference mode needs a uniform grid");
  g.v.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) g.v[i] = samples[i].g;
  const num::GridFunction d1 = num::fd_derivative(g);
  const num::GridFunction d2 = num::fd_second_derivative(g);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    const std::size_t src = i + 2;
    const Complex gv = g.v[src];
    if (std::abs(gv) < exclude) continue;
    const double x = g.x(src);
    const Complex defect = d2.v[i] - piv_rhs(gv, d1.v[i], x, params.a, params.b);
    // Complex solutions carry movable poles just off the real axis; around
    // them every term is large and a fixed-step stencil cannot resolve the
    // cancellation in absolute terms. Judge the defect against the local
    // magnitude of the equation instead.
    const double ag = std::abs(gv);
    const double scale = 1.0 + std::abs(d2.v[i]) + std::norm(d1.v[i]) / (2.0 * ag) +
                         1.5 * ag * ag * ag + 4.0 * std::abs(x) * ag * ag +
                         2.0 * std::abs(x * x - params.a) * ag + std::abs(params.b) / ag;
    worst = std::max(worst, std::abs(defect) / scale);
  }
  return worst;
}

std::vector<ScanPoint> parameter_space_scan(double eps1_lo, double eps1_hi, double eps1_step,
                                            int k_lo, int k_hi) {
  if (!(eps1_step > 0.0) || !(eps1_hi >= eps1_lo))
    throw std::invalid_argument("parameter_space_scan: bad epsilon1 range");
  if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("parameter_space_scan: bad k range");
  const auto n_steps = static_cast<std::size_t>(std::floor((eps1_hi - eps1_lo) / eps1_step + 1e-9));
  std::vector<ScanPoint> out;
  out.reserve(3 * static_cast<std::size_t>(k_hi - k_lo + 1) * (n_steps + 1));
  for (int k = k_lo; k <= k_hi; ++k) {
    for (const Family fam : {Family::One, Family::Two, Family::Three}) {
      for (std::size_t i = 0; i <= n_steps; ++i) {
        const double eps1 = eps1_lo + static_cast<double>(i) * eps1_step;
        const PIVParams p = family_params(fam, eps1, k);
        ScanPoint pt;
        pt.family = fam;
        pt.epsilon1 = eps1;
        pt.k = k;
        pt.a = p.a;
        pt.b = p.b;
        pt.cls = (fam == Family::One && eps1 < 0.5) ? Classification::RealOrComplex
                                                    : Classification::ComplexOnly;
        out.push_back(pt);
      }
    }
  }
  return out;
}

}  // namespace pivsusy::painleve
