#include "pivsusy/seeds.hpp"

#include <cmath>

namespace pivsusy::seeds {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// u^{(m+2)} = (x^2 - 2 eps) u^{(m)} + 2 m x u^{(m-1)} + m (m-1) u^{(m-2)}.
void close_under_oscillator(std::vector<Complex>& v, double x, double eps, int target_order) {
  const double q = x * x - 2.0 * eps;
  v.resize(static_cast<std::size_t>(target_order) + 1, Complex{0.0, 0.0});
  for (int m = 0; m + 2 <= target_order; ++m) {
    Complex acc = q * v[m];
    if (m >= 1) acc += 2.0 * m * x * v[m - 1];
    if (m >= 2) acc += static_cast<double>(m) * static_cast<double>(m - 1) * v[m - 2];
    v[m + 2] = acc;
  }
}

}  // namespace

SeedSpec SeedSpec::from_lambda_kappa(double epsilon1, double lambda, double kappa, int k) {
  if (k < 1 || k > kMaxTransformationOrder)
    throw std::invalid_argument("SeedSpec: k must lie in 1..6");
  SeedSpec s;
  s.epsilon1 = epsilon1;
  s.lambda = lambda;
  s.kappa = kappa;
  s.k = k;
  return s;
}

SeedSpec SeedSpec::from_nu(double epsilon1, double nu, int k) {
  if (k < 1 || k > kMaxTransformationOrder)
    throw std::invalid_argument("SeedSpec: k must lie in 1..6");
  SeedSpec s;
  s.epsilon1 = epsilon1;
  s.lambda = nu_to_lambda(nu, epsilon1);
  s.kappa = 0.0;
  s.k = k;
  s.nu = nu;
  return s;
}

double nu_to_lambda(double nu, double epsilon) {
  const Complex num = special::gamma_fn(Complex{(3.0 - 2.0 * epsilon) / 4.0, 0.0});
  const Complex den = special::gamma_fn(Complex{(1.0 - 2.0 * epsilon) / 4.0, 0.0});
  return 2.0 * nu * (num / den).real();
}

Complex ValueJet::deriv(int m) const {
  if (m < 0 || m > order())
    throw InsufficientOrderError("ValueJet: requested derivative beyond stored order");
  return values[static_cast<std::size_t>(m)];
}

ValueJet ValueJet::extended(int target_order) const {
  if (order() < 1) throw InsufficientOrderError("ValueJet: need value and first derivative");
  if (target_order <= order()) return *this;
  ValueJet out = *this;
  close_under_oscillator(out.values, x, epsilon, target_order);
  return out;
}

ValueJet seed_u_jet(double x, double epsilon, double lambda, double kappa, int order,
                    const special::KummerConfig& cfg) {
  if (order < 1) throw InsufficientOrderError("seed_u_jet: order must be >= 1");
  const Complex c{lambda, kappa};
  const double z = x * x;
  const Complex a1{(1.0 - 2.0 * epsilon) / 4.0, 0.0};
  const Complex a2{(3.0 - 2.0 * epsilon) / 4.0, 0.0};
  const auto f1 = special::kummer_1f1_jet({a1, Complex{0.5, 0.0}, Complex{z, 0.0}}, 1, cfg);
  const auto f2 = special::kummer_1f1_jet({a2, Complex{1.5, 0.0}, Complex{z, 0.0}}, 1, cfg);
  const double gauss = std::exp(-0.5 * z);

  ValueJet jet;
  jet.x = x;
  jet.epsilon = epsilon;
  jet.values.resize(2);
  const Complex bracket = f1[0] + c * x * f2[0];
  jet.values[0] = gauss * bracket;
  jet.values[1] =
      gauss * (-x * bracket + 2.0 * x * f1[1] + c * f2[0] + 2.0 * c * x * x * f2[1]);
  ensure_finite(jet.values[0], "seed_u_jet: non-finite value");
  ensure_finite(jet.values[1], "seed_u_jet: non-finite derivative");
  close_under_oscillator(jet.values, x, epsilon, order);
  return jet;
}

ValueJet apply_annihilation(const ValueJet& jet) {
  if (jet.order() < 1) throw InsufficientOrderError("apply_annihilation: order must be >= 1");
  const ValueJet src = jet.extended(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ValueJet out;
  out.x = jet.x;
  out.epsilon = jet.epsilon - 1.0;
  out.values.resize(2);
  out.values[0] = inv_sqrt2 * (src.x * src.values[0] + src.values[1]);
  out.values[1] = inv_sqrt2 * (src.values[0] + src.x * src.values[1] + src.values[2]);
  close_under_oscillator(out.values, out.x, out.epsilon, jet.order());
  return out;
}

ValueJet apply_creation(const ValueJet& jet) {
  if (jet.order() < 1) throw InsufficientOrderError("apply_creation: order must be >= 1");
  const ValueJet src = jet.extended(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ValueJet out;
  out.x = jet.x;
  out.epsilon = jet.epsilon + 1.0;
  out.values.resize(2);
  out.values[0] = inv_sqrt2 * (src.x * src.values[0] - src.values[1]);
  out.values[1] = inv_sqrt2 * (src.values[0] + src.x * src.values[1] - src.values[2]);
  close_under_oscillator(out.values, out.x, out.epsilon, jet.order());
  return out;
}

std::vector<ValueJet> build_seed_chain(const SeedSpec& spec, double x, int order,
                                       const special::KummerConfig& cfg) {
  std::vector<ValueJet> chain;
  chain.reserve(static_cast<std::size_t>(spec.k));
  chain.push_back(seed_u_jet(x, spec.epsilon1, spec.lambda, spec.kappa, order, cfg));
  for (int j = 1; j < spec.k; ++j) chain.push_back(apply_annihilation(chain.back()));
  return chain;
}

double riccati_check(const ValueJet& jet) {
  const ValueJet src = jet.order() >= 2 ? jet : jet.extended(2);
  const Complex u = src.values[0];
  if (std::abs(u) == 0.0) throw ZeroDenominatorError("riccati_check: u vanishes at this point");
  const Complex alpha = src.values[1] / u;
  const Complex alpha_prime = src.values[2] / u - alpha * alpha;
  const Complex residual =
      alpha_prime + alpha * alpha - 2.0 * (0.5 * src.x * src.x - src.epsilon);
  return std::abs(residual);
}

ValueJet oscillator_eigenjet(int n, double x, int order) {
  if (n < 0) throw std::invalid_argument("oscillator_eigenjet: n must be >= 0");
  // Hermite polynomials by the three-term recurrence.
  double hm1 = 0.0, h = 1.0;
  for (int m = 0; m < n; ++m) {
    const double next = 2.0 * x * h - 2.0 * static_cast<double>(m) * hm1;
    hm1 = h;
    h = next;
  }
  const double log_norm = -0.5 * std::log(kSqrtPi);  // pi^{-1/4}
  double fact = 1.0;
  for (int m = 2; m <= n; ++m) fact *= static_cast<double>(m);
  const double norm = std::exp(log_norm) / std::sqrt(std::pow(2.0, n) * fact);
  const double gauss = std::exp(-0.5 * x * x);

  ValueJet jet;
  jet.x = x;
  jet.epsilon = static_cast<double>(n) + 0.5;
  jet.values.resize(2);
  jet.values[0] = Complex{norm * h * gauss, 0.0};
  const double hprime = 2.0 * static_cast<double>(n) * hm1;  // H_n' = 2 n H_{n-1}
  jet.values[1] = Complex{norm * (hprime - x * h) * gauss, 0.0};
  close_under_oscillator(jet.values, x, jet.epsilon, std::max(order, 1));
  return jet;
}

ValueJet gaussian_ground_jet(double x, int order) {
  ValueJet jet;
  jet.x = x;
  jet.epsilon = 0.5;
  jet.values.resize(2);
  const double gauss = std::exp(-0.5 * x * x);
  jet.values[0] = Complex{gauss, 0.0};
  jet.values[1] = Complex{-x * gauss, 0.0};
  close_under_oscillator(jet.values, x, jet.epsilon, std::max(order, 1));
  return jet;
}

}  // namespace pivsusy::seeds
