#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pivsusy/ladder.hpp"

namespace py = pybind11;
using namespace pivsusy;

namespace {

std::vector<Complex> values_of(const std::vector<std::pair<double, Complex>>& samples) {
  std::vector<Complex> v(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].second;
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Painleve IV solutions from k-th order complex oscillator transformations";

  py::register_exception<PoleError>(m, "PoleError");
  py::register_exception<RangeError>(m, "RangeError");
  py::register_exception<SingularPointError>(m, "SingularPointError");
  py::register_exception<DegenerateLevelError>(m, "DegenerateLevelError");
  py::register_exception<DegenerateGError>(m, "DegenerateGError");

  py::class_<seeds::SeedSpec>(m, "SeedSpec")
      .def_static("from_lambda_kappa", &seeds::SeedSpec::from_lambda_kappa, py::arg("epsilon1"),
                  py::arg("lambda_"), py::arg("kappa"), py::arg("k"))
      .def_static("from_nu", &seeds::SeedSpec::from_nu, py::arg("epsilon1"), py::arg("nu"),
                  py::arg("k"))
      .def_readonly("epsilon1", &seeds::SeedSpec::epsilon1)
      .def_readonly("lambda_", &seeds::SeedSpec::lambda)
      .def_readonly("kappa", &seeds::SeedSpec::kappa)
      .def_readonly("k", &seeds::SeedSpec::k)
      .def_property_readonly("real_regime", &seeds::SeedSpec::real_regime)
      .def("__repr__", [](const seeds::SeedSpec& s) {
        return "SeedSpec(epsilon1=" + std::to_string(s.epsilon1) +
               ", lambda=" + std::to_string(s.lambda) + ", kappa=" + std::to_string(s.kappa) +
               ", k=" + std::to_string(s.k) + ")";
      });

  m.def(
      "kummer_1f1",
      [](Complex a, Complex b, Complex z) {
        return special::kummer_1f1({a, b, z});
      },
      py::arg("a"), py::arg("b"), py::arg("z"),
      "Confluent hypergeometric function 1F1(a,b;z) for complex arguments.");
  m.def(
      "kummer_1f1_jet",
      [](Complex a, Complex b, Complex z, int order) {
        return special::kummer_1f1_jet({a, b, z}, order);
      },
      py::arg("a"), py::arg("b"), py::arg("z"), py::arg("order") = 1,
      "[1F1, d/dz 1F1, ...] up to the requested order (max 4).");
  m.def("gamma", &special::gamma_fn, py::arg("z"), "Complex gamma function.");
  m.def("nu_to_lambda", &seeds::nu_to_lambda, py::arg("nu"), py::arg("epsilon"));

  m.def(
      "seed_u",
      [](double x, double epsilon, double lam, double kappa, int order) {
        return seeds::seed_u_jet(x, epsilon, lam, kappa, order).values;
      },
      py::arg("x"), py::arg("epsilon"), py::arg("lambda_"), py::arg("kappa"),
      py::arg("order") = 1, "Seed value and derivatives at x.");

  m.def(
      "partner_potential",
      [](const seeds::SeedSpec& spec, double x) { return susy::partner_potential(spec, x); },
      py::arg("spec"), py::arg("x"));

  m.def(
      "family_params",
      [](int family, double epsilon1, int k) {
        const auto p = painleve::family_params(static_cast<painleve::Family>(family), epsilon1, k);
        return std::make_pair(p.a, p.b);
      },
      py::arg("family"), py::arg("epsilon1"), py::arg("k"),
      "The (a, b) pair of the requested solution family.");
  m.def("abe_params", &painleve::abe_params, py::arg("e1"), py::arg("e2"), py::arg("e3"));

  m.def(
      "solve",
      [](const seeds::SeedSpec& spec, int family, double xmin, double xmax, std::size_t samples) {
        const auto xs = num::linspace(xmin, xmax, samples);
        const auto fam = static_cast<painleve::Family>(family);
        const auto params = painleve::family_params(fam, spec.epsilon1, spec.k);
        const auto sol = painleve::g_solution(spec, fam, xs);
        py::dict out;
        std::vector<double> x(sol.size());
        std::vector<Complex> g(sol.size()), g1(sol.size()), residual(sol.size());
        for (std::size_t i = 0; i < sol.size(); ++i) {
          x[i] = sol[i].x;
          g[i] = sol[i].g;
          g1[i] = sol[i].g1;
          residual[i] = sol[i].residual;
        }
        out["x"] = x;
        out["g"] = g;
        out["g1"] = g1;
        out["residual"] = residual;
        out["a"] = params.a;
        out["b"] = params.b;
        out["max_residual"] = painleve::piv_residual(sol, params);
        out["max_residual_fd"] =
            painleve::piv_residual(sol, params, painleve::ResidualMode::FiniteDifference);
        return out;
      },
      py::arg("spec"), py::arg("family"), py::arg("xmin") = -5.0, py::arg("xmax") = 5.0,
      py::arg("samples") = 1001,
      "Generate g(x; a, b) with residual certification on a uniform grid.");

  m.def(
      "extremal_state",
      [](const seeds::SeedSpec& spec, int family, const std::vector<double>& grid) {
        const auto fam = static_cast<susy::ExtremalFamily>(family - 1);
        const auto st = susy::extremal_state(spec, fam, grid);
        return std::make_pair(st.energy, values_of(st.samples));
      },
      py::arg("spec"), py::arg("family"), py::arg("grid"),
      "(energy, samples) of the requested extremal state (family 1, 2 or 3).");

  m.def(
      "mapped_eigenfunction",
      [](const seeds::SeedSpec& spec, int n, const std::vector<double>& grid) {
        return values_of(susy::mapped_eigenfunction(spec, n, grid));
      },
      py::arg("spec"), py::arg("n"), py::arg("grid"));

  m.def(
      "new_level_eigenfunction",
      [](const seeds::SeedSpec& spec, int j, const std::vector<double>& grid) {
        return values_of(susy::new_level_eigenfunction(spec, j, grid));
      },
      py::arg("spec"), py::arg("j"), py::arg("grid"));

  m.def(
      "singularity_scan",
      [](const seeds::SeedSpec& spec, const std::vector<double>& grid) {
        return susy::singularity_scan(spec, grid);
      },
      py::arg("spec"), py::arg("grid"),
      "Approximate real zeros of the seed Wronskian; empty means non-singular.");

  m.def(
      "spectrum",
      [](const seeds::SeedSpec& spec) {
        const auto d = ladder::spectrum(spec);
        py::dict out;
        out["infinite_ladder_base"] = d.infinite_ladder_base;
        out["finite_ladder"] = d.finite_ladder;
        out["degenerate_overlap"] =
            d.degenerate_overlap ? py::cast(*d.degenerate_overlap) : py::none();
        return out;
      },
      py::arg("spec"));

  m.def(
      "parameter_space_scan",
      [](double lo, double hi, double step, int klo, int khi) {
        py::list out;
        for (const auto& p : painleve::parameter_space_scan(lo, hi, step, klo, khi)) {
          py::dict row;
          row["family"] = static_cast<int>(p.family);
          row["k"] = p.k;
          row["epsilon1"] = p.epsilon1;
          row["a"] = p.a;
          row["b"] = p.b;
          row["classification"] = p.cls == painleve::Classification::RealOrComplex
                                      ? "real-or-complex"
                                      : "complex-only";
          out.append(row);
        }
        return out;
      },
      py::arg("eps1_lo"), py::arg("eps1_hi"), py::arg("eps1_step"), py::arg("k_lo"),
      py::arg("k_hi"));

#ifdef PIVSUSY_VERSION
  m.attr("__version__") = PIVSUSY_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
