// pivsusy: generate and certify Painleve IV solutions built from k-th order
// complex transformations of the harmonic oscillator.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 singular transformation,
// 3 verification failure (residual or check above tolerance).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivsusy/ladder.hpp"

using nlohmann::json;
using namespace pivsusy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSingular = 2;
constexpr int kExitVerification = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_summary(const json& j) { std::cout << j.dump() << "\n"; }

struct SeedOptions {
  int k = 1;
  double eps1 = 0.0;
  std::optional<double> nu;
  std::optional<double> lambda;
  std::optional<double> kappa;

  seeds::SeedSpec build() const {
    if (nu && (lambda || kappa))
      throw CLI::ValidationError("--nu and --lambda/--kappa are mutually exclusive");
    if (nu) return seeds::SeedSpec::from_nu(eps1, *nu, k);
    return seeds::SeedSpec::from_lambda_kappa(eps1, lambda.value_or(0.0),
                                              kappa.value_or(0.0), k);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "transformation order (1..6)")->required()
        ->check(CLI::Range(1, 6));
    cmd->add_option("--eps1", eps1, "factorization energy of the first seed")->required();
    auto* nu_opt = cmd->add_option("--nu", nu, "real-case seed parameter");
    auto* la_opt = cmd->add_option("--lambda", lambda, "real part of the seed coefficient");
    auto* ka_opt = cmd->add_option("--kappa", kappa, "imaginary part of the seed coefficient");
    nu_opt->excludes(la_opt);
    nu_opt->excludes(ka_opt);
  }
};

struct GridOptions {
  double xmin = -5.0;
  double xmax = 5.0;
  std::size_t samples = 1001;

  void attach(CLI::App* cmd) {
    cmd->add_option("--xmin", xmin, "left end of the grid");
    cmd->add_option("--xmax", xmax, "right end of the grid");
    cmd->add_option("--samples", samples, "number of grid points")->check(CLI::Range(2, 2000000));
  }
  std::vector<double> build() const {
    if (!(xmin < xmax)) throw CLI::ValidationError("--xmin must be below --xmax");
    return num::linspace(xmin, xmax, samples);
  }
};

json seed_meta(const seeds::SeedSpec& spec) {
  json m;
  m["k"] = spec.k;
  m["epsilon1"] = spec.epsilon1;
  m["lambda"] = spec.lambda;
  m["kappa"] = spec.kappa;
  if (spec.nu) m["nu"] = *spec.nu;
  m["real_regime"] = spec.real_regime();
  return m;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// ---------------------------------------------------------------------------
// solve

struct SolveCmd {
  SeedOptions seed;
  GridOptions grid;
  int family = 1;
  double tolerance = 1e-6;
  std::string output = "piv_solution.csv";
  std::string format = "csv";
  bool no_meta = false;

  int run() const {
    const seeds::SeedSpec spec = seed.build();
    const auto fam = static_cast<painleve::Family>(family);
    const auto xs = grid.build();
    const auto params = painleve::family_params(fam, spec.epsilon1, spec.k);
    const auto samples = painleve::g_solution(spec, fam, xs);
    const auto psi = susy::extremal_state(spec, painleve::extremal_of(fam), xs);
    const double max_residual = painleve::piv_residual(samples, params);

    if (format == "csv") {
      std::ostringstream body;
      body << "x,re_g,im_g,re_residual,im_residual,abs_psi\n";
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        body << fmt17(s.x) << ',' << fmt17(s.g.real()) << ',' << fmt17(s.g.imag()) << ','
             << fmt17(s.residual.real()) << ',' << fmt17(s.residual.imag()) << ','
             << fmt17(std::abs(psi.samples[i].second)) << "\n";
      }
      write_file(output, body.str());
    } else {
      json doc;
      if (!no_meta) {
        json meta = seed_meta(spec);
        meta["family"] = family;
        meta["a"] = params.a;
        meta["b"] = params.b;
        meta["generator"] = "pivsusy";
        doc["meta"] = meta;
      }
      json data;
      auto& jx = data["x"];
      auto& re = data["re_g"];
      auto& im = data["im_g"];
      auto& rr = data["re_residual"];
      auto& ri = data["im_residual"];
      auto& ap = data["abs_psi"];
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        jx.push_back(s.x);
        re.push_back(s.g.real());
        im.push_back(s.g.imag());
        rr.push_back(s.residual.real());
        ri.push_back(s.residual.imag());
        ap.push_back(std::abs(psi.samples[i].second));
      }
      doc["data"] = data;
      write_file(output, doc.dump(2) + "\n");
    }

    const bool ok = max_residual < tolerance;
    json summary;
    summary["command"] = "solve";
    summary["a"] = params.a;
    summary["b"] = params.b;
    summary["family"] = family;
    summary["max_residual"] = max_residual;
    summary["tolerance"] = tolerance;
    summary["output"] = output;
    summary["exit"] = ok ? kExitOk : kExitVerification;
    print_summary(summary);
    return ok ? kExitOk : kExitVerification;
  }
};

// ---------------------------------------------------------------------------
// verify

struct VerifyCmd {
  std::string input;
  std::optional<double> a, b;
  std::optional<int> family;
  std::optional<double> eps1;
  std::optional<int> k;
  double tolerance = 1e-4;

  int run() const {
    std::vector<painleve::PIVSolutionSample> samples;
    double pa = 0.0, pb = 0.0;
    bool have_ab = false;

    if (input.size() > 5 && input.substr(input.size() - 5) == ".json") {
      std::ifstream in(input);
      if (!in) throw std::runtime_error("cannot open input file: " + input);
      json doc = json::parse(in);
      if (doc.contains("meta") && doc["meta"].contains("a")) {
        pa = doc["meta"]["a"].get<double>();
        pb = doc["meta"]["b"].get<double>();
        have_ab = true;
      }
      const auto& d = doc.at("data");
      const auto& xs = d.at("x");
      const auto& re = d.at("re_g");
      const auto& im = d.at("im_g");
      for (std::size_t i = 0; i < xs.size(); ++i) {
        painleve::PIVSolutionSample s;
        s.x = xs[i].get<double>();
        s.g = Complex{re[i].get<double>(), im[i].get<double>()};
        samples.push_back(s);
      }
    } else {
      std::ifstream in(input);
      if (!in) throw std::runtime_error("cannot open input file: " + input);
      std::string line;
      if (!std::getline(in, line)) throw std::runtime_error("empty input file");
      // expected schema: x,re_g,im_g,...
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        painleve::PIVSolutionSample s;
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &s.x, &re, &im) != 3)
          throw std::runtime_error("malformed CSV row: " + line);
        s.g = Complex{re, im};
        samples.push_back(s);
      }
    }

    if (a && b) {
      pa = *a;
      pb = *b;
      have_ab = true;
    } else if (family && eps1 && k) {
      const auto params =
          painleve::family_params(static_cast<painleve::Family>(*family), *eps1, *k);
      pa = params.a;
      pb = params.b;
      have_ab = true;
    }
    if (!have_ab)
      throw CLI::ValidationError(
          "verify needs (a,b): pass --a/--b, --family/--eps1/--k, or a JSON input with meta");

    painleve::PIVParams params;
    params.a = pa;
    params.b = pb;
    const double residual =
        painleve::piv_residual(samples, params, painleve::ResidualMode::FiniteDifference);
    const bool ok = residual < tolerance;
    json summary;
    summary["command"] = "verify";
    summary["a"] = pa;
    summary["b"] = pb;
    summary["input"] = input;
    summary["max_residual_fd"] = residual;
    summary["tolerance"] = tolerance;
    summary["exit"] = ok ? kExitOk : kExitVerification;
    print_summary(summary);
    return ok ? kExitOk : kExitVerification;
  }
};

// ---------------------------------------------------------------------------
// scan

struct ScanCmd {
  std::string families = "all";
  std::string eps1_range = "-3:8:0.05";
  std::string k_range = "1:3";
  std::string output = "piv_scan.json";
  std::string format = "json";

  int run() const {
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(eps1_range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
      throw CLI::ValidationError("--eps1-range must look like lo:hi:step");
    int klo = 0, khi = 0;
    if (std::sscanf(k_range.c_str(), "%d:%d", &klo, &khi) != 2)
      throw CLI::ValidationError("--k-range must look like lo:hi");

    auto wanted = [&](painleve::Family f) {
      if (families == "all") return true;
      const std::string tag = std::to_string(static_cast<int>(f));
      std::stringstream ss(families);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (tok == tag) return true;
      return false;
    };

    const auto points = painleve::parameter_space_scan(lo, hi, step, klo, khi);
    json curve = json::array();
    std::size_t emitted = 0;
    for (const auto& p : points) {
      if (!wanted(p.family)) continue;
      json row;
      row["family"] = static_cast<int>(p.family);
      row["k"] = p.k;
      row["epsilon1"] = p.epsilon1;
      row["a"] = p.a;
      row["b"] = p.b;
      row["classification"] = p.cls == painleve::Classification::RealOrComplex
                                  ? "real-or-complex"
                                  : "complex-only";
      curve.push_back(row);
      ++emitted;
    }
    if (format == "json") {
      json doc;
      doc["points"] = curve;
      write_file(output, doc.dump(2) + "\n");
    } else {
      std::ostringstream body;
      body << "family,k,eps1,a,b,classification\n";
      for (const auto& row : curve)
        body << row["family"].get<int>() << ',' << row["k"].get<int>() << ','
             << fmt17(row["epsilon1"].get<double>()) << ',' << fmt17(row["a"].get<double>())
             << ',' << fmt17(row["b"].get<double>()) << ','
             << row["classification"].get<std::string>() << "\n";
      write_file(output, body.str());
    }
    json summary;
    summary["command"] = "scan";
    summary["points"] = emitted;
    summary["output"] = output;
    summary["exit"] = kExitOk;
    print_summary(summary);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumCmd {
  SeedOptions seed;
  int levels = 10;
  std::string output = "piv_spectrum.json";

  int run() const {
    const seeds::SeedSpec spec = seed.build();
    const auto d = ladder::spectrum(spec);
    json doc;
    doc["infinite_ladder_base"] = d.infinite_ladder_base;
    doc["finite_ladder"] = d.finite_ladder;
    if (d.degenerate_overlap)
      doc["degenerate_overlap"] = *d.degenerate_overlap;
    else
      doc["degenerate_overlap"] = nullptr;
    json inf = json::array();
    for (int n = 0; n < levels; ++n) inf.push_back(n + 0.5);
    doc["infinite_levels"] = inf;
    doc["spec"] = seed_meta(spec);
    write_file(output, doc.dump(2) + "\n");
    json summary;
    summary["command"] = "spectrum";
    summary["finite_levels"] = d.finite_ladder.size();
    summary["output"] = output;
    summary["exit"] = kExitOk;
    print_summary(summary);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// eigenfunction

struct EigenfunctionCmd {
  SeedOptions seed;
  GridOptions grid{-10.0, 10.0, 2001};
  std::string type = "mapped";
  int n = 0;
  int j = 1;
  std::string state = "E1";
  std::string output = "piv_eigenfunction.csv";
  std::string format = "csv";

  int run() const {
    const seeds::SeedSpec spec = seed.build();
    const auto xs = grid.build();
    std::vector<std::pair<double, Complex>> samples;
    double energy = 0.0;
    if (type == "mapped") {
      samples = susy::mapped_eigenfunction(spec, n, xs);
      energy = n + 0.5;
    } else if (type == "newlevel") {
      samples = susy::new_level_eigenfunction(spec, j, xs);
      energy = spec.epsilon_j(j);
    } else if (type == "extremal") {
      susy::ExtremalFamily fam;
      if (state == "E1")
        fam = susy::ExtremalFamily::E1;
      else if (state == "E2")
        fam = susy::ExtremalFamily::E2;
      else if (state == "E3")
        fam = susy::ExtremalFamily::E3;
      else
        throw CLI::ValidationError("--state must be E1, E2 or E3");
      const auto st = susy::extremal_state(spec, fam, xs);
      samples = st.samples;
      energy = st.energy;
    } else {
      throw CLI::ValidationError("--type must be mapped, newlevel or extremal");
    }

    std::vector<Complex> vals(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) vals[i] = samples[i].second;
    const double norm_sq = num::l2_norm_sq(xs, vals);

    if (format == "csv") {
      std::ostringstream body;
      body << "x,re_psi,im_psi,abs_psi\n";
      for (const auto& [x, v] : samples)
        body << fmt17(x) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << ','
             << fmt17(std::abs(v)) << "\n";
      write_file(output, body.str());
    } else {
      json doc;
      json meta = seed_meta(spec);
      meta["type"] = type;
      meta["energy"] = energy;
      meta["l2_norm"] = std::sqrt(norm_sq);
      doc["meta"] = meta;
      json data;
      for (const auto& [x, v] : samples) {
        data["x"].push_back(x);
        data["re_psi"].push_back(v.real());
        data["im_psi"].push_back(v.imag());
        data["abs_psi"].push_back(std::abs(v));
      }
      doc["data"] = data;
      write_file(output, doc.dump(2) + "\n");
    }
    json summary;
    summary["command"] = "eigenfunction";
    summary["type"] = type;
    summary["energy"] = energy;
    summary["l2_norm"] = std::sqrt(norm_sq);
    summary["output"] = output;
    summary["exit"] = kExitOk;
    print_summary(summary);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// ladder-check

struct LadderCheckCmd {
  SeedOptions seed;
  GridOptions grid{-6.0, 6.0, 1201};
  double tolerance = 1e-4;
  std::string output = "piv_ladder_check.json";

  int run() const {
    const seeds::SeedSpec spec = seed.build();
    const auto xs = grid.build();
    const auto rep = ladder::pha_checks(spec, xs);
    json doc;
    doc["spec"] = seed_meta(spec);
    doc["commutator_dev"] = rep.commutator_dev;
    doc["q_dev"] = rep.q_dev;
    json pv = json::array();
    for (const auto& [e, p] : rep.p_values) pv.push_back({{"E", e}, {"P", p}});
    doc["p_values"] = pv;
    if (!std::isnan(rep.p_third_difference))
      doc["p_third_difference"] = rep.p_third_difference;
    doc["basket_size"] = rep.basket_size;

    bool ok = rep.commutator_dev < tolerance && rep.q_dev < tolerance;

    const auto sd = ladder::spectrum(spec);
    if (spec.k == 1 && sd.degenerate_overlap) {
      const auto drep = ladder::degenerate_ladder_classification(spec, xs);
      json checks = json::array();
      for (const auto& c : drep.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"pass", c.pass}});
      doc["degenerate"] = {{"j", drep.j}, {"checks", checks}, {"all_pass", drep.all_pass}};
      ok = ok && drep.all_pass;
    }
    write_file(output, doc.dump(2) + "\n");

    json summary;
    summary["command"] = "ladder-check";
    summary["commutator_dev"] = rep.commutator_dev;
    summary["q_dev"] = rep.q_dev;
    summary["tolerance"] = tolerance;
    summary["output"] = output;
    summary["exit"] = ok ? kExitOk : kExitVerification;
    print_summary(summary);
    return ok ? kExitOk : kExitVerification;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve IV solutions from k-th order complex oscillator transformations"};
  app.require_subcommand(1);

  SolveCmd solve;
  auto* solve_cmd = app.add_subcommand("solve", "generate a P_IV solution dataset");
  solve.seed.attach(solve_cmd);
  solve.grid.attach(solve_cmd);
  solve_cmd->add_option("--family", solve.family, "solution family (1, 2 or 3)")
      ->required()
      ->check(CLI::Range(1, 3));
  solve_cmd->add_option("--tolerance", solve.tolerance, "residual gate");
  solve_cmd->add_option("--output", solve.output, "output path");
  solve_cmd->add_option("--format", solve.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve_cmd->add_flag("--no-meta", solve.no_meta, "omit the JSON metadata block");

  VerifyCmd verify;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a solution dataset by finite differences");
  verify_cmd->add_option("--input", verify.input, "dataset produced by solve")->required();
  verify_cmd->add_option("--a", verify.a, "P_IV parameter a");
  verify_cmd->add_option("--b", verify.b, "P_IV parameter b");
  verify_cmd->add_option("--family", verify.family, "family used to derive (a,b)");
  verify_cmd->add_option("--eps1", verify.eps1, "epsilon1 used to derive (a,b)");
  verify_cmd->add_option("--k", verify.k, "order used to derive (a,b)");
  verify_cmd->add_option("--tolerance", verify.tolerance, "residual gate");

  ScanCmd scan;
  auto* scan_cmd = app.add_subcommand("scan", "emit the (a,b) parameter-space curves");
  scan_cmd->add_option("--families", scan.families, "all or a comma list of 1,2,3");
  scan_cmd->add_option("--eps1-range", scan.eps1_range, "lo:hi:step");
  scan_cmd->add_option("--k-range", scan.k_range, "lo:hi");
  scan_cmd->add_option("--output", scan.output, "output path");
  scan_cmd->add_option("--format", scan.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}));

  SpectrumCmd spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "emit the two-ladder spectrum descriptor");
  spectrum.seed.attach(spectrum_cmd);
  spectrum_cmd->add_option("--levels", spectrum.levels, "number of infinite-ladder levels");
  spectrum_cmd->add_option("--output", spectrum.output, "output path");

  EigenfunctionCmd eig;
  auto* eig_cmd = app.add_subcommand("eigenfunction", "sample a partner eigenfunction");
  eig.seed.attach(eig_cmd);
  eig.grid.attach(eig_cmd);
  eig_cmd->add_option("--type", eig.type, "mapped, newlevel or extremal");
  eig_cmd->add_option("--n", eig.n, "oscillator level for --type mapped");
  eig_cmd->add_option("--j", eig.j, "seed index for --type newlevel");
  eig_cmd->add_option("--state", eig.state, "E1, E2 or E3 for --type extremal");
  eig_cmd->add_option("--output", eig.output, "output path");
  eig_cmd->add_option("--format", eig.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  LadderCheckCmd lad;
  auto* lad_cmd = app.add_subcommand("ladder-check", "run the ladder-algebra certificates");
  lad.seed.attach(lad_cmd);
  lad.grid.attach(lad_cmd);
  lad_cmd->add_option("--tolerance", lad.tolerance, "deviation gate");
  lad_cmd->add_option("--output", lad.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    json summary;
    summary["command"] = "none";
    summary["error"] = std::string("usage: ") + e.what();
    summary["exit"] = kExitUsage;
    print_summary(summary);
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (solve_cmd->parsed()) return solve.run();
    if (verify_cmd->parsed()) return verify.run();
    if (scan_cmd->parsed()) return scan.run();
    if (spectrum_cmd->parsed()) return spectrum.run();
    if (eig_cmd->parsed()) return eig.run();
    if (lad_cmd->parsed()) return lad.run();
  } catch (const SingularPointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    json summary;
    summary["command"] = cmd;
    summary["error"] = e.what();
    summary["exit"] = kExitSingular;
    print_summary(summary);
    return kExitSingular;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    json summary;
    summary["command"] = cmd;
    summary["error"] = e.what();
    summary["exit"] = kExitUsage;
    print_summary(summary);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    json summary;
    summary["command"] = cmd;
    summary["error"] = e.what();
    summary["exit"] = kExitUsage;
    print_summary(summary);
    return kExitUsage;
  }
  return kExitUsage;
}
