#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sma/config.hpp"
#include "sma/oracle.hpp"

using namespace sma;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write: " + path);
  out << content;
}

std::string error_record(const std::string& kind, const std::string& what,
                         int step = -1) {
  std::string r = "{\"error\":\"" + kind + "\",\"detail\":\"" + what + "\"";
  if (step >= 0) r += ",\"step\":" + std::to_string(step);
  return r + "}";
}

int cmd_run(const std::string& config_path) {
  SimConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << error_record("config", e.what()) << "\n";
    return 1;
  }
  Problem pr = build_problem(cfg);
  const std::vector<LoadPoint> path = build_path(cfg);
  std::string table = format_results_header();
  auto cb = [&](int step, const LoadPoint& lp, const Problem& prob, const StepStats& st) {
    table += format_result_row(step, lp, prob, st, cfg.output.probe);
  };
  const PathResult res = run_load_path(pr, path, cfg.solver, cb);
  if (!res.ok) {
    std::cerr << error_record("non-convergence", "step failed", res.failed_step) << "\n";
    return 2;
  }
  write_file(cfg.output.results, table);
  char summary[512];
  std::snprintf(summary, sizeof summary,
                "steps: %zu\nconverged: yes\ntotal_outer: %ld\ntotal_local: %ld\n"
                "wall_s: %.3f\nfinal_T: %.9g\nfinal_load: %.9g\n",
                path.size(), res.total_outer, res.total_local, res.wall_s,
                path.back().T, path.back().load);
  write_file(cfg.output.summary, summary);
  std::cout << "wrote " << cfg.output.results << " and " << cfg.output.summary << "\n";
  return 0;
}

struct BenchRow {
  Strategy strategy;
  LocalScheme scheme;
  bool ok;
  long outer, local;
  double wall;
};

int cmd_bench(const std::string& config_path, bool compare,
              const std::string& schemes_arg) {
  SimConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << error_record("config", e.what()) << "\n";
    return 1;
  }
  std::vector<LocalScheme> schemes;
  if (schemes_arg == "all") {
    schemes = {LocalScheme::NewtonRaphson, LocalScheme::RadialReturn,
               LocalScheme::ClosestPoint, LocalScheme::CuttingPlane};
  } else {
    std::stringstream ss(schemes_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        schemes.push_back(scheme_from_string(tok));
      } catch (const std::exception& e) {
        std::cerr << error_record("usage", e.what()) << "\n";
        return 1;
      }
    }
    if (schemes.empty()) {
      std::cerr << error_record("usage", "no schemes given") << "\n";
      return 1;
    }
  }
  const std::vector<LoadPoint> path = build_path(cfg);
  std::vector<BenchRow> rows;
  bool any_failed = false;
  for (Strategy strat : {Strategy::ReturnMapping, Strategy::ParallelProjection}) {
    for (LocalScheme sch : schemes) {
      SolverConfig sc = cfg.solver;
      sc.strategy = strat;
      sc.scheme = sch;
      Problem pr = build_problem(cfg);
      const PathResult res = run_load_path(pr, path, sc);
      rows.push_back({strat, sch, res.ok, res.total_outer, res.total_local, res.wall_s});
      any_failed = any_failed || !res.ok;
    }
  }
  std::cout << "strategy,scheme,converged,outer_iters,local_iters,wall_s\n";
  for (const auto& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%s,%ld,%ld,%.3f\n", to_string(r.strategy),
                  to_string(r.scheme), r.ok ? "yes" : "no", r.outer, r.local, r.wall);
    std::cout << line;
  }
  if (compare) {
    // largest converging temperature / load stride per strategy
    double span_T = 0, span_F = 0;
    LoadPoint prev{cfg.initial_T, cfg.initial_load};
    for (const auto& seg : cfg.segments) {
      span_T = std::max(span_T, std::abs(seg.T - prev.T));
      span_F = std::max(span_F, std::abs(seg.load - prev.load));
      prev = {seg.T, seg.load};
    }
    for (const bool temp : {true, false}) {
      const double span = temp ? span_T : span_F;
      if (span <= 0) continue;
      std::vector<double> grid;
      for (int n : {2000, 1000, 500, 200, 100, 50, 20, 10, 5, 2, 1})
        grid.push_back(span / n);
      std::cout << (temp ? "max_dT" : "max_dF");
      for (Strategy strat : {Strategy::ReturnMapping, Strategy::ParallelProjection}) {
        SolverConfig sc = cfg.solver;
        sc.strategy = strat;
        const double best = max_converging_step(
            [&] { return build_problem(cfg); },
            [&](double step) {
              return temp ? build_path_with_steps(cfg, step, std::nullopt)
                          : build_path_with_steps(cfg, std::nullopt, step);
            },
            grid, sc);
        char cell[64];
        std::snprintf(cell, sizeof cell, ",%s=%.9g", to_string(strat), best);
        std::cout << cell;
      }
      std::cout << "\n";
    }
  }
  return any_failed ? 2 : 0;
}

struct Check {
  std::string name;
  bool pass;
  double measured;
};

int cmd_verify() {
  std::vector<Check> checks;
  const MaterialParams p = MaterialParams::niti50();
  LocalConfig lc;

  {  // stress-free cooling against the closed-form martensite fraction
    InternalState s = InternalState::austenite(p);
    double err220 = 1e9, xi194 = -1;
    for (double T = 300.0; T >= 180.0 - 1e-9; T -= 0.1) {
      const Voigt6 eps = p.alpha * (T - p.T0) * voigt_identity();
      s = resolve_local(s, eps, T, p, LocalScheme::NewtonRaphson, lc, StressMode::Full)
              .state;
      if (std::abs(T - 220.0) < 0.05)
        err220 = std::abs(s.xi - analytic_1d(0.0, 220.0, TransformDirection::Forward, p).xi);
      if (std::abs(T - 194.0) < 0.05) xi194 = s.xi;
    }
    checks.push_back({"analytic_1d_xi_at_220K", err220 < 1e-3, err220});
    checks.push_back({"analytic_1d_xi_at_194K", std::abs(xi194 - 1.0) < 1e-6,
                      std::abs(xi194 - 1.0)});
  }
  {  // closed-form local increment against the dense oracle, forward branch
    InternalState sn = InternalState::austenite(p);
    sn.xi = 0.3;
    sn.S = compliance_at(0.3, p);
    Voigt6 sig = Voigt6::Zero();
    sig(0) = 3e8;
    sig(5) = 4e7;
    sn.sigma = sig;
    sn.et = 0.3 * transformation_tensor(sig, Voigt6::Zero(), TransformDirection::Forward, p);
    InternalState s = sn;
    s.xi = 0.38;
    s.sigma(0) = 3.1e8;
    s.direction = TransformDirection::Forward;
    const double T = 280.0;
    const Voigt6 eps = compliance_matrix(s.S, p.nu) * s.sigma +
                       p.alpha * (T - p.T0) * voigt_identity() + s.et;
    const LocalResidual r = local_residual(s, sn, eps, T, p, StressMode::Full);
    const LocalIncrement a =
        delta_nu(s, sn, r, eps, T, p, LocalScheme::NewtonRaphson, StressMode::Full);
    const LocalIncrement b = dense_delta_nu(s, sn, eps, T, p);
    const double err = std::abs(a.dxi - b.dxi) / std::max(std::abs(b.dxi), 1e-12) +
                       (a.dsigma - b.dsigma).norm() / std::max(b.dsigma.norm(), 1e-12);
    checks.push_back({"dense_oracle_delta_nu", err < 1e-8, err});
  }
  {  // four local schemes land on the same state
    LocalConfig tight;
    tight.e_H = 1e-12;
    tight.max_iter = 200;
    InternalState sn = InternalState::austenite(p);
    Voigt6 eps = Voigt6::Zero();
    eps(0) = 0.012;
    double spread = 0;
    double xi0 = -1;
    for (LocalScheme sch : {LocalScheme::NewtonRaphson, LocalScheme::RadialReturn,
                            LocalScheme::ClosestPoint, LocalScheme::CuttingPlane}) {
      const double xi =
          resolve_local(sn, eps, 310.0, p, sch, tight, StressMode::Uniaxial).state.xi;
      if (xi0 < 0)
        xi0 = xi;
      else
        spread = std::max(spread, std::abs(xi - xi0));
    }
    checks.push_back({"scheme_equivalence", spread < 1e-8, spread});
  }
  {  // convergence order on offset temperature grids
    std::vector<double> logh, loge;
    for (double dT : {0.05, 0.1, 0.2, 0.4}) {
      InternalState s = InternalState::austenite(p);
      double best_T = 1e9, xi_s = 0;
      for (double T = 300.0 + 0.6 * dT; T >= 210.0; T -= dT) {
        const Voigt6 eps = p.alpha * (T - p.T0) * voigt_identity();
        s = resolve_local(s, eps, T, p, LocalScheme::NewtonRaphson, lc, StressMode::Full)
                .state;
        if (std::abs(T - 220.0) < std::abs(best_T - 220.0)) {
          best_T = T;
          xi_s = s.xi;
        }
      }
      const double err =
          std::abs(xi_s - analytic_1d(0.0, 220.0, TransformDirection::Forward, p).xi);
      logh.push_back(std::log(dT));
      loge.push_back(std::log(err));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = (int)logh.size();
    for (int i = 0; i < n; ++i) {
      sx += logh[i];
      sy += loge[i];
      sxx += logh[i] * logh[i];
      sxy += logh[i] * loge[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    checks.push_back({"convergence_order_slope", slope > 0.8 && slope < 1.2, slope});
  }
  {  // hex patch test with a distorted interior node
    Mesh mesh = make_box_mesh({1, 1, 1}, {2, 2, 2});
    mesh.nodes[13] += Eigen::Vector3d(0.07, -0.05, 0.1);
    FemSystem sys;
    sys.mesh = mesh;
    Eigen::Matrix3d G;
    G << 1e-3, 2e-4, -1e-4, 3e-4, -5e-4, 1e-4, 2e-4, -2e-4, 4e-4;
    for (int n = 0; n < (int)mesh.nodes.size(); ++n) {
      if (n == 13) continue;
      const Eigen::Vector3d u = G * mesh.nodes[n];
      for (int ci = 0; ci < 3; ++ci) sys.dirichlet.push_back({3 * n + ci, u(ci)});
    }
    sys.finalize();
    Mat6 C = Mat6::Zero();
    const double lam = p.E_A * p.nu / ((1 + p.nu) * (1 - 2 * p.nu));
    const double mu = p.E_A / (2 * (1 + p.nu));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) C(i, j) = lam;
      C(i, i) += 2 * mu;
      C(3 + i, 3 + i) = mu;
    }
    std::vector<Mat6> Ls(sys.n_gp(), C);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.n_dofs());
    for (const auto& [dof, val] : sys.dirichlet) d(dof) = val;
    std::vector<Voigt6> sig(sys.n_gp());
    for (int e = 0; e < (int)mesh.elems.size(); ++e)
      for (int g = 0; g < 8; ++g) sig[sys.gp_index(e, g)] = C * sys.strain(e, g, d);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.tangent(Ls));
    const Eigen::VectorXd du = ldlt.solve(-sys.restrict_free(sys.internal_force(sig)));
    sys.add_to_full(du, d);
    double worst = 0;
    const Voigt6 eps_ref = sys.strain(0, 0, d);
    for (int e = 0; e < (int)mesh.elems.size(); ++e)
      for (int g = 0; g < 8; ++g)
        worst = std::max(worst,
                         (sys.strain(e, g, d) - eps_ref).norm() / eps_ref.norm());
    checks.push_back({"hex_patch_test", worst < 1e-8, worst});
  }

  bool all = true;
  for (const auto& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %s measured=%.6g\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured);
    std::cout << line;
    all = all && c.pass;
  }
  std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES\n");
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  // --dump-config echoes the parsed (or default) configuration and exits
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--dump-config") {
      try {
        SimConfig cfg;
        if (i + 1 < argc) cfg = load_config(argv[i + 1]);
        std::cout << dump_config(cfg);
        return 0;
      } catch (const std::exception& e) {
        std::cerr << error_record("config", e.what()) << "\n";
        return 1;
      }
    }
  }

  CLI::App app{"shape-memory-alloy finite element solver"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "run a simulation from a config file");
  run->add_option("config", run_config, "config file (JSON)")->required();

  std::string bench_config, schemes = "newton_raphson";
  bool compare = false;
  CLI::App* bench = app.add_subcommand("bench", "benchmark both solution strategies");
  bench->add_option("config", bench_config, "config file (JSON)")->required();
  bench->add_flag("--compare", compare, "also search the largest converging step");
  bench->add_option("--schemes", schemes, "all or comma-separated scheme names");

  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (bench->parsed()) return cmd_bench(bench_config, compare, schemes);
    if (verify->parsed()) return cmd_verify();
  } catch (const ConfigError& e) {
    std::cerr << error_record("config", e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_record("solver", e.what()) << "\n";
    return 2;
  }
  return 1;
}
