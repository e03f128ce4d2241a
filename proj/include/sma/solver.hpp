#pragma once

#include <functional>

#include "sma/fem.hpp"

namespace sma {

enum class Strategy { ReturnMapping, ParallelProjection };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct SolverConfig {
  Strategy strategy = Strategy::ParallelProjection;
  LocalScheme scheme = LocalScheme::NewtonRaphson;
  double e_R = 1e-6;  // global residual tolerance, scaled by max(|F_ext|, 1 N)
  int max_outer = 50;
  LocalConfig local;
};

struct StepStats {
  bool converged = false;
  int outer = 0;
  long local_iters = 0;                // delta_nu evaluations
  std::vector<double> res_history;     // scaled global residual per outer iteration
  std::string failure;
};

// A quasi-static analysis: spatial system plus per-gauss-point history.
struct Problem {
  FemSystem sys;
  MaterialParams mat;
  std::vector<InternalState> states;
  Eigen::VectorXd d;

  void init();  // austenitic start at T0, zero displacement
};

struct LoadPoint {
  double T = 0;
  double load = 0;  // factor on the system load pattern
};

// linear ramp from the state after `from` to `to` in `steps` equal steps
// (excludes the start point, includes the target)
void append_ramp(std::vector<LoadPoint>& path, const LoadPoint& from, const LoadPoint& to,
                 int steps);

StepStats step_return_mapping(Problem& pr, double T, double load, const SolverConfig& cfg);
StepStats step_parallel_projection(Problem& pr, double T, double load,
                                   const SolverConfig& cfg);
StepStats solve_step(Problem& pr, double T, double load, const SolverConfig& cfg);

struct PathResult {
  bool ok = true;
  int failed_step = -1;
  long total_outer = 0;
  long total_local = 0;
  double wall_s = 0;  // monotonic clock around the step loop
};

using StepCallback =
    std::function<void(int step, const LoadPoint&, const Problem&, const StepStats&)>;

PathResult run_load_path(Problem& pr, const std::vector<LoadPoint>& path,
                         const SolverConfig& cfg, const StepCallback& cb = {});

// reactions at constrained dofs for the current state (full-length vector,
// zero at free dofs)
Eigen::VectorXd reactions(const Problem& pr, double load);

// Largest step size from `grid` (ascending) for which the path built by
// `make_path` runs to completion on a fresh problem from `make_problem`.
// Returns 0 when none converges.
double max_converging_step(const std::function<Problem()>& make_problem,
                           const std::function<std::vector<LoadPoint>(double)>& make_path,
                           const std::vector<double>& grid, const SolverConfig& cfg);

}  // namespace sma
