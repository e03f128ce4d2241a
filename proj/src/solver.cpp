#include "sma/solver.hpp"

#include <chrono>

namespace sma {

const char* to_string(Strategy s) {
  return s == Strategy::ReturnMapping ? "return_mapping" : "parallel_projection";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "return_mapping") return Strategy::ReturnMapping;
  if (s == "parallel_projection") return Strategy::ParallelProjection;
  throw std::invalid_argument("unknown strategy: " + s);
}

void Problem::init() {
  sys.finalize();
  states.assign(sys.n_gp(), InternalState::austenite(mat));
  d = Eigen::VectorXd::Zero(sys.mesh.n_dofs());
  for (const auto& [dof, val] : sys.dirichlet) d(dof) = val;
}

void append_ramp(std::vector<LoadPoint>& path, const LoadPoint& from, const LoadPoint& to,
                 int steps) {
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    path.push_back({from.T + t * (to.T - from.T), from.load + t * (to.load - from.load)});
  }
}

namespace {

double scaled_norm(const FemSystem& sys, const Eigen::VectorXd& R_full,
                   const Eigen::VectorXd& Fext) {
  return sys.restrict_free(R_full).norm() / std::max(Fext.norm(), 1.0);
}

bool sparse_solve(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& rhs,
                  Eigen::VectorXd& x) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
  if (ldlt.info() != Eigen::Success) return false;
  x = ldlt.solve(rhs);
  return ldlt.info() == Eigen::Success;
}

}  // namespace

StepStats step_return_mapping(Problem& pr, double T, double load, const SolverConfig& cfg) {
  StepStats st;
  FemSystem& sys = pr.sys;
  const Eigen::VectorXd Fext = load * sys.load_pattern;
  const int ngp = sys.n_gp();
  std::vector<InternalState> it(ngp);
  std::vector<Voigt6> sigma(ngp);
  std::vector<Mat6> L(ngp);

  // backtracking state: if the residual grows, retreat to a shorter fraction
  // of the last Newton direction; points sitting on the elastic-transforming
  // kink otherwise make the full-step iteration cycle
  Eigen::VectorXd d_base = pr.d, du_free;
  double rn_prev = std::numeric_limits<double>::infinity(), alpha = 1.0;

  for (int k = 0; k < cfg.max_outer; ++k) {
    ++st.outer;
    try {
      for (size_t e = 0; e < sys.mesh.elems.size(); ++e)
        for (int g = 0; g < sys.gp_per_elem(); ++g) {
          const int q = sys.gp_index(static_cast<int>(e), g);
          const ResolveResult rr =
              resolve_local(pr.states[q], sys.strain(static_cast<int>(e), g, pr.d), T,
                            pr.mat, cfg.scheme, cfg.local, sys.mode);
          it[q] = rr.state;
          st.local_iters += rr.iterations;
          sigma[q] = rr.state.sigma;
          L[q] = consistent_tangent(rr.state, pr.states[q], pr.mat, sys.mode);
        }
    } catch (const std::runtime_error& err) {
      st.failure = err.what();
      return st;
    }
    const Eigen::VectorXd R = sys.internal_force(sigma) - Fext;
    const double rn = scaled_norm(sys, R, Fext);
    st.res_history.push_back(rn);
    if (rn < cfg.e_R) {
      pr.states = it;
      st.converged = true;
      return st;
    }
    if (rn >= rn_prev && du_free.size() > 0 && alpha > 1.0 / 64) {
      alpha *= 0.5;
      pr.d = d_base;
      const Eigen::VectorXd scaled = alpha * du_free;
      sys.add_to_full(scaled, pr.d);
      continue;
    }
    rn_prev = rn;
    Eigen::VectorXd du;
    if (!sparse_solve(sys.tangent(L), -sys.restrict_free(R), du)) {
      st.failure = "singular global tangent";
      return st;
    }
    d_base = pr.d;
    du_free = du;
    alpha = 1.0;
    sys.add_to_full(du, pr.d);
  }
  st.failure = "return mapping: max outer iterations";
  return st;
}

StepStats step_parallel_projection(Problem& pr, double T, double load,
                                   const SolverConfig& cfg) {
  StepStats st;
  FemSystem& sys = pr.sys;
  const MaterialParams& p = pr.mat;
  const Eigen::VectorXd Fext = load * sys.load_pattern;
  const int ngp = sys.n_gp();

  std::vector<InternalState> it = pr.states;  // cross-iterated local states
  std::vector<Voigt6> sigma(ngp), corr(ngp, Voigt6::Zero());
  std::vector<Voigt6> lam_hist(ngp, Voigt6::Zero());  // last nonzero direction tensor
  // points whose direction tensor keeps flipping at low stress are handed to
  // the full local solve for the remainder of the step; letting them rejoin
  // the projection iteration sets up a limit cycle between the two treatments
  std::vector<char> defer(ngp, 0);
  Eigen::VectorXd d_base = pr.d, du_free;
  double rn_prev = std::numeric_limits<double>::infinity(), alpha = 1.0;
  std::vector<Mat6> L(ngp);
  Eigen::VectorXd du_prev = Eigen::VectorXd::Zero(sys.mesh.n_dofs());
  bool have_du = false;

  for (int k = 0; k < cfg.max_outer; ++k) {
    ++st.outer;
    double max_h = 0;
    try {
      for (size_t ei = 0; ei < sys.mesh.elems.size(); ++ei) {
        const int e = static_cast<int>(ei);
        for (int g = 0; g < sys.gp_per_elem(); ++g) {
          const int q = sys.gp_index(e, g);
          const Voigt6 eps = sys.strain(e, g, pr.d);
          InternalState& s = it[q];
          const InternalState& sn = pr.states[q];
          corr[q].setZero();

          const TrialResult trial = trial_elastic(sn, eps, T, p, sys.mode);
          const TransformDirection dir = trial.direction;
          if (defer[q] && dir != TransformDirection::None) {
            const ResolveResult rr =
                resolve_local(sn, eps, T, p, cfg.scheme, cfg.local, sys.mode);
            s = rr.state;
            st.local_iters += rr.iterations;
            sigma[q] = s.sigma;
            L[q] = consistent_tangent(s, sn, p, sys.mode);
            continue;
          }
          if (dir == TransformDirection::None) {
            s = sn;  // plain elastic step
            s.direction = TransformDirection::None;
            s.sigma = elastic_stress(s.S, s.et, eps, T, p, sys.mode);
          } else {
            const bool at_bound =
                (dir == TransformDirection::Forward && s.xi >= cfg.local.xi_hi - 1e-12) ||
                (dir == TransformDirection::Reverse && s.xi <= cfg.local.xi_lo + 1e-12);
            if (s.direction != dir && !at_bound) {
              // (re)enter the branch from the converged step-start state
              s = sn;
              if (dir == TransformDirection::Reverse &&
                  sn.direction != TransformDirection::Reverse)
                s.reversal_et = sn.et;
              s.direction = dir;
              s.sigma = trial.sigma_trial;
            }
            bool saturated = false;
            if (at_bound) {
              // saturation holds only while the surface stays active at the
              // bound; a negative phi means the earlier clamp was an
              // iteration overshoot, so the point rejoins the branch
              s.sigma = elastic_stress(s.S, s.et, eps, T, p, sys.mode);
              const Voigt6 lam = lambda_or_zero(s.sigma, s.reversal_et, dir, p);
              saturated = phi_and_partials(s.xi, s.sigma, T, lam, dir, p).phi >= 0;
              s.direction = saturated ? TransformDirection::None : dir;
            }
            if (!saturated) {
              const Voigt6 lam_before = lambda_or_zero(s.sigma, s.reversal_et, dir, p);
              // inside the ramp region, or with the direction tensor flipping
              // sign between outer iterations at low stress, the linearized
              // projection step is unreliable (the direction tensor changes
              // across the step): hand the point to the full local solve
              if ((dir == TransformDirection::Forward && in_lambda_ramp(s.sigma, p)) ||
                  (lam_hist[q].dot(lam_before) < 0 && von_mises(s.sigma) < 1e-3 * p.E_A)) {
                const ResolveResult rr =
                    resolve_local(sn, eps, T, p, cfg.scheme, cfg.local, sys.mode);
                s = rr.state;
                st.local_iters += rr.iterations;
                lam_hist[q].setZero();
                defer[q] = 1;
                sigma[q] = s.sigma;
                L[q] = consistent_tangent(s, sn, p, sys.mode);
                continue;
              }
              if (lam_before.squaredNorm() > 0) lam_hist[q] = lam_before;
              const LocalResidual res = local_residual(s, sn, eps, T, p, sys.mode);
              LocalIncrement inc = delta_nu(s, sn, res, eps, T, p, cfg.scheme, sys.mode);
              ++st.local_iters;
              if (have_du) {
                const Voigt6 deps = sys.quad[e][g].B * sys.elem_vector(e, du_prev);
                const LocalIncrement cs = delta_nu_star(s, sn, deps, T, p, sys.mode);
                inc.dxi += cs.dxi;
                inc.det += cs.det;
                inc.dS += cs.dS;
                inc.dsigma += cs.dsigma;
              }
              const double xi_new = s.xi + inc.dxi;
              if (xi_new > cfg.local.xi_hi || xi_new < cfg.local.xi_lo) {
                const double bound =
                    xi_new > cfg.local.xi_hi ? cfg.local.xi_hi : cfg.local.xi_lo;
                st.local_iters +=
                    saturate_at_bound(s, sn, bound, dir, eps, T, p, cfg.local, sys.mode);
                const Voigt6 lam = lambda_or_zero(s.sigma, s.reversal_et, dir, p);
                if (phi_and_partials(s.xi, s.sigma, T, lam, dir, p).phi >= 0) {
                  s.direction = TransformDirection::None;  // genuinely saturated
                } else {
                  s.direction = dir;  // iteration overshoot, stay on the branch
                  const LocalResidual post = local_residual(s, sn, eps, T, p, sys.mode);
                  max_h = std::max(max_h, residual_norm(post, p));
                  corr[q] = delta_nu(s, sn, post, eps, T, p, LocalScheme::NewtonRaphson,
                                     sys.mode)
                                .dsigma;
                }
              } else {
                s.xi = xi_new;
                s.et += inc.det;
                s.S += inc.dS;
                if (cfg.scheme == LocalScheme::NewtonRaphson)
                  s.sigma += inc.dsigma;
                else
                  s.sigma = elastic_stress(s.S, s.et, eps, T, p, sys.mode);
                // same low-stress flip signature within the increment
                const Voigt6 lam_after = lambda_or_zero(s.sigma, s.reversal_et, dir, p);
                if (lam_before.dot(lam_after) < 0 &&
                    von_mises(s.sigma) < 1e-3 * p.E_A) {
                  const ResolveResult rr =
                      resolve_local(sn, eps, T, p, cfg.scheme, cfg.local, sys.mode);
                  s = rr.state;
                  st.local_iters += rr.iterations;
                  lam_hist[q].setZero();
                  defer[q] = 1;
                } else {
                  // remaining local residual feeds the global right-hand side
                  const LocalResidual post = local_residual(s, sn, eps, T, p, sys.mode);
                  max_h = std::max(max_h, residual_norm(post, p));
                  corr[q] = delta_nu(s, sn, post, eps, T, p, LocalScheme::NewtonRaphson,
                                     sys.mode)
                                .dsigma;
                }
              }
            }
          }
          sigma[q] = s.sigma;
          L[q] = consistent_tangent(s, sn, p, sys.mode);
        }
      }
    } catch (const std::runtime_error& err) {
      st.failure = err.what();
      return st;
    }
    const Eigen::VectorXd R = sys.internal_force(sigma) - Fext;
    const double rn = scaled_norm(sys, R, Fext);
    st.res_history.push_back(rn);
    if (rn < cfg.e_R && max_h < cfg.local.e_H) {
      pr.states = it;
      st.converged = true;
      return st;
    }
    if (rn >= rn_prev && du_free.size() > 0 && alpha > 1.0 / 64) {
      // retreat to a shorter fraction of the last direction, same safeguard
      // as in the return-mapping loop
      alpha *= 0.5;
      const Eigen::VectorXd d_old = pr.d;
      pr.d = d_base;
      const Eigen::VectorXd scaled = alpha * du_free;
      sys.add_to_full(scaled, pr.d);
      du_prev = pr.d - d_old;
      continue;
    }
    rn_prev = rn;
    // predicted equilibrium: the correction shifts the internal force by the
    // stress update the local systems would take at frozen displacement
    const Eigen::VectorXd rhs = -(R + sys.gp_force(corr));
    Eigen::VectorXd du;
    if (!sparse_solve(sys.tangent(L), sys.restrict_free(rhs), du)) {
      st.failure = "singular global tangent";
      return st;
    }
    d_base = pr.d;
    du_free = du;
    alpha = 1.0;
    du_prev.setZero();
    sys.add_to_full(du, du_prev);
    have_du = true;
    pr.d += du_prev;
  }
  st.failure = "parallel projection: max outer iterations";
  return st;
}

StepStats solve_step(Problem& pr, double T, double load, const SolverConfig& cfg) {
  return cfg.strategy == Strategy::ReturnMapping
             ? step_return_mapping(pr, T, load, cfg)
             : step_parallel_projection(pr, T, load, cfg);
}

PathResult run_load_path(Problem& pr, const std::vector<LoadPoint>& path,
                         const SolverConfig& cfg, const StepCallback& cb) {
  PathResult out;
  const auto t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < path.size(); ++i) {
    const StepStats st = solve_step(pr, path[i].T, path[i].load, cfg);
    out.total_outer += st.outer;
    out.total_local += st.local_iters;
    if (!st.converged) {
      out.ok = false;
      out.failed_step = static_cast<int>(i);
      break;
    }
    if (cb) cb(static_cast<int>(i), path[i], pr, st);
  }
  out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Eigen::VectorXd reactions(const Problem& pr, double load) {
  const FemSystem& sys = pr.sys;
  std::vector<Voigt6> sigma(sys.n_gp());
  for (int q = 0; q < sys.n_gp(); ++q) sigma[q] = pr.states[q].sigma;
  const Eigen::VectorXd R = sys.internal_force(sigma) - load * sys.load_pattern;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(sys.mesh.n_dofs());
  for (const auto& [dof, val] : sys.dirichlet) r(dof) = R(dof);
  return r;
}

double max_converging_step(const std::function<Problem()>& make_problem,
                           const std::function<std::vector<LoadPoint>(double)>& make_path,
                           const std::vector<double>& grid, const SolverConfig& cfg) {
  double best = 0;
  for (double step : grid) {
    Problem pr = make_problem();
    const PathResult res = run_load_path(pr, make_path(step), cfg);
    if (res.ok) best = step;
  }
  return best;
}

}  // namespace sma
