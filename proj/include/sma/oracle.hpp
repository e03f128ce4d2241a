#pragma once

#include <functional>

#include "sma/local_update.hpp"

// Independent reference implementations used to verify the closed-form local
// linear algebra and the 1D solution. Nothing here shares code with the
// Schur-reduced update path: the dense oracle assembles the raw block matrix
// of the local system and solves it with an equilibrated full-pivot
// factorization.

namespace sma {

struct DenseLocalSystem {
  Eigen::MatrixXd J;  // 14x14 (full) or 9x9 (uniaxial); unknowns (xi, et, S, sigma)
  Eigen::VectorXd H;
};

// Assembles the block tangent of the local residual. The Phi row is obtained
// by central finite differences of the transformation function; the
// remaining rows use the analytic block entries, including the -sigma/S
// coupling of the stress row to the compliance.
DenseLocalSystem build_dense_local(const InternalState& s, const InternalState& sn,
                                   const Voigt6& eps, double T, const MaterialParams& p,
                                   StressMode mode = StressMode::Full);

// Equilibrated dense solve of J x = rhs (row and column scaling, full-pivot LU).
Eigen::VectorXd equilibrated_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs);

// Reference Newton increment -J^{-1} H.
LocalIncrement dense_delta_nu(const InternalState& s, const InternalState& sn,
                              const Voigt6& eps, double T, const MaterialParams& p,
                              StressMode mode = StressMode::Full);

// Reference coupling increment -J^{-1} (dH/du) du with dH/du du = (0,0,0,S^{-1} deps).
LocalIncrement dense_delta_nu_star(const InternalState& s, const InternalState& sn,
                                   const Voigt6& eps, const Voigt6& deps, double T,
                                   const MaterialParams& p,
                                   StressMode mode = StressMode::Full);

// 2-norm condition number (via SVD).
double condition_number(const Eigen::MatrixXd& J);

// Closed-form 1D solution for the quadratic hardening model under uniaxial
// stress: the martensite fraction on the active transformation surface,
// clamped to [0,1], and the axial transformation strain H sgn(sigma) xi.
struct Analytic1D {
  double xi = 0;
  double et_axial = 0;
};
Analytic1D analytic_1d(double sigma, double T, TransformDirection dir,
                       const MaterialParams& p);

// Central finite difference of a scalar function.
inline double fd_derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want, double floor = 0.0) {
  return std::abs(got - want) / std::max(std::abs(want), std::max(floor, 1e-300));
}

}  // namespace sma
