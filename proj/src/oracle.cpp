#include "sma/oracle.hpp"

#include <cmath>

namespace sma {

namespace {

// Phi at given (xi, sigma) with the branch direction tensor recomputed from
// sigma (forward) or taken from the frozen reversal record (reverse).
double phi_at(double xi, const Voigt6& sigma, const InternalState& s, double T,
              const MaterialParams& p) {
  const Voigt6 lam = lambda_or_zero(sigma, s.reversal_et, s.direction, p);
  return phi_and_partials(xi, sigma, T, lam, s.direction, p).phi;
}

Eigen::MatrixXd compliance_inverse_dense(double S, double nu, int n) {
  const Mat6 c = compliance_matrix(S, nu);
  if (n == 6) return invert6(c);
  Eigen::MatrixXd out(1, 1);
  out(0, 0) = 1.0 / S;  // uniaxial condensation
  return out;
}

}  // namespace

DenseLocalSystem build_dense_local(const InternalState& s, const InternalState& sn,
                                   const Voigt6& eps, double T, const MaterialParams& p,
                                   StressMode mode) {
  const int ns = mode == StressMode::Full ? 6 : 1;  // active stress components
  const int n = 1 + 6 + 1 + ns;
  DenseLocalSystem sys;
  sys.J = Eigen::MatrixXd::Zero(n, n);
  sys.H = Eigen::VectorXd::Zero(n);

  const LocalResidual r = local_residual(s, sn, eps, T, p, mode);
  sys.H(0) = r.H_phi;
  sys.H.segment(1, 6) = r.H_et;
  sys.H(7) = r.H_S;
  for (int i = 0; i < ns; ++i) sys.H(8 + i) = r.H_sigma(i);

  const Voigt6 lam = lambda_or_zero(s.sigma, s.reversal_et, s.direction, p);
  const Mat6 M = (s.direction == TransformDirection::Forward &&
                  von_mises(s.sigma) > 1e-7 * p.E_A)
                     ? d_lambda_d_sigma(s.sigma, s.direction, p)
                     : Mat6::Zero();
  const double dxi_n = s.xi - sn.xi;

  // Phi row by central differences
  const double h_xi = 1e-7;
  sys.J(0, 0) = (phi_at(s.xi + h_xi, s.sigma, s, T, p) -
                 phi_at(s.xi - h_xi, s.sigma, s, T, p)) /
                (2.0 * h_xi);
  // step proportional to the stress magnitude keeps the central-difference
  // truncation error of the curved sigma:Lambda term near roundoff level
  const double h_sig = 1e-6 * std::max(von_mises(s.sigma), 1e-3 * p.E_A);
  for (int j = 0; j < ns; ++j) {
    Voigt6 up = s.sigma, dn = s.sigma;
    up(j) += h_sig;
    dn(j) -= h_sig;
    sys.J(0, 8 + j) = (phi_at(s.xi, up, s, T, p) - phi_at(s.xi, dn, s, T, p)) / (2.0 * h_sig);
  }

  // transformation-strain rows
  for (int i = 0; i < 6; ++i) {
    sys.J(1 + i, 0) = lam(i);
    sys.J(1 + i, 1 + i) = -1.0;
    for (int j = 0; j < ns; ++j) sys.J(1 + i, 8 + j) = dxi_n * M(i, j);
  }

  // compliance row
  sys.J(7, 0) = p.dS();
  sys.J(7, 7) = -1.0;

  // stress rows: -S^{-1} et - (sigma/S) S - sigma
  const Eigen::MatrixXd cinv = compliance_inverse_dense(s.S, p.nu, ns);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < (mode == StressMode::Full ? 6 : 1); ++j)
      sys.J(8 + i, 1 + j) = -cinv(i, j);
    sys.J(8 + i, 7) = -s.sigma(i) / s.S;
    sys.J(8 + i, 8 + i) = -1.0;
  }
  return sys;
}

Eigen::VectorXd equilibrated_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(J.rows());
  Eigen::VectorXd rsc(n), csc(n);
  for (int i = 0; i < n; ++i) {
    const double m = J.row(i).cwiseAbs().maxCoeff();
    rsc(i) = m > 0 ? 1.0 / m : 1.0;
  }
  Eigen::MatrixXd A = rsc.asDiagonal() * J;
  for (int j = 0; j < n; ++j) {
    const double m = A.col(j).cwiseAbs().maxCoeff();
    csc(j) = m > 0 ? 1.0 / m : 1.0;
  }
  A = A * csc.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw SingularMatrixError("equilibrated_solve: singular local tangent");
  const Eigen::VectorXd y = lu.solve(rsc.asDiagonal() * rhs);
  return csc.asDiagonal() * y;
}

namespace {
LocalIncrement unpack(const Eigen::VectorXd& x, int ns) {
  LocalIncrement inc;
  inc.dxi = x(0);
  inc.det = x.segment(1, 6);
  inc.dS = x(7);
  inc.dsigma = Voigt6::Zero();
  for (int i = 0; i < ns; ++i) inc.dsigma(i) = x(8 + i);
  return inc;
}
}  // namespace

LocalIncrement dense_delta_nu(const InternalState& s, const InternalState& sn,
                              const Voigt6& eps, double T, const MaterialParams& p,
                              StressMode mode) {
  const DenseLocalSystem sys = build_dense_local(s, sn, eps, T, p, mode);
  return unpack(equilibrated_solve(sys.J, -sys.H), mode == StressMode::Full ? 6 : 1);
}

LocalIncrement dense_delta_nu_star(const InternalState& s, const InternalState& sn,
                                   const Voigt6& eps, const Voigt6& deps, double T,
                                   const MaterialParams& p, StressMode mode) {
  const DenseLocalSystem sys = build_dense_local(s, sn, eps, T, p, mode);
  const int ns = mode == StressMode::Full ? 6 : 1;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.J.rows());
  if (mode == StressMode::Full) {
    const Mat6 cinv = invert6(compliance_matrix(s.S, p.nu));
    rhs.segment(8, 6) = -(cinv * deps);
  } else {
    rhs(8) = -deps(0) / s.S;
  }
  return unpack(equilibrated_solve(sys.J, rhs), ns);
}

double condition_number(const Eigen::MatrixXd& J) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

Analytic1D analytic_1d(double sigma, double T, TransformDirection dir,
                       const MaterialParams& p) {
  if (p.hardening != HardeningModel::Quadratic)
    throw std::invalid_argument("analytic_1d: quadratic hardening only");
  const double drive = std::abs(sigma) * p.H + 0.5 * p.dS() * sigma * sigma;
  Analytic1D out;
  if (dir == TransformDirection::Forward)
    out.xi = (drive + p.rho_ds0 * (T - p.M_s)) / p.rho_bM;
  else if (dir == TransformDirection::Reverse)
    out.xi = (drive + p.rho_ds0 * (T - p.A_f)) / p.rho_bA;
  else
    throw std::invalid_argument("analytic_1d: needs an active branch");
  out.xi = std::clamp(out.xi, 0.0, 1.0);
  out.et_axial = sigma == 0.0 ? 0.0 : p.H * (sigma > 0 ? 1.0 : -1.0) * out.xi;
  return out;
}

}  // namespace sma
