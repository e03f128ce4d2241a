#include "sma/material.hpp"

#include <algorithm>
#include <cmath>

namespace sma {

namespace {
constexpr double kXiClamp = 1e-12;       // endpoint guard for singular expressions
constexpr double kExpAnchor = 100.0;     // exponential model: 99% transformation anchor
}  // namespace

const char* to_string(HardeningModel m) {
  switch (m) {
    case HardeningModel::Quadratic: return "quadratic";
    case HardeningModel::Cosine: return "cosine";
    case HardeningModel::Exponential: return "exponential";
    case HardeningModel::Smooth: return "smooth";
  }
  return "?";
}

const char* to_string(TransformDirection d) {
  switch (d) {
    case TransformDirection::None: return "none";
    case TransformDirection::Forward: return "forward";
    case TransformDirection::Reverse: return "reverse";
  }
  return "?";
}

HardeningModel hardening_from_string(const std::string& s) {
  if (s == "quadratic") return HardeningModel::Quadratic;
  if (s == "cosine") return HardeningModel::Cosine;
  if (s == "exponential") return HardeningModel::Exponential;
  if (s == "smooth") return HardeningModel::Smooth;
  throw std::invalid_argument("unknown hardening model: " + s);
}

void MaterialParams::calibrate() {
  rho_bM = -rho_ds0 * (M_s - M_f);
  rho_bA = -rho_ds0 * (A_f - A_s);
  mu1 = 0.5 * rho_ds0 * (M_s + A_f);
  Y = 0.25 * rho_ds0 * (M_s + M_f - A_s - A_f);
  mu2 = 0.5 * rho_ds0 * (M_s - A_f) - Y;
  validate();
}

void MaterialParams::validate() const {
  if (E_A <= 0 || E_M <= 0) throw std::invalid_argument("material: moduli must be positive");
  if (nu <= -1 || nu >= 0.5) throw std::invalid_argument("material: nu out of range");
  if (H <= 0) throw std::invalid_argument("material: H must be positive");
  if (!(M_f < M_s && M_s < A_s && A_s < A_f))
    throw std::invalid_argument("material: need M_f < M_s < A_s < A_f");
  if (rho_ds0 >= 0) throw std::invalid_argument("material: rho_ds0 must be negative");
  if (rho_bM <= 0 || rho_bA <= 0 || Y <= 0)
    throw std::invalid_argument("material: calibration produced non-positive constants");
  if (n1 < 1 || n2 < 1 || n3 < 1 || n4 < 1)
    throw std::invalid_argument("material: smooth exponents must be >= 1");
}

MaterialParams MaterialParams::niti50(HardeningModel model) {
  MaterialParams p;
  p.E_A = 32.5e9;
  p.E_M = 23.0e9;
  p.nu = 0.33;
  p.alpha = 22.0e-6;
  p.c = 400.0;
  p.M_s = 226.0;
  p.M_f = 194.0;
  p.A_s = 241.0;
  p.A_f = 290.0;
  p.H = 0.033;
  p.rho = 6500.0;
  p.T0 = 300.0;
  p.rho_ds0 = -11.55e4;
  p.hardening = model;
  p.calibrate();
  return p;
}

HardeningEval hardening(double xi, TransformDirection dir, const MaterialParams& p) {
  if (dir == TransformDirection::None)
    throw std::invalid_argument("hardening: needs an active branch");
  // only expressions singular at the endpoints see the clamped value
  const double x = std::clamp(xi, 0.0, 1.0);
  const double xc = std::clamp(xi, kXiClamp, 1.0 - kXiClamp);
  const bool fwd = dir == TransformDirection::Forward;
  const double lin = p.mu1 + (fwd ? p.mu2 : -p.mu2);
  const double b = fwd ? p.rho_bM : p.rho_bA;
  HardeningEval h;
  switch (p.hardening) {
    case HardeningModel::Quadratic: {
      h.f = 0.5 * b * x * x + lin * x;
      h.df = b * x + lin;
      h.d2f = b;
      break;
    }
    case HardeningModel::Cosine: {
      // nonlinear part k [pi - acos(2x-1)], k = b/pi, zero at x=0 and b at x=1
      const double k = b / M_PI;
      const double ac = std::acos(2.0 * x - 1.0);
      const double integral =
          0.5 * (2.0 * x - 1.0) * ac - std::sqrt(x * (1.0 - x)) + 0.5 * M_PI;
      h.f = k * (M_PI * x - integral) + lin * x;
      h.df = k * (M_PI - ac) + lin;
      h.d2f = k / std::sqrt(xc * (1.0 - xc));
      break;
    }
    case HardeningModel::Exponential: {
      const double k = b / std::log(kExpAnchor);
      if (fwd) {
        // -k ln(1-x): zero at x=0, reaches b at 99% transformation
        const double om = 1.0 - std::min(x, 1.0 - kXiClamp);
        h.f = k * (om * std::log(om) + x) + lin * x;
        h.df = -k * std::log(om) + lin;
        h.d2f = k / om;
      } else {
        // b + k ln x: b at x=1, zero at x=0.01
        h.f = k * (xc * std::log(xc) - x) + (b + lin) * x;
        h.df = b + k * std::log(xc) + lin;
        h.d2f = k / xc;
      }
    } break;
    case HardeningModel::Smooth: {
      const double na = fwd ? p.n1 : p.n3;
      const double nb = fwd ? p.n2 : p.n4;
      h.f = 0.5 * b *
                (x + std::pow(x, na + 1.0) / (na + 1.0) +
                 std::pow(1.0 - x, nb + 1.0) / (nb + 1.0)) +
            lin * x - 0.5 * b / (nb + 1.0);
      h.df = 0.5 * b * (1.0 + std::pow(x, na) - std::pow(1.0 - x, nb)) + lin;
      h.d2f = 0.5 * b * (na * std::pow(x, na - 1.0) + nb * std::pow(1.0 - x, nb - 1.0));
      break;
    }
  }
  return h;
}

Voigt6 transformation_tensor(const Voigt6& sigma, const Voigt6& reversal_et,
                             TransformDirection dir, const MaterialParams& p) {
  if (dir == TransformDirection::Forward) {
    const double vm = von_mises(sigma);
    if (vm <= 0.0) throw ZeroDirectionError("transformation_tensor: zero effective stress");
    // strain-like vector: engineering shear, hence the shear weight
    return (1.5 * p.H / vm) * shear_weight().cwiseProduct(deviatoric(sigma));
  }
  if (dir == TransformDirection::Reverse) {
    const double eff = effective_strain(reversal_et);
    if (eff <= 0.0) throw ZeroDirectionError("transformation_tensor: zero reversal strain");
    return (p.H / eff) * reversal_et;
  }
  throw std::invalid_argument("transformation_tensor: needs an active branch");
}

Mat6 d_lambda_d_sigma(const Voigt6& sigma, TransformDirection dir, const MaterialParams& p) {
  if (dir == TransformDirection::Reverse) return Mat6::Zero();
  const double vm = von_mises(sigma);
  if (vm <= 0.0) throw ZeroDirectionError("d_lambda_d_sigma: zero effective stress");
  const Voigt6 m = voigt_identity();
  const Voigt6 w = shear_weight();
  const Voigt6 wd = w.cwiseProduct(deviatoric(sigma));
  Mat6 wp = w.asDiagonal();
  wp -= (1.0 / 3.0) * m * m.transpose();
  return (1.5 * p.H / vm) * (wp - 1.5 / (vm * vm) * wd * wd.transpose());
}

double driving_force(double xi, const Voigt6& sigma, double T, const Voigt6& lambda,
                     TransformDirection dir, const MaterialParams& p) {
  const Mat6 dSc = p.dS() * unit_compliance_shape(p.nu);
  const HardeningEval h = hardening(xi, dir, p);
  return ddot_stress_strain(sigma, lambda) + 0.5 * sigma.dot(dSc * sigma) +
         p.rho_ds0 * T - h.df;
}

PhiPartials phi_and_partials(double xi, const Voigt6& sigma, double T, const Voigt6& lambda,
                             TransformDirection dir, const MaterialParams& p) {
  if (dir == TransformDirection::None)
    throw std::invalid_argument("phi_and_partials: needs an active branch");
  const double sgn = dir == TransformDirection::Forward ? 1.0 : -1.0;
  const HardeningEval h = hardening(xi, dir, p);
  PhiPartials out;
  out.phi = sgn * driving_force(xi, sigma, T, lambda, dir, p) - p.Y;
  // d(sigma:Lambda)/dsigma = Lambda: the direction tensor is homogeneous of
  // degree zero, so (dLambda/dsigma)^T sigma vanishes.
  out.dphi_dsig = sgn * (lambda + p.dS() * (unit_compliance_shape(p.nu) * sigma));
  out.dphi_dxi = -sgn * h.d2f;
  out.dphi_dT = sgn * p.rho_ds0;
  return out;
}

}  // namespace sma
