#pragma once

#include <string>

#include "sma/voigt.hpp"

namespace sma {

enum class HardeningModel { Quadratic, Cosine, Exponential, Smooth };
enum class TransformDirection { None, Forward, Reverse };

struct ZeroDirectionError : std::runtime_error {
  explicit ZeroDirectionError(const std::string& what) : std::runtime_error(what) {}
};

const char* to_string(HardeningModel m);
const char* to_string(TransformDirection d);
HardeningModel hardening_from_string(const std::string& s);

// Isotropic SMA parameter set. Phase-diagram constants (rho_bM, rho_bA, mu1,
// mu2, Y) are derived from the transformation temperatures by calibrate();
// the internal-energy offset rho*du0 is absorbed into mu1, so only the
// calibrated combination is ever exposed.
struct MaterialParams {
  double E_A = 0, E_M = 0;   // austenite / martensite Young's moduli [Pa]
  double nu = 0.33;          // Poisson ratio, shared by both phases
  double alpha = 0;          // thermal expansion [1/K]
  double c = 0;              // specific heat [J/(kg K)]
  double M_s = 0, M_f = 0;   // martensite start / finish [K]
  double A_s = 0, A_f = 0;   // austenite start / finish [K]
  double H = 0;              // maximum transformation strain
  double rho = 0;            // density [kg/m^3]
  double T0 = 0;             // reference temperature [K]
  double rho_ds0 = 0;        // rho * delta s0 [J/(m^3 K)], negative

  HardeningModel hardening = HardeningModel::Quadratic;
  double n1 = 1, n2 = 1, n3 = 1, n4 = 1;  // smooth-model exponents

  // Calibrated constants (filled by calibrate()).
  double rho_bM = 0;  // forward hardening scale [J/m^3]
  double rho_bA = 0;  // reverse hardening scale [J/m^3]
  double mu1 = 0;     // mu1 + rho*du0
  double mu2 = 0;
  double Y = 0;       // dissipation threshold [J/m^3]

  double S_A() const { return 1.0 / E_A; }
  double S_M() const { return 1.0 / E_M; }
  double dS() const { return S_M() - S_A(); }

  // Fixes the phase-diagram constants so that at zero stress the forward
  // surface passes through (xi=0, M_s) and (xi=1, M_f) and the reverse
  // surface through (xi=1, A_s) and (xi=0, A_f). Only Y + mu2 is observable;
  // the split follows the usual convention Y = rho_ds0 (M_s+M_f-A_s-A_f)/4.
  void calibrate();
  void validate() const;

  static MaterialParams niti50(HardeningModel model = HardeningModel::Quadratic);
};

// Scalar compliance by the rule of mixtures.
inline double compliance_at(double xi, const MaterialParams& p) {
  return p.S_A() + xi * p.dS();
}

struct HardeningEval {
  double f = 0;    // hardening energy
  double df = 0;   // d f / d xi (mu1 folded in)
  double d2f = 0;  // d^2 f / d xi^2
};

// Hardening function of the active branch. Endpoint-singular sub-expressions
// (cosine curvature, exponential logs) are evaluated with xi nudged off the
// bounds so the result stays finite; regular terms use xi as given.
HardeningEval hardening(double xi, TransformDirection dir, const MaterialParams& p);

// Transformation direction tensor (strain-like Voigt vector, effective
// magnitude H). Forward: 3/2 H dev(sigma)/vm(sigma); reverse: H et_r/eff(et_r)
// from the strain recorded at the last forward-to-reverse switch. Throws
// ZeroDirectionError when the defining quantity vanishes.
Voigt6 transformation_tensor(const Voigt6& sigma, const Voigt6& reversal_et,
                             TransformDirection dir, const MaterialParams& p);

// d Lambda / d sigma. Zero for the reverse branch (the direction is frozen).
Mat6 d_lambda_d_sigma(const Voigt6& sigma, TransformDirection dir, const MaterialParams& p);

// Thermodynamic driving force conjugate to xi.
double driving_force(double xi, const Voigt6& sigma, double T, const Voigt6& lambda,
                     TransformDirection dir, const MaterialParams& p);

struct PhiPartials {
  double phi = 0;
  Voigt6 dphi_dsig = Voigt6::Zero();  // strain-like
  double dphi_dxi = 0;
  double dphi_dT = 0;
};

// Transformation function Phi = Pi - Y (forward) or -Pi - Y (reverse) and
// its partial derivatives. lambda must be the direction tensor of the branch
// (pass zero at vanishing effective stress / reversal strain).
PhiPartials phi_and_partials(double xi, const Voigt6& sigma, double T, const Voigt6& lambda,
                             TransformDirection dir, const MaterialParams& p);

}  // namespace sma
