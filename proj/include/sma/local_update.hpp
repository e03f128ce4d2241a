#pragma once

#include "sma/material.hpp"
#include "sma/voigt.hpp"

namespace sma {

enum class LocalScheme { NewtonRaphson, RadialReturn, ClosestPoint, CuttingPlane };

const char* to_string(LocalScheme s);
LocalScheme scheme_from_string(const std::string& s);

// Uniaxial mode condenses the lateral directions under the zero-lateral-
// stress assumption of a bar: sigma = (s,0,0,0,0,0), only the axial strain
// component of eps is prescribed, and the axial compliance reduces to the
// scalar S. The transformation strain remains a full Voigt vector.
enum class StressMode { Full, Uniaxial };

struct ZeroDenominatorError : std::runtime_error {
  explicit ZeroDenominatorError(const std::string& what) : std::runtime_error(what) {}
};
struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalState {
  double xi = 0.0;
  Voigt6 et = Voigt6::Zero();          // transformation strain (engineering shear)
  double S = 0.0;                      // scalar compliance
  Voigt6 sigma = Voigt6::Zero();
  Voigt6 reversal_et = Voigt6::Zero(); // snapshot at the last forward->reverse switch
  TransformDirection direction = TransformDirection::None;

  static InternalState austenite(const MaterialParams& p) {
    InternalState s;
    s.S = p.S_A();
    return s;
  }
};

struct LocalResidual {
  double H_phi = 0;
  Voigt6 H_et = Voigt6::Zero();
  double H_S = 0;
  Voigt6 H_sigma = Voigt6::Zero();  // only component 0 is used in uniaxial mode
};

struct LocalIncrement {
  double dxi = 0;
  Voigt6 det = Voigt6::Zero();
  double dS = 0;
  Voigt6 dsigma = Voigt6::Zero();
};

struct LocalConfig {
  double e_H = 1e-6;    // tolerance on the normalized residual blocks
  int max_iter = 50;
  double xi_lo = 0.0, xi_hi = 1.0;
};

struct TrialResult {
  Voigt6 sigma_trial = Voigt6::Zero();
  double phi_fwd = 0;
  double phi_rev = 0;
  TransformDirection direction = TransformDirection::None;
};

// Direction tensor of the active branch with a zero fallback: below the
// effective-stress floor (forward) or with an empty reversal record
// (reverse) the direction is indeterminate and transformation proceeds
// without oriented strain.
// True below the effective-stress floor where the forward direction tensor
// ramps linearly through zero.
bool in_lambda_ramp(const Voigt6& sigma, const MaterialParams& p);

Voigt6 lambda_or_zero(const Voigt6& sigma, const Voigt6& reversal_et,
                      TransformDirection dir, const MaterialParams& p);

// Stress from the elastic relation at fixed internal variables.
Voigt6 elastic_stress(double S, const Voigt6& et, const Voigt6& eps, double T,
                      const MaterialParams& p, StressMode mode);

// Elastic predictor: freeze internal variables, compute the trial stress and
// both transformation functions, pick the active branch by loading check.
TrialResult trial_elastic(const InternalState& sn, const Voigt6& eps, double T,
                          const MaterialParams& p, StressMode mode);

TransformDirection detect_direction(double phi_fwd, double phi_rev, double xi,
                                    const LocalConfig& cfg = {});

// Backward-Euler residual blocks of the local system at the current iterate.
LocalResidual local_residual(const InternalState& s, const InternalState& sn,
                             const Voigt6& eps, double T, const MaterialParams& p,
                             StressMode mode);

// max of the four block norms, each scaled by its natural magnitude
// (Y, H, dS, E_A).
double residual_norm(const LocalResidual& r, const MaterialParams& p);

// One closed-form increment of the local system, Schur-reduced so that the
// only matrix inverse is the 6x6 zeta = S_mat + dLambda/dsigma * dxi.
// The scheme selects which residual blocks are strictly enforced.
LocalIncrement delta_nu(const InternalState& s, const InternalState& sn,
                        const LocalResidual& r, const Voigt6& eps, double T,
                        const MaterialParams& p, LocalScheme scheme, StressMode mode);

// Cross-iteration coupling increment: the local response to a strain change
// deps = B * du from the previous global iteration, -(dH/dnu)^{-1}(dH/du)du.
LocalIncrement delta_nu_star(const InternalState& s, const InternalState& sn,
                             const Voigt6& deps, double T, const MaterialParams& p,
                             StressMode mode);

// Algorithmically consistent tangent d sigma / d eps. Elastic states get the
// inverse compliance; in uniaxial mode entry (0,0) carries the condensed
// axial modulus.
Mat6 consistent_tangent(const InternalState& s, const InternalState& sn,
                        const MaterialParams& p, StressMode mode);

struct ResolveResult {
  InternalState state;
  int iterations = 0;       // delta_nu evaluations
  bool converged = true;
  bool saturated = false;   // hit a xi bound and finished elastically
};

// Full local solve at frozen total strain: elastic predictor, direction
// detection, scheme iteration with the xi-bound and divergence safeguards.
// Solves the strain relation for sigma with the fraction pinned at a bound;
// returns the iteration count and leaves the state saturated.
int saturate_at_bound(InternalState& s, const InternalState& sn, double bound,
                      TransformDirection dir, const Voigt6& eps, double T,
                      const MaterialParams& p, const LocalConfig& cfg,
                      StressMode mode);

ResolveResult resolve_local(const InternalState& sn, const Voigt6& eps, double T,
                            const MaterialParams& p, LocalScheme scheme,
                            const LocalConfig& cfg, StressMode mode);

}  // namespace sma
