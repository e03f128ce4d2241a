#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Voigt notation kernel. Component order is (xx, yy, zz, yz, xz, xy).
// Stress-like vectors carry tensor shear components, strain-like vectors
// carry engineering shear (gamma = 2 eps). Contractions between a stress
// and a strain are therefore plain dot products; contractions between two
// stress-like vectors need the shear weight diag(1,1,1,2,2,2).

namespace sma {

using Voigt6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// m = (1,1,1,0,0,0), the Voigt identity used for traces and thermal strain.
inline Voigt6 voigt_identity() {
  Voigt6 m;
  m << 1, 1, 1, 0, 0, 0;
  return m;
}

// W = diag(1,1,1,2,2,2).
inline Voigt6 shear_weight() {
  Voigt6 w;
  w << 1, 1, 1, 2, 2, 2;
  return w;
}

inline Voigt6 deviatoric(const Voigt6& s) {
  const double p = (s(0) + s(1) + s(2)) / 3.0;
  Voigt6 d = s;
  d(0) -= p;
  d(1) -= p;
  d(2) -= p;
  return d;
}

// sigma : sigma with the shear weight, for two stress-like vectors.
inline double ddot_stress_stress(const Voigt6& a, const Voigt6& b) {
  return a.cwiseProduct(shear_weight()).dot(b);
}

// sigma : eps for one stress-like and one strain-like vector.
inline double ddot_stress_strain(const Voigt6& sig, const Voigt6& eps) {
  return sig.dot(eps);
}

inline double von_mises(const Voigt6& sig) {
  const Voigt6 d = deviatoric(sig);
  return std::sqrt(1.5 * ddot_stress_stress(d, d));
}

// Effective strain sqrt(2/3 e:e) of a strain-like vector (engineering shear).
inline double effective_strain(const Voigt6& e) {
  Voigt6 winv;
  winv << 1, 1, 1, 0.5, 0.5, 0.5;
  return std::sqrt(2.0 / 3.0 * e.cwiseProduct(winv).dot(e));
}

// Isotropic compliance in Voigt form, S_mat = S * c(nu):
// unit diagonal and -nu off-diagonal in the normal block, 2(1+nu) on the
// shear diagonal. Maps stress to strain-like (engineering shear) vectors.
Mat6 unit_compliance_shape(double nu);
Mat6 compliance_matrix(double S, double nu);

// Dense 6x6 inverse via full-pivot elimination. Throws SingularMatrixError
// when the matrix is numerically rank deficient.
Mat6 invert6(const Mat6& a);

}  // namespace sma
