#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sma/voigt.hpp"

using namespace sma;

namespace {

// independent full-tensor reference for the Voigt contractions
Eigen::Matrix3d tensor_of_stress(const Voigt6& v) {
  Eigen::Matrix3d t;
  t << v(0), v(5), v(4), v(5), v(1), v(3), v(4), v(3), v(2);
  return t;
}

Eigen::Matrix3d tensor_of_strain(const Voigt6& v) {
  Eigen::Matrix3d t;
  t << v(0), 0.5 * v(5), 0.5 * v(4), 0.5 * v(5), v(1), 0.5 * v(3), 0.5 * v(4), 0.5 * v(3),
      v(2);
  return t;
}

Voigt6 random_voigt(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Voigt6 v;
  for (int i = 0; i < 6; ++i) v(i) = u(rng);
  return v;
}

}  // namespace

TEST_CASE("deviatoric removes the trace and is idempotent") {
  std::mt19937 rng(42);
  for (int k = 0; k < 100; ++k) {
    const Voigt6 s = random_voigt(rng, 1e8);
    const Voigt6 d = deviatoric(s);
    CHECK(std::abs(d(0) + d(1) + d(2)) < 1e-6);
    CHECK((deviatoric(d) - d).norm() < 1e-8 * std::max(1.0, d.norm()));
    for (int i = 3; i < 6; ++i) CHECK(d(i) == s(i));
  }
}

TEST_CASE("contractions match the full-tensor reference") {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Voigt6 a = random_voigt(rng, 1e7);
    const Voigt6 b = random_voigt(rng, 1e-2);
    const double want_ss = (tensor_of_stress(a).array() * tensor_of_stress(a).array()).sum();
    CHECK(ddot_stress_stress(a, a) == doctest::Approx(want_ss).epsilon(1e-12));
    const double want_se = (tensor_of_stress(a).array() * tensor_of_strain(b).array()).sum();
    CHECK(ddot_stress_strain(a, b) == doctest::Approx(want_se).epsilon(1e-12));
  }
}

TEST_CASE("von Mises: uniaxial value and hydrostatic invariance") {
  Voigt6 s = Voigt6::Zero();
  s(0) = 123.4e6;
  CHECK(von_mises(s) == doctest::Approx(123.4e6).epsilon(1e-14));
  std::mt19937 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Voigt6 a = random_voigt(rng, 5e7);
    Voigt6 b = a;
    const double p = 1e8;
    b(0) += p;
    b(1) += p;
    b(2) += p;
    CHECK(von_mises(b) == doctest::Approx(von_mises(a)).epsilon(1e-9));
    // frame rotation invariance via eigenvalue formula
    const Eigen::Matrix3d t = tensor_of_stress(a);
    const Eigen::Matrix3d dev =
        t - Eigen::Matrix3d::Identity() * (t.trace() / 3.0);
    const double want = std::sqrt(1.5 * (dev.array() * dev.array()).sum());
    CHECK(von_mises(a) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("effective strain matches the tensor definition") {
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Voigt6 e = random_voigt(rng, 0.05);
    const Eigen::Matrix3d t = tensor_of_strain(e);
    const double want = std::sqrt(2.0 / 3.0 * (t.array() * t.array()).sum());
    CHECK(effective_strain(e) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("compliance matrix: shape, symmetry, uniaxial response") {
  const double S = 1.0 / 32.5e9, nu = 0.33;
  const Mat6 c = compliance_matrix(S, nu);
  CHECK(c(0, 0) == doctest::Approx(3.0769230769e-11).epsilon(1e-9));
  CHECK(c(0, 1) == doctest::Approx(-nu * S).epsilon(1e-14));
  CHECK(c(3, 3) == doctest::Approx(2.0 * (1.0 + nu) * S).epsilon(1e-14));
  CHECK((c - c.transpose()).norm() == 0.0);
  Voigt6 sig = Voigt6::Zero();
  sig(0) = 1e8;
  const Voigt6 eps = c * sig;
  CHECK(eps(0) == doctest::Approx(S * 1e8).epsilon(1e-14));
  CHECK(eps(1) == doctest::Approx(-nu * S * 1e8).epsilon(1e-14));
  CHECK_THROWS(compliance_matrix(-1.0, nu));
  CHECK_THROWS(compliance_matrix(S, 0.6));
}

TEST_CASE("invert6 round trip on random well-conditioned matrices") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 1000; ++k) {
    Mat6 a;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = u(rng);
    a += 8.0 * Mat6::Identity();  // keep it comfortably invertible
    const Mat6 inv = invert6(a);
    CHECK((a * inv - Mat6::Identity()).norm() < 1e-10);
  }
  CHECK_THROWS_AS(invert6(Mat6::Zero()), SingularMatrixError);
  Mat6 rank_def = Mat6::Zero();
  rank_def(0, 0) = 1.0;
  CHECK_THROWS_AS(invert6(rank_def), SingularMatrixError);
}
