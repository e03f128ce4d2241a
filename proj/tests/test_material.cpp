#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sma/material.hpp"
#include "sma/oracle.hpp"

using namespace sma;

namespace {

const std::vector<HardeningModel> kModels = {HardeningModel::Quadratic,
                                             HardeningModel::Cosine,
                                             HardeningModel::Exponential,
                                             HardeningModel::Smooth};

Voigt6 random_stress(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Voigt6 v;
  for (int i = 0; i < 6; ++i) v(i) = u(rng);
  return v;
}

}  // namespace

TEST_CASE("calibration fixes the zero-stress phase diagram") {
  // derived by hand from the four zero-stress surface conditions:
  //   rho_bM = -rho_ds0 (M_s - M_f) = 11.55e4 * 32   = 3.6960e6
  //   rho_bA = -rho_ds0 (A_f - A_s) = 11.55e4 * 49   = 5.6595e6
  //   mu1    = rho_ds0 (M_s + A_f)/2                 = -2.97990e7
  //   Y+mu2  = rho_ds0 (M_s - A_f)/2                 = 3.6960e6
  const MaterialParams p = MaterialParams::niti50();
  CHECK(p.rho_bM == doctest::Approx(3.6960e6).epsilon(1e-12));
  CHECK(p.rho_bA == doctest::Approx(5.6595e6).epsilon(1e-12));
  CHECK(p.mu1 == doctest::Approx(-2.97990e7).epsilon(1e-12));
  CHECK(p.Y + p.mu2 == doctest::Approx(3.6960e6).epsilon(1e-12));
  CHECK(p.Y > 0);
}

TEST_CASE("calibration consistency at the surface anchor points") {
  const Voigt6 z = Voigt6::Zero();
  for (auto m : kModels) {
    CAPTURE(to_string(m));
    const MaterialParams p = MaterialParams::niti50(m);
    const double phi_f0 =
        phi_and_partials(0.0, z, p.M_s, z, TransformDirection::Forward, p).phi;
    CHECK(std::abs(phi_f0) < 1e-6 * p.Y);
    const double phi_r1 =
        phi_and_partials(1.0, z, p.A_s, z, TransformDirection::Reverse, p).phi;
    CHECK(std::abs(phi_r1) < 1e-6 * p.Y);
    if (m != HardeningModel::Exponential) {
      // the other two endpoints hold exactly for models finite at the ends
      const double phi_f1 =
          phi_and_partials(1.0, z, p.M_f, z, TransformDirection::Forward, p).phi;
      CHECK(std::abs(phi_f1) < 2e-3 * p.Y);  // endpoint clamp perturbs sqrt models
      const double phi_r0 =
          phi_and_partials(0.0, z, p.A_f, z, TransformDirection::Reverse, p).phi;
      CHECK(std::abs(phi_r0) < 2e-3 * p.Y);
    }
  }
}

TEST_CASE("hardening derivatives match finite differences") {
  for (auto m : kModels) {
    CAPTURE(to_string(m));
    MaterialParams p = MaterialParams::niti50(m);
    if (m == HardeningModel::Smooth) {
      p.n1 = 2.0;
      p.n2 = 3.0;
      p.n3 = 2.5;
      p.n4 = 1.5;
    }
    for (auto dir : {TransformDirection::Forward, TransformDirection::Reverse}) {
      for (double xi : {0.1, 0.35, 0.6, 0.85}) {
        const double h = 1e-6;
        const double fd_df = fd_derivative(
            [&](double x) { return hardening(x, dir, p).f; }, xi, h);
        const double fd_d2f = fd_derivative(
            [&](double x) { return hardening(x, dir, p).df; }, xi, h);
        const HardeningEval e = hardening(xi, dir, p);
        CHECK(rel_err(e.df, fd_df) < 1e-6);
        CHECK(rel_err(e.d2f, fd_d2f) < 1e-6);
        CHECK(e.d2f > 0);  // convex hardening on (0,1)
      }
    }
  }
}

TEST_CASE("quadratic hardening closed form") {
  const MaterialParams p = MaterialParams::niti50();
  const HardeningEval f0 = hardening(0.0, TransformDirection::Forward, p);
  CHECK(std::abs(f0.f) < 1e-3);
  CHECK(f0.df == doctest::Approx(p.mu1 + p.mu2).epsilon(1e-6));
  const HardeningEval f = hardening(0.4, TransformDirection::Forward, p);
  CHECK(f.df == doctest::Approx(p.rho_bM * 0.4 + p.mu1 + p.mu2).epsilon(1e-12));
  CHECK(f.d2f == doctest::Approx(p.rho_bM).epsilon(1e-12));
}

TEST_CASE("smooth model with unit exponents degenerates to quadratic") {
  const MaterialParams q = MaterialParams::niti50(HardeningModel::Quadratic);
  const MaterialParams s = MaterialParams::niti50(HardeningModel::Smooth);
  for (auto dir : {TransformDirection::Forward, TransformDirection::Reverse})
    for (double xi : {0.05, 0.3, 0.7, 0.95}) {
      const HardeningEval a = hardening(xi, dir, q);
      const HardeningEval b = hardening(xi, dir, s);
      CHECK(rel_err(b.df, a.df) < 1e-12);
      CHECK(rel_err(b.d2f, a.d2f) < 1e-12);
    }
}

TEST_CASE("forward transformation tensor: uniaxial value, trace, magnitude") {
  const MaterialParams p = MaterialParams::niti50();
  Voigt6 sig = Voigt6::Zero();
  sig(0) = 2e8;
  const Voigt6 lam = transformation_tensor(sig, Voigt6::Zero(), TransformDirection::Forward, p);
  CHECK(lam(0) == doctest::Approx(p.H).epsilon(1e-12));
  CHECK(lam(1) == doctest::Approx(-0.5 * p.H).epsilon(1e-12));
  CHECK(lam(2) == doctest::Approx(-0.5 * p.H).epsilon(1e-12));
  std::mt19937 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Voigt6 s = random_stress(rng, 3e8);
    const Voigt6 l = transformation_tensor(s, Voigt6::Zero(), TransformDirection::Forward, p);
    CHECK(std::abs(l(0) + l(1) + l(2)) < 1e-12);
    CHECK(effective_strain(l) == doctest::Approx(p.H).epsilon(1e-10));
    // scale invariance
    const Voigt6 l2 =
        transformation_tensor(3.7 * s, Voigt6::Zero(), TransformDirection::Forward, p);
    CHECK((l2 - l).norm() < 1e-12);
  }
  CHECK_THROWS_AS(
      transformation_tensor(Voigt6::Zero(), Voigt6::Zero(), TransformDirection::Forward, p),
      ZeroDirectionError);
}

TEST_CASE("reverse transformation tensor follows the reversal record") {
  const MaterialParams p = MaterialParams::niti50();
  Voigt6 rec = Voigt6::Zero();
  rec(0) = 0.6 * p.H;
  rec(1) = -0.3 * p.H;
  rec(2) = -0.3 * p.H;
  const Voigt6 lam = transformation_tensor(Voigt6::Ones(), rec, TransformDirection::Reverse, p);
  CHECK(effective_strain(lam) == doctest::Approx(p.H).epsilon(1e-12));
  CHECK((lam.normalized() - rec.normalized()).norm() < 1e-12);
  CHECK_THROWS_AS(
      transformation_tensor(Voigt6::Ones(), Voigt6::Zero(), TransformDirection::Reverse, p),
      ZeroDirectionError);
}

TEST_CASE("d_lambda_d_sigma: finite differences, symmetry, null space") {
  const MaterialParams p = MaterialParams::niti50();
  std::mt19937 rng(17);
  for (int k = 0; k < 20; ++k) {
    const Voigt6 s = random_stress(rng, 2e8);
    const Mat6 M = d_lambda_d_sigma(s, TransformDirection::Forward, p);
    CHECK((M - M.transpose()).norm() < 1e-10 * M.norm());
    CHECK((M * s).norm() < 1e-8 * M.norm() * s.norm());
    const double h = 1e-6 * von_mises(s);
    for (int j = 0; j < 6; ++j) {
      Voigt6 up = s, dn = s;
      up(j) += h;
      dn(j) -= h;
      const Voigt6 col =
          (transformation_tensor(up, Voigt6::Zero(), TransformDirection::Forward, p) -
           transformation_tensor(dn, Voigt6::Zero(), TransformDirection::Forward, p)) /
          (2 * h);
      CHECK((M.col(j) - col).norm() < 1e-6 * std::max(M.norm(), 1e-30));
    }
  }
  CHECK(d_lambda_d_sigma(Voigt6::Ones(), TransformDirection::Reverse, p).norm() == 0.0);
}

TEST_CASE("driving force: anchor values and temperature slope") {
  const MaterialParams p = MaterialParams::niti50();
  const Voigt6 z = Voigt6::Zero();
  CHECK(driving_force(0.0, z, p.M_s, z, TransformDirection::Forward, p) ==
        doctest::Approx(p.Y).epsilon(1e-9));
  const double pi1 = driving_force(0.3, z, 250.0, z, TransformDirection::Forward, p);
  const double pi2 = driving_force(0.3, z, 251.0, z, TransformDirection::Forward, p);
  CHECK(pi2 - pi1 == doctest::Approx(p.rho_ds0).epsilon(1e-9));
}

TEST_CASE("phi partials match finite differences") {
  std::mt19937 rng(23);
  for (auto m : kModels) {
    const MaterialParams p = MaterialParams::niti50(m);
    for (auto dir : {TransformDirection::Forward, TransformDirection::Reverse}) {
      for (int k = 0; k < 10; ++k) {
        const Voigt6 sig = random_stress(rng, 2e8);
        Voigt6 rec = random_stress(rng, 1.0);
        rec *= p.H / effective_strain(rec);
        const double xi = 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
        const double T = 250.0;
        auto lam_at = [&](const Voigt6& s) {
          return dir == TransformDirection::Forward
                     ? transformation_tensor(s, rec, dir, p)
                     : transformation_tensor(sig, rec, dir, p);  // frozen on reverse
        };
        const PhiPartials pp = phi_and_partials(xi, sig, T, lam_at(sig), dir, p);
        // d/dxi
        const double fd_xi = fd_derivative(
            [&](double x) { return phi_and_partials(x, sig, T, lam_at(sig), dir, p).phi; },
            xi, 1e-6);
        CHECK(rel_err(pp.dphi_dxi, fd_xi, 1.0) < 1e-6);
        // d/dT
        const double fd_T = fd_derivative(
            [&](double t) { return phi_and_partials(xi, sig, t, lam_at(sig), dir, p).phi; },
            T, 1e-3);
        CHECK(rel_err(pp.dphi_dT, fd_T) < 1e-8);
        // d/dsigma, with the direction tensor varying for the forward branch
        const double h = 1e-7 * p.E_A;
        for (int j = 0; j < 6; ++j) {
          Voigt6 up = sig, dn = sig;
          up(j) += h;
          dn(j) -= h;
          const double fd =
              (phi_and_partials(xi, up, T, lam_at(up), dir, p).phi -
               phi_and_partials(xi, dn, T, lam_at(dn), dir, p).phi) /
              (2 * h);
          CHECK(std::abs(pp.dphi_dsig(j) - fd) < 1e-6 * pp.dphi_dsig.norm());
        }
      }
    }
  }
}

TEST_CASE("parameter validation rejects inconsistent input") {
  MaterialParams p = MaterialParams::niti50();
  p.M_s = 300.0;  // above A_s
  CHECK_THROWS(p.validate());
  p = MaterialParams::niti50();
  p.rho_ds0 = 1.0;
  CHECK_THROWS(p.calibrate());
  p = MaterialParams::niti50();
  p.H = -0.1;
  CHECK_THROWS(p.validate());
}
