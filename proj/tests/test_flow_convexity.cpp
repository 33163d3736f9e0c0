#include <doctest.h>

#include <cmath>

#include "kflow/flow_convexity.hpp"
#include "test_support.hpp"

using namespace kflow;

namespace {

LinearRep one_dim_rep() {
  LinearRep rep;
  rep.space = standard_space(1);
  rep.lie_basis = {{CMatrix::Constant(1, 1, Complex(0, 1))}};
  return rep;
}

// Classic fixed-step RK4 for v' = i·A·v, written directly against the
// matrix so it shares no code with flow_point / momentum_gradient.
CVector rk4_flow(const CMatrix& a, CVector v, double t_end, int steps) {
  const Complex I(0, 1);
  const double h = t_end / steps;
  for (int s = 0; s < steps; ++s) {
    CVector k1 = I * (a * v);
    CVector k2 = I * (a * (v + 0.5 * h * k1));
    CVector k3 = I * (a * (v + 0.5 * h * k2));
    CVector k4 = I * (a * (v + h * k3));
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("flow-convexity");

TEST_CASE("flow_point with xi = 0 is constant") {
  LinearRep rep = one_dim_rep();
  LieAlgebraElement zero{CMatrix::Zero(1, 1)};
  CVector v0 = CVector::Constant(1, Complex(0.4, 1.1));
  for (double t : {-3.0, 0.0, 2.7})
    CHECK(std::abs(flow_point(rep, zero, v0, t)(0) - v0(0)) == 0.0);
}

TEST_CASE("flow_point matches the one-dimensional closed form e^{-t}v0") {
  LinearRep rep = one_dim_rep();
  CVector v0 = CVector::Constant(1, 1.0);
  for (double t : {0.25, 1.0, -2.0}) {
    Complex got = flow_point(rep, rep.lie_basis[0], v0, t)(0);
    CHECK(std::abs(got - std::exp(-t)) < 1e-13 * std::exp(std::abs(t)));
  }
}

TEST_CASE("flow_point agrees with an independent RK4 integration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + int(rng() % 4);
    LinearRep rep = testsup::random_rep(rng, n, 1);
    CVector v0 = testsup::random_vector(rng, n);
    const CMatrix& a = rep.lie_basis[0].matrix;
    for (double t : {5.0, -5.0, 1.3}) {
      CVector closed = flow_point(rep, rep.lie_basis[0], v0, t);
      CVector ode = rk4_flow(a, v0, t, 4000);
      CHECK((closed - ode).norm() <= 1e-6 * std::max(1.0, closed.norm()));
    }
  }
}

TEST_CASE("flow group law") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + int(rng() % 4);
    LinearRep rep = testsup::random_rep(rng, n, 1);
    CVector v0 = testsup::random_vector(rng, n);
    double t = 1.7, s = -0.9;
    CVector once = flow_point(rep, rep.lie_basis[0], v0, t + s);
    CVector twice = flow_point(rep, rep.lie_basis[0],
                               flow_point(rep, rep.lie_basis[0], v0, s), t);
    CHECK((once - twice).norm() <= 1e-10 * std::max(1.0, once.norm()));
  }
}

TEST_CASE("angle identity residual") {
  LinearRep rep = one_dim_rep();
  SUBCASE("vanishes at the origin") {
    CHECK(angle_identity_residual(rep, rep.lie_basis[0], CVector::Zero(1)) ==
          0.0);
  }
  SUBCASE("one-dimensional hand computation: both sides equal -8 at v=2") {
    CVector v = CVector::Constant(1, 2.0);
    // grad R² = 2v = 4, grad Φ = i·i·2 = −2, Re⟨4,−2⟩ = −8 = 4·Φ = 4·(−2)
    CHECK(momentum_component(rep, rep.lie_basis[0], v) == -2.0);
    CHECK(angle_identity_residual(rep, rep.lie_basis[0], v) < 1e-14);
  }
  SUBCASE("random flat configurations stay below 1e-10") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
      int n = 1 + int(rng() % 4);
      LinearRep r = testsup::random_rep(rng, n, 1);
      CVector v = testsup::random_vector(rng, n);
      double denom = std::max(
          1.0, std::abs(4 * momentum_component(r, r.lie_basis[0], v)));
      CHECK(angle_identity_residual(r, r.lie_basis[0], v) / denom <= 1e-10);
    }
  }
}

TEST_CASE("sample_trajectory hits t = 0 exactly and is increasing") {
  LinearRep rep = one_dim_rep();
  CVector v0 = CVector::Constant(1, 2.0);
  Trajectory traj = sample_trajectory(rep, rep.lie_basis[0], v0, -1.0, 1.0, 7);
  bool has_zero = false;
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    if (traj.samples[i].t == 0.0) {
      has_zero = true;
      CHECK(std::abs(traj.samples[i].point(0) - v0(0)) == 0.0);
    }
    if (i > 0) CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }
  CHECK(has_zero);
}

TEST_CASE("phi_monotonicity_check on the one-dimensional closed form") {
  LinearRep rep = one_dim_rep();
  CVector v0 = CVector::Constant(1, 1.0);
  Trajectory traj =
      sample_trajectory(rep, rep.lie_basis[0], v0, -2.0, 2.0, 2001);
  MonotonicityReport rep_out = phi_monotonicity_check(rep, rep.lie_basis[0], traj);
  CHECK(rep_out.conclusive);
  CHECK(rep_out.max_monotonicity_violation == 0.0);
  // Φ(t) = −e^{−2t}/2 and ‖grad‖² = e^{−2t}: central differences at this
  // density resolve the match to well below 1e-5
  CHECK(rep_out.max_derivative_mismatch < 1e-5);

  // spot check the closed form itself
  for (const TrajectorySample& s : traj.samples) {
    CHECK(std::abs(s.phi - (-std::exp(-2 * s.t) / 2)) <
          1e-11 * std::exp(2 * std::abs(s.t)));
  }
}

TEST_CASE("phi_monotonicity_check is inconclusive on tiny trajectories") {
  LinearRep rep = one_dim_rep();
  Trajectory traj;
  traj.samples.push_back({0.0, CVector::Constant(1, 1.0), -0.5, 1.0});
  CHECK_FALSE(phi_monotonicity_check(rep, rep.lie_basis[0], traj).conclusive);
}

TEST_CASE("phi_monotonicity_check on a fixed point reports zero derivative") {
  LinearRep rep = one_dim_rep();
  LieAlgebraElement zero{CMatrix::Zero(1, 1)};
  Trajectory traj =
      sample_trajectory(rep, zero, CVector::Constant(1, 1.0), -1.0, 1.0, 201);
  MonotonicityReport r = phi_monotonicity_check(rep, zero, traj);
  CHECK(r.conclusive);
  CHECK(r.max_monotonicity_violation == 0.0);
  CHECK(r.max_derivative_mismatch < 1e-12);
}

TEST_CASE("random trajectories are monotone within 1e-8") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + int(rng() % 4);
    LinearRep rep = testsup::random_rep(rng, n, 1);
    CVector v0 = testsup::random_vector(rng, n);
    Trajectory traj =
        sample_trajectory(rep, rep.lie_basis[0], v0, -2.0, 2.0, 801);
    MonotonicityReport r = phi_monotonicity_check(rep, rep.lie_basis[0], traj);
    CHECK(r.max_monotonicity_violation <= 1e-8);
  }
}

TEST_CASE("orbital convexity: trajectory pinned at the origin") {
  LinearRep rep = one_dim_rep();
  ConvexityCertificate cert =
      orbital_convexity_check(rep, rep.lie_basis[0], CVector::Zero(1),
                              {1.0}, -3.0, 3.0, 500);
  CHECK(cert.verdict == ConvexityVerdict::convex);
  CHECK(cert.crossings.empty());
  CHECK(cert.visit_intervals == 1);
}

TEST_CASE("orbital convexity: one-dimensional entry at t = ln 2") {
  LinearRep rep = one_dim_rep();
  CVector v0 = CVector::Constant(1, 2.0);
  ConvexityCertificate cert = orbital_convexity_check(
      rep, rep.lie_basis[0], v0, {1.0}, -3.0, 3.0, 2000);
  CHECK(cert.verdict == ConvexityVerdict::convex);
  REQUIRE(cert.crossings.size() == 1);
  // ‖δ(t)‖ = 2e^{−t} = 1 exactly at t = ln 2
  CHECK(std::abs(cert.crossings[0].t - std::log(2.0)) < 1e-9);
  CHECK(cert.crossings[0].entering);
  CHECK(cert.crossings[0].phi <= 1e-8);
}

TEST_CASE("orbital convexity: random flat balls never violate") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> ur(0.3, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + int(rng() % 4);
    LinearRep rep = testsup::random_rep(rng, n, 1);
    CVector v0 = testsup::random_vector(rng, n);
    ConvexityCertificate cert = orbital_convexity_check(
        rep, rep.lie_basis[0], v0, {ur(rng)}, -10.0, 10.0, 2000);
    CHECK(cert.verdict != ConvexityVerdict::violation);
    for (const CrossingEvent& c : cert.crossings) {
      if (c.entering)
        CHECK(c.phi <= 1e-8);
      else
        CHECK(c.phi >= -1e-8);
    }
  }
}

TEST_CASE("orbital convexity rejects undersampled windows") {
  LinearRep rep = one_dim_rep();
  CHECK_THROWS_AS(orbital_convexity_check(rep, rep.lie_basis[0],
                                          CVector::Constant(1, 1.0), {1.0},
                                          -1.0, 1.0, 50),
                  DomainError);
}

TEST_SUITE_END();
