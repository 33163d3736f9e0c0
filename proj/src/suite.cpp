#include "kflow/suite.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kflow/binary_cubics.hpp"
#include "kflow/equivariant_extend.hpp"
#include "kflow/flow_convexity.hpp"
#include "kflow/kahler_glue.hpp"
#include "kflow/lie_core.hpp"
#include "kflow/moment_map.hpp"

namespace kflow {

namespace {

// Self-contained random generators (the library must not depend on the test
// tree); one fresh stream per criterion keeps the battery order-independent.
std::mt19937_64 stream(const SuiteConfig& cfg, int criterion) {
  return std::mt19937_64(cfg.seed + 1000003ULL * static_cast<unsigned>(criterion));
}

Complex randc(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Complex(n(rng), n(rng));
}

CVector random_vector(std::mt19937_64& rng, int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = randc(rng);
  return v;
}

CMatrix random_matrix(std::mt19937_64& rng, int n) {
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = randc(rng);
  return m;
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n));
  CMatrix q = qr.householderQ();
  return q;
}

CMatrix random_well_conditioned(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> sigma(0.5, 2.0);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s(i) = sigma(rng);
  return random_unitary(rng, n) * s.asDiagonal() *
         random_unitary(rng, n).adjoint();
}

CMatrix random_anti_hermitian(std::mt19937_64& rng, int n) {
  CMatrix m = random_matrix(rng, n);
  return 0.5 * (m - m.adjoint());
}

cubics::GroupElement random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  cubics::GroupElement k;
  k << Complex(q(0), q(1)), Complex(q(2), q(3)), Complex(-q(2), q(3)),
      Complex(q(0), -q(1));
  return k;
}

std::vector<cubics::GroupElement> su2_basis() {
  cubics::GroupElement h, e, f;
  h << Complex(0, 1), 0, 0, Complex(0, -1);
  e << 0, 1, -1, 0;
  f << 0, Complex(0, 1), Complex(0, 1), 0;
  return {h, e, f};
}

RVector random_weights(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.4, 2.5);
  RVector w(n);
  for (int i = 0; i < n; ++i) w(i) = u(rng);
  return w;
}

// Anti-self-adjoint for the weighted metric: A = W⁻¹·(anti-Hermitian).
CMatrix random_metric_anti_adjoint(std::mt19937_64& rng, const RVector& w) {
  CMatrix s = random_anti_hermitian(rng, static_cast<int>(w.size()));
  return w.cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() * s;
}

cubics::BinaryCubic x2y() { return cubics::cubic(0, 1, 0, 0); }

cubics::BinaryCubic m_eps(const Complex& eps) {
  return cubics::cubic(0, 1, 0, -eps * eps);
}

std::string format(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

CriterionResult criterion_1() {
  CriterionResult r{1, "order-three symmetry maps x2y to its closed form",
                    false, 0.0, 1e-12, ""};
  for (Complex eps : {Complex(1.0), Complex(0.5), Complex(0.3)}) {
    cubics::BinaryCubic got = cubics::act(cubics::a_eps(eps), x2y());
    cubics::Coeffs want;
    want << -1.0 / (8.0 * eps), 5.0 / 8.0, -3.0 * eps / 8.0,
        -9.0 * eps * eps / 8.0;
    r.worst = std::max(r.worst, (got.c - want).cwiseAbs().maxCoeff());
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "eps in {1, 1/2, 0.3}, max coefficient error " + format(r.worst);
  return r;
}

CriterionResult criterion_2() {
  CriterionResult r{2, "order-three symmetry: det 1, cube I, fixed cubic",
                    false, 0.0, 1e-12, ""};
  for (Complex eps : {Complex(1.0), Complex(0.5), Complex(0.3)}) {
    cubics::GroupElement a = cubics::a_eps(eps);
    r.worst = std::max(r.worst, std::abs(a.determinant() - Complex(1.0)));
    r.worst = std::max(
        r.worst, (a * a * a - cubics::GroupElement::Identity()).cwiseAbs().maxCoeff());
    cubics::BinaryCubic m = m_eps(eps);
    r.worst = std::max(r.worst,
                       (cubics::act(a, m).c - m.c).cwiseAbs().maxCoeff());
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "worst identity residual " + format(r.worst);
  return r;
}

CriterionResult criterion_3() {
  CriterionResult r{3, "classification table: four types with stabilizers",
                    false, 0.0, 0.0, ""};
  int defects = 0;
  auto expect = [&](bool ok) { defects += ok ? 0 : 1; };

  cubics::BinaryCubic type1 = cubics::cubic(0, 1, 0, -1);  // (x+y)(x-y)y
  expect(cubics::classify_type(type1).type == cubics::FactorType::I);
  cubics::StabilizerDescription s1 = cubics::compute_stabilizer(type1);
  expect(s1.kind == cubics::StabilizerKind::finite && s1.order == 3);

  expect(cubics::classify_type(x2y()).type == cubics::FactorType::II);
  cubics::StabilizerDescription s2 = cubics::compute_stabilizer(x2y());
  expect(s2.kind == cubics::StabilizerKind::finite && s2.order == 1);

  cubics::BinaryCubic y3 = cubics::cubic(0, 0, 0, 1);
  expect(cubics::classify_type(y3).type == cubics::FactorType::III);
  cubics::StabilizerDescription s3 = cubics::compute_stabilizer(y3);
  expect(s3.kind == cubics::StabilizerKind::positive_dimensional &&
         s3.dimension == 1 && s3.order == 3);

  cubics::BinaryCubic zero;
  expect(cubics::classify_type(zero).type == cubics::FactorType::IV);
  expect(cubics::compute_stabilizer(zero).kind ==
         cubics::StabilizerKind::full_group);

  r.worst = defects;
  r.pass = defects == 0;
  r.detail = defects == 0 ? "all four rows reproduced"
                          : std::to_string(defects) + " row facts failed";
  return r;
}

CriterionResult criterion_4() {
  CriterionResult r{4, "slice-bundle collision at eps = 1/2", false, 0.0,
                    1e-12, ""};
  cubics::NonInjectivityReport rep = cubics::non_injectivity_demo(0.5);
  r.worst = rep.image_distance;
  bool separated = rep.bundle_point_distance >= 1.0;
  r.pass = r.worst <= r.tolerance && separated;
  r.detail = "image distance " + format(rep.image_distance) +
             ", bundle-point distance " + format(rep.bundle_point_distance);
  return r;
}

CriterionResult criterion_5(const SuiteConfig& cfg) {
  CriterionResult r{5, "angle identity between radius and momentum gradients",
                    false, 0.0, 1e-10, ""};
  std::mt19937_64 rng = stream(cfg, 5);
  LinearRep binom = cubics::su2_cubics_rep(cubics::binomial_metric());
  LinearRep mono = cubics::su2_cubics_rep(cubics::monomial_metric());
  std::vector<cubics::GroupElement> sl2 = su2_basis();
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  for (int trial = 0; trial < 1000; ++trial) {
    LinearRep rep;
    LieAlgebraElement xi;
    int kind = trial % 6;
    if (kind < 4) {
      int dim = kind + 1;
      rep.space.weights = random_weights(rng, dim);
      xi.matrix = random_metric_anti_adjoint(rng, rep.space.weights);
    } else {
      rep = (kind == 4) ? binom : mono;
      cubics::GroupElement combo = cubics::GroupElement::Zero();
      for (const cubics::GroupElement& b : sl2) combo += coeff(rng) * b;
      xi.matrix = cubics::lie_rep(combo);
    }
    CVector v = random_vector(rng, rep.space.dim());
    double res = angle_identity_residual(rep, xi, v);
    double scale =
        std::max(1.0, std::abs(4.0 * momentum_component(rep, xi, v)));
    r.worst = std::max(r.worst, res / scale);
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "1000 configurations, dims 1-4 plus both cubic metrics; worst "
             "relative residual " +
             format(r.worst);
  return r;
}

CriterionResult criterion_6(const SuiteConfig& cfg) {
  CriterionResult r{6, "momentum gradient matches central finite differences",
                    false, 0.0, 1e-5, ""};
  std::mt19937_64 rng = stream(cfg, 6);
  const double h = 1e-5;
  for (int trial = 0; trial < 500; ++trial) {
    int dim = trial % 4 + 1;
    LinearRep rep;
    rep.space.weights = random_weights(rng, dim);
    LieAlgebraElement xi{random_metric_anti_adjoint(rng, rep.space.weights)};
    CVector v = random_vector(rng, dim);

    CVector grad = momentum_gradient(rep, xi, v);
    CVector fd(dim);
    for (int j = 0; j < dim; ++j) {
      CVector re_step = CVector::Zero(dim), im_step = CVector::Zero(dim);
      re_step(j) = h;
      im_step(j) = Complex(0, h);
      double d_re = (momentum_component(rep, xi, v + re_step) -
                     momentum_component(rep, xi, v - re_step)) /
                    (2 * h);
      double d_im = (momentum_component(rep, xi, v + im_step) -
                     momentum_component(rep, xi, v - im_step)) /
                    (2 * h);
      // dΦ(u) = Re⟨grad, u⟩_W, so the partials recover w_j·(Re, Im) of grad
      fd(j) = Complex(d_re, d_im) / rep.space.weights(j);
    }
    double rel = (fd - grad).norm() / std::max(1.0, grad.norm());
    r.worst = std::max(r.worst, rel);
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "500 configurations at step 1e-5; worst relative error " +
             format(r.worst);
  return r;
}

CriterionResult criterion_7(const SuiteConfig& cfg) {
  CriterionResult r{7, "orbital convexity of flat-metric balls", false, 0.0,
                    1e-8, ""};
  std::mt19937_64 rng = stream(cfg, 7);
  std::uniform_real_distribution<double> radius_pick(0.5, 2.0);
  std::uniform_real_distribution<double> scale_pick(0.3, 1.5);
  int violations = 0;
  int inconclusive = 0;
  int crossings = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int dim = trial % 3 + 2;
    LinearRep rep;
    rep.space = standard_space(dim);
    LieAlgebraElement xi{random_anti_hermitian(rng, dim)};
    BallRegion ball{radius_pick(rng)};
    CVector v0 = random_vector(rng, dim);
    // half the ensemble starts inside the ball (guaranteed boundary events)
    double target = (trial % 2 == 0) ? 0.8 * ball.radius
                                     : scale_pick(rng) * ball.radius;
    v0 *= target / v0.norm();

    ConvexityCertificate cert =
        orbital_convexity_check(rep, xi, v0, ball, -10.0, 10.0);
    if (cert.verdict == ConvexityVerdict::violation) ++violations;
    if (cert.verdict == ConvexityVerdict::inconclusive) ++inconclusive;
    for (const CrossingEvent& e : cert.crossings) {
      ++crossings;
      double defect = e.entering ? std::max(0.0, e.phi)
                                 : std::max(0.0, -e.phi);
      r.worst = std::max(r.worst, defect);
    }
  }
  r.pass = violations == 0 && r.worst <= r.tolerance;
  r.detail = "200 configurations, " + std::to_string(crossings) +
             " crossings, " + std::to_string(violations) + " violations, " +
             std::to_string(inconclusive) +
             " inconclusive; worst boundary sign defect " + format(r.worst);
  return r;
}

CriterionResult criterion_8(const SuiteConfig& cfg) {
  CriterionResult r{8, "momentum nondecreasing along the complexified flow",
                    false, 0.0, 1e-5, ""};
  std::mt19937_64 rng = stream(cfg, 8);
  double worst_drop = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    int dim = trial % 3 + 2;
    LinearRep rep;
    rep.space = standard_space(dim);
    CMatrix a = random_anti_hermitian(rng, dim);
    a *= 0.5 / std::max(1.0, a.norm());  // keep the growth rate modest so the
    LieAlgebraElement xi{a};             // derivative check is not FD-limited
    CVector v0 = random_vector(rng, dim);
    Trajectory traj = sample_trajectory(rep, xi, v0, -10.0, 10.0, 8001);
    MonotonicityReport rep8 = phi_monotonicity_check(rep, xi, traj);
    if (!rep8.conclusive) {
      r.detail = "trajectory with too few samples";
      return r;
    }
    worst_drop = std::max(worst_drop, rep8.max_monotonicity_violation);
    r.worst = std::max(r.worst, rep8.max_derivative_mismatch);
  }
  r.pass = r.worst <= r.tolerance && worst_drop <= 1e-10;
  r.detail = "200 trajectories; worst derivative mismatch " + format(r.worst) +
             ", worst monotonicity drop " + format(worst_drop);
  return r;
}

CriterionResult criterion_9(const SuiteConfig& cfg) {
  CriterionResult r{9, "equivariant extension matches the global closed form",
                    false, 0.0, 1e-8, ""};
  std::mt19937_64 rng = stream(cfg, 9);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> xnorm(0.05, 0.3);
  std::vector<cubics::GroupElement> sl2 = su2_basis();

  EquivariantMapSample sample;
  sample.domain_rep = cubics::su2_cubics_rep(cubics::binomial_metric());
  sample.codomain_rep = sample.domain_rep;
  GroupRealization cubics_action;
  cubics_action.group = [](const CMatrix& g) {
    return CMatrix(cubics::rep_matrix_left(cubics::GroupElement(g)));
  };
  cubics_action.lie = [](const CMatrix& m) {
    return CMatrix(-cubics::lie_rep(cubics::GroupElement(m)));
  };
  sample.domain_action = cubics_action;
  sample.codomain_action = cubics_action;
  sample.eval = [](const CVector& v) {
    cubics::BinaryCubic f;
    f.c = v;
    return CVector((1.0 + cubics::discriminant(f)) * v);
  };
  sample.ball.radius = 0.32;

  for (int trial = 0; trial < 200; ++trial) {
    cubics::GroupElement xi = cubics::GroupElement::Zero();
    for (const cubics::GroupElement& b : sl2) xi += coeff(rng) * b;
    if (xi.norm() > 1.0) xi /= xi.norm();  // Cartan factor bounded by 1
    CMatrix g = CMatrix(random_su2(rng)) *
                mat_exp(Complex(0, 1) * CMatrix(xi));

    CVector x = random_vector(rng, 4);
    x *= xnorm(rng) / std::sqrt(sample.domain_rep.space.norm2(x));

    CVector got = extend_eval(sample, g, x);
    CVector moved = cubics_action.group(g) * x;
    cubics::BinaryCubic fm;
    fm.c = moved;
    CVector want = (1.0 + cubics::discriminant(fm)) * moved;
    r.worst = std::max(r.worst, (got - want).norm());
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "200 samples, |x| <= 0.3, Cartan factor norm <= 1; worst "
             "residual " +
             format(r.worst);
  return r;
}

CriterionResult criterion_10() {
  CriterionResult r{10,
                    "glued potential: positive, flat core, local, shrinking",
                    false, 0.0, 1e-6, ""};
  CutoffProfile chi = make_cutoff();
  GlueReport one = certify_glue(fubini_study_potential(1), chi, 0.1, 64);
  GlueReport two = certify_glue(fubini_study_potential(2), chi, 0.1, 64);
  double outer = std::max(one.outer_region_residual, two.outer_region_residual);
  r.worst = std::max(one.flat_region_residual, two.flat_region_residual);

  double s_big = certify_glue(fubini_study_potential(1), chi, 0.2, 64).sup_f_ab;
  double s_mid = one.sup_f_ab;
  double s_small =
      certify_glue(fubini_study_potential(1), chi, 0.05, 64).sup_f_ab;
  bool shrinking = s_small < s_mid && s_mid < s_big;

  r.pass = one.positive_definite && two.positive_definite &&
           !one.inconclusive && !two.inconclusive && r.worst <= r.tolerance &&
           outer <= 1e-12 && shrinking;
  r.detail = "flat-core residual " + format(r.worst) + ", outer residual " +
             format(outer) + ", sup deviation " + format(s_big) + " > " +
             format(s_mid) + " > " + format(s_small) +
             (shrinking ? " (shrinking)" : " (NOT shrinking)");
  return r;
}

CriterionResult criterion_11(const SuiteConfig& cfg) {
  CriterionResult r{11,
                    "path momentum: quadratic formula and constant transport",
                    false, 0.0, 1e-6, ""};
  std::mt19937_64 rng = stream(cfg, 11);
  const double lambda = 0.1;
  CutoffProfile chi = make_cutoff();
  KahlerPotential glued =
      glued_potential(fubini_study_potential(1), chi, lambda);
  HessianField field = [&](const CVector& x) { return complex_hessian(glued, x); };

  LinearRep rep;
  rep.space = standard_space(1);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> core(0.02, 0.09);
  for (int trial = 0; trial < 20; ++trial) {
    LieAlgebraElement xi;
    xi.matrix = CMatrix::Zero(1, 1);
    xi.matrix(0, 0) = Complex(0.0, core(rng) * 10.0);
    CVector v(1);
    v(0) = std::polar(core(rng), angle(rng));  // stays inside the flat core
    CVector zero = CVector::Zero(1);
    double got = momentum_by_path(field, xi, {zero, v}, 0.0);
    double want = momentum_component(rep, xi, v);
    r.worst = std::max(r.worst, std::abs(got - want));
  }

  double worst_transport = 0.0;
  const double rho = lambda * std::sqrt(2.5);
  RegionPredicate annulus = [&](const CVector& x) {
    double r2 = x.squaredNorm();
    return r2 > 2.0 * lambda * lambda && r2 < 3.0 * lambda * lambda;
  };
  for (int trial = 0; trial < 5; ++trial) {
    LieAlgebraElement xi;
    xi.matrix = CMatrix::Zero(1, 1);
    xi.matrix(0, 0) = Complex(0.0, 0.4 + 0.2 * trial);
    double theta0 = angle(rng);
    auto arc = [&](double sign) {
      std::vector<CVector> path;
      const int segments = 48;
      for (int i = 0; i <= segments; ++i) {
        CVector p(1);
        p(0) = std::polar(rho, theta0 + sign * M_PI * i / segments);
        path.push_back(p);
      }
      return path;
    };
    double upper = momentum_by_path(field, xi, arc(+1.0), 0.0, annulus);
    double lower = momentum_by_path(field, xi, arc(-1.0), 0.0, annulus);
    worst_transport = std::max(worst_transport, std::abs(upper - lower));
  }

  r.worst = std::max(r.worst, worst_transport);
  r.pass = r.worst <= r.tolerance;
  r.detail = "flat-core formula and two-path transport; worst gap " +
             format(r.worst);
  return r;
}

CriterionResult criterion_12(const SuiteConfig& cfg) {
  CriterionResult r{12, "polar factorization round-trip", false, 0.0, 1e-10,
                    ""};
  std::mt19937_64 rng = stream(cfg, 12);
  for (int trial = 0; trial < 500; ++trial) {
    int dim = (trial % 2 == 0) ? 2 : 4;
    CMatrix g = random_well_conditioned(rng, dim);
    CartanFactors f = cartan_decompose(g);
    CMatrix back = f.k * mat_exp(Complex(0, 1) * f.xi.matrix);
    r.worst = std::max(r.worst, (back - g).norm() / g.norm());
    r.worst = std::max(
        r.worst,
        (f.k.adjoint() * f.k - CMatrix::Identity(dim, dim)).norm());
  }
  r.pass = r.worst <= r.tolerance;
  r.detail = "500 well-conditioned samples in dims 2 and 4; worst residual " +
             format(r.worst);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const SuiteConfig& config) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_1());
  out.push_back(criterion_2());
  out.push_back(criterion_3());
  out.push_back(criterion_4());
  out.push_back(criterion_5(config));
  out.push_back(criterion_6(config));
  out.push_back(criterion_7(config));
  out.push_back(criterion_8(config));
  out.push_back(criterion_9(config));
  out.push_back(criterion_10());
  out.push_back(criterion_11(config));
  out.push_back(criterion_12(config));
  return out;
}

}  // namespace kflow
