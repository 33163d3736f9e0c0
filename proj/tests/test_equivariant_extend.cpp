#include <doctest.h>

#include <cmath>

#include "kflow/binary_cubics.hpp"
#include "kflow/equivariant_extend.hpp"
#include "test_support.hpp"

using namespace kflow;

namespace {

// Identity map on C² with the defining action on both sides.
EquivariantMapSample identity_sample(double radius) {
  EquivariantMapSample map;
  map.domain_rep.space = standard_space(2);
  map.codomain_rep.space = standard_space(2);
  for (const CMatrix& xi : testsup::su2_basis()) {
    map.domain_rep.lie_basis.push_back({xi});
    map.codomain_rep.lie_basis.push_back({xi});
  }
  map.domain_action = defining_realization();
  map.codomain_action = defining_realization();
  map.eval = [](const CVector& v) { return v; };
  map.ball.radius = radius;
  return map;
}

// Left-action realization on binary cubics: a genuine homomorphism, with
// tangent map −lie_rep because the substitution expansion itself composes in
// the reversed order.
GroupRealization cubics_left_realization() {
  GroupRealization r;
  r.group = [](const CMatrix& g) {
    return CMatrix(cubics::rep_matrix_left(cubics::GroupElement(g)));
  };
  r.lie = [](const CMatrix& xi) {
    return CMatrix(-cubics::lie_rep(cubics::GroupElement(xi)));
  };
  return r;
}

// f(v) = (1 + Δ(v))·v on cubics: polynomial (holomorphic) and equivariant
// for every unimodular substitution since Δ is an invariant.
EquivariantMapSample discriminant_scale_sample(double radius) {
  EquivariantMapSample map;
  map.domain_rep = cubics::su2_cubics_rep(cubics::binomial_metric());
  map.codomain_rep = map.domain_rep;
  map.domain_action = cubics_left_realization();
  map.codomain_action = cubics_left_realization();
  map.eval = [](const CVector& v) {
    cubics::BinaryCubic f{v};
    return CVector((1.0 + cubics::discriminant(f)) * v);
  };
  map.ball.radius = radius;
  return map;
}

}  // namespace

TEST_SUITE_BEGIN("equivariant-extend");

TEST_CASE("defining_realization is the identity wiring") {
  std::mt19937_64 rng(113);
  GroupRealization r = defining_realization();
  CMatrix g = testsup::random_matrix(rng, 3, 3);
  CHECK((r.group(g) - g).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.lie(g) - g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("holomorphy_residual separates analytic from conjugating maps") {
  std::mt19937_64 rng(127);
  CVector x = testsup::random_vector(rng, 3);
  CVector w = testsup::random_vector(rng, 3);
  w /= w.norm();

  SUBCASE("linear map") {
    CMatrix b = testsup::random_matrix(rng, 3, 3);
    auto f = [&](const CVector& v) { return CVector(b * v); };
    CHECK(holomorphy_residual(f, x, w) < 1e-8);
  }
  SUBCASE("componentwise polynomial") {
    auto f = [](const CVector& v) {
      CVector out(3);
      out << v(0) * v(0), v(0) * v(1) + v(2), v(2) * v(2) * v(2);
      return out;
    };
    CHECK(holomorphy_residual(f, x, w) < 1e-8);
  }
  SUBCASE("conjugation fails loudly") {
    auto f = [](const CVector& v) { return CVector(v.conjugate()); };
    // df[w] = conj(w), so the defect is ‖2·conj(w)‖ = 2 for unit w
    CHECK(holomorphy_residual(f, x, w) > 1.0);
  }
}

TEST_CASE("identity map extends to g·x for arbitrary invertible g") {
  std::mt19937_64 rng(131);
  EquivariantMapSample map = identity_sample(1.0);
  for (int trial = 0; trial < 25; ++trial) {
    CMatrix g = testsup::random_well_conditioned(rng, 2);
    CVector x = testsup::random_vector(rng, 2);
    x *= 0.5 / x.norm();
    CVector got = extend_eval(map, g, x);
    CVector want = g * x;
    CHECK((got - want).norm() < 1e-10 * std::max(1.0, want.norm()));
  }
}

TEST_CASE("extend_eval guards its domain") {
  std::mt19937_64 rng(137);
  EquivariantMapSample map = identity_sample(1.0);
  CMatrix g = testsup::random_well_conditioned(rng, 2);

  CVector far = testsup::random_vector(rng, 2);
  far *= 2.0 / far.norm();
  CHECK_THROWS_AS(extend_eval(map, g, far), DomainError);

  CVector wrong_size = testsup::random_vector(rng, 3);
  CHECK_THROWS_AS(extend_eval(map, g, wrong_size), DimensionError);

  // A square g of the wrong size realizes to an action matrix that cannot
  // act on the map's codomain; it must be rejected, not truncated.
  CMatrix g3 = testsup::random_well_conditioned(rng, 3);
  CVector x2 = testsup::random_vector(rng, 2);
  x2 *= 0.5 / x2.norm();
  CHECK_THROWS_AS(extend_eval(map, g3, x2), DimensionError);

  CMatrix singular(2, 2);
  singular << 1, 1, 1, 1;
  CVector x = testsup::random_vector(rng, 2);
  x *= 0.5 / x.norm();
  CHECK_THROWS_AS(extend_eval(map, singular, x), DecompositionError);
}

TEST_CASE("discriminant-scale map on cubics: the Cartan route matches the "
          "global formula") {
  std::mt19937_64 rng(139);
  EquivariantMapSample map = discriminant_scale_sample(1.0);
  for (int trial = 0; trial < 15; ++trial) {
    CMatrix g = testsup::random_sl2(rng);
    CVector x = testsup::random_vector(rng, 4);
    x *= 0.3 / std::sqrt(map.domain_rep.space.norm2(x));
    CVector got = extend_eval(map, g, x);
    // the map is polynomial and equivariant everywhere, so its extension is
    // itself: f_C(g·x) = ρ(g)·f(x) with ρ the left substitution action
    CVector want = CMatrix(cubics::rep_matrix_left(cubics::GroupElement(g))) *
                   map.eval(x);
    CHECK((got - want).norm() < 1e-9 * std::max(1.0, want.norm()));
  }
}

TEST_CASE("well-definedness residual on the stretch directions") {
  std::mt19937_64 rng(149);
  EquivariantMapSample map = discriminant_scale_sample(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CVector x = testsup::random_vector(rng, 4);
    x *= 0.2 / std::sqrt(map.domain_rep.space.norm2(x));
    CMatrix xi = 0.05 * testsup::su2_basis()[trial % 3];
    CHECK(well_definedness_residual(map, x, xi) < 1e-8);
  }

  SUBCASE("a conjugating map is not consistently extendable") {
    EquivariantMapSample bad = discriminant_scale_sample(1.0);
    bad.eval = [](const CVector& v) { return CVector(v.conjugate()); };
    std::mt19937_64 rng2(151);
    CVector x = testsup::random_vector(rng2, 4);
    x *= 0.2 / std::sqrt(bad.domain_rep.space.norm2(x));
    // the diagonal direction stretches by a real matrix, which conjugation
    // slips straight through — probe an off-diagonal (complex) stretch
    CMatrix xi = 0.1 * testsup::su2_basis()[1];
    CHECK(well_definedness_residual(bad, x, xi) > 1e-3);
  }

  SUBCASE("the stretched point must stay inside the ball") {
    EquivariantMapSample tight = discriminant_scale_sample(0.21);
    std::mt19937_64 rng3(157);
    CVector x = testsup::random_vector(rng3, 4);
    x *= 0.2 / std::sqrt(tight.domain_rep.space.norm2(x));
    CMatrix xi = 2.0 * testsup::su2_basis()[0];  // strong stretch
    CHECK_THROWS_AS(well_definedness_residual(tight, x, xi), DomainError);
  }
}

TEST_CASE("equivariance residual on compact elements") {
  std::mt19937_64 rng(163);
  EquivariantMapSample map = discriminant_scale_sample(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix k = testsup::random_su2(rng);
    CVector x = testsup::random_vector(rng, 4);
    x *= 0.4 / std::sqrt(map.domain_rep.space.norm2(x));
    CHECK(equivariance_residual(map, k, x) < 1e-8);
  }

  SUBCASE("an offset map is detectably non-equivariant") {
    EquivariantMapSample bad = discriminant_scale_sample(1.0);
    bad.eval = [](const CVector& v) {
      CVector out = v;
      out(0) += 0.5;
      return out;
    };
    std::mt19937_64 rng2(167);
    CMatrix k = testsup::random_su2(rng2);
    CVector x = testsup::random_vector(rng2, 4);
    x *= 0.4 / std::sqrt(bad.domain_rep.space.norm2(x));
    CHECK(equivariance_residual(bad, k, x) > 1e-3);
  }
}

TEST_CASE("unitary g reduces the extension to the plain action") {
  std::mt19937_64 rng(173);
  EquivariantMapSample map = identity_sample(1.0);
  CMatrix k = testsup::random_su2(rng);
  CVector x = testsup::random_vector(rng, 2);
  x *= 0.7 / x.norm();
  // Cartan factors of a unitary matrix: k itself and a vanishing stretch
  CVector got = extend_eval(map, k, x);
  CHECK((got - CVector(k * x)).norm() < 1e-12);
}

TEST_SUITE_END();
