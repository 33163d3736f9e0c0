#include "kflow/equivariant_extend.hpp"

#include <cmath>

#include "kflow/errors.hpp"

namespace kflow {

namespace {

const Complex kI(0.0, 1.0);

void require_in_ball(const EquivariantMapSample& map, const CVector& x,
                     const char* what) {
  if (x.size() != map.domain_rep.space.dim())
    throw DimensionError("point size does not match the domain space");
  if (std::sqrt(map.domain_rep.space.norm2(x)) >= map.ball.radius)
    throw DomainError(std::string(what) +
                      " lies outside the ball where the map is known");
}

double codomain_norm(const EquivariantMapSample& map, const CVector& v) {
  return std::sqrt(map.codomain_rep.space.norm2(v));
}

// Realized action matrices come from user-supplied callbacks, so their shape
// cannot be trusted to match the space they act on.
CVector apply_action(const CMatrix& m, const CVector& v) {
  if (m.rows() != m.cols() || m.cols() != v.size())
    throw DimensionError(
        "realized action matrix does not match the space it acts on");
  return m * v;
}

}  // namespace

GroupRealization defining_realization() {
  GroupRealization r;
  r.group = [](const CMatrix& g) { return g; };
  r.lie = [](const CMatrix& xi) { return xi; };
  return r;
}

CVector extend_eval(const EquivariantMapSample& map, const CMatrix& g,
                    const CVector& x) {
  require_in_ball(map, x, "the base point");
  CartanFactors cf = cartan_decompose(g);
  CMatrix stretch = mat_exp(kI * map.codomain_action.lie(cf.xi.matrix));
  CVector pushed = apply_action(stretch, map.eval(x));
  return apply_action(map.codomain_action.group(cf.k), pushed);
}

double well_definedness_residual(const EquivariantMapSample& map,
                                 const CVector& x, const CMatrix& xi) {
  require_in_ball(map, x, "the base point");
  CVector moved = apply_action(mat_exp(kI * map.domain_action.lie(xi)), x);
  require_in_ball(map, moved, "the stretched point");
  CVector lhs = map.eval(moved);
  CVector rhs =
      apply_action(mat_exp(kI * map.codomain_action.lie(xi)), map.eval(x));
  return codomain_norm(map, lhs - rhs);
}

double equivariance_residual(const EquivariantMapSample& map, const CMatrix& k,
                             const CVector& x) {
  require_in_ball(map, x, "the base point");
  CVector moved = apply_action(map.domain_action.group(k), x);
  require_in_ball(map, moved, "the rotated point");
  CVector lhs = map.eval(moved);
  CVector rhs = apply_action(map.codomain_action.group(k), map.eval(x));
  return codomain_norm(map, lhs - rhs);
}

double holomorphy_residual(const std::function<CVector(const CVector&)>& f,
                           const CVector& x, const CVector& w, double h) {
  if (h <= 0.0) throw DomainError("difference step must be positive");
  auto directional = [&](const CVector& dir) {
    return CVector((f(x + h * dir) - f(x - h * dir)) / (2.0 * h));
  };
  return (directional(kI * w) - kI * directional(w)).norm();
}

}  // namespace kflow
