#pragma once

#include <functional>

#include "kflow/flow_convexity.hpp"

namespace kflow {

/// Concrete realization of the acting group on one of the spaces: maps a
/// group element (given in its defining matrix coordinates) and a Lie
/// algebra element to the operators acting on the space. `group` must be a
/// genuine homomorphism and `lie` its tangent map, so that
/// group(exp(ξ)) = mat_exp(lie(ξ)).
struct GroupRealization {
  std::function<CMatrix(const CMatrix&)> group;
  std::function<CMatrix(const CMatrix&)> lie;
};

/// The space is the defining representation: elements act by themselves.
GroupRealization defining_realization();

/// A holomorphic equivariant map known on a ball A about the origin of the
/// domain space, together with the group actions on both sides.
struct EquivariantMapSample {
  LinearRep domain_rep;
  LinearRep codomain_rep;
  GroupRealization domain_action;
  GroupRealization codomain_action;
  std::function<CVector(const CVector&)> eval;
  BallRegion ball;  // in the domain metric
};

/// The unique equivariant extension evaluated at g·x: factor g = k·exp(i·ξ)
/// (Cartan), then return group(k) · mat_exp(i·lie(ξ)) · eval(x), all in the
/// codomain. Requires x ∈ ball (DomainError otherwise); decomposition
/// failures propagate.
CVector extend_eval(const EquivariantMapSample& map, const CMatrix& g,
                    const CVector& x);

/// ‖eval(exp(i·A_ξ)·x) − exp(i·A'_ξ)·eval(x)‖ over the codomain norm, the
/// consistency requirement that makes the extension well defined. Both x and
/// exp(i·A_ξ)·x must lie in the ball (DomainError otherwise).
double well_definedness_residual(const EquivariantMapSample& map,
                                 const CVector& x, const CMatrix& xi);

/// ‖eval(K·x) − K'·eval(x)‖ for a unitary group element k (defining
/// coordinates): spot check of equivariance on the ball.
double equivariance_residual(const EquivariantMapSample& map, const CMatrix& k,
                             const CVector& x);

/// Cauchy–Riemann residual ‖df(x)[i·w] − i·df(x)[w]‖ with df estimated by
/// central differences of step h; ≈ 0 iff f is holomorphic at x along w.
double holomorphy_residual(const std::function<CVector(const CVector&)>& f,
                           const CVector& x, const CVector& w, double h = 1e-5);

}  // namespace kflow
