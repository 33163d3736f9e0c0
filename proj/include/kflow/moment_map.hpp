#pragma once

#include <vector>

#include "kflow/lie_core.hpp"

namespace kflow {

/// C^dim with the diagonal Hermitian inner product
///   ⟨u,v⟩ = Σ_i w_i · conj(u_i) · v_i,
/// antilinear in the FIRST slot. The symplectic form is Ω = Im⟨·,·⟩ and the
/// Riemannian metric is Re⟨·,·⟩; every sign convention downstream (gradient
/// = i·A·v, momentum −|v|²/2 for A = i in one dimension, momentum
/// nondecreasing along the flow) hangs off this choice.
struct HermitianSpace {
  RVector weights;

  int dim() const { return static_cast<int>(weights.size()); }
  Complex inner(const CVector& u, const CVector& v) const;
  double norm2(const CVector& v) const;  // ⟨v,v⟩, real and ≥ 0
  double symplectic(const CVector& u, const CVector& v) const;  // Im⟨u,v⟩
  double riemannian(const CVector& u, const CVector& v) const;  // Re⟨u,v⟩

  /// Throws DomainError unless all weights are strictly positive.
  void validate() const;
};

/// All-weights-one space.
HermitianSpace standard_space(int dim);

/// Linear action of a compact group's Lie algebra on a HermitianSpace:
/// a basis of the algebra given directly by its action matrices, each
/// anti-Hermitian for the weighted metric (W·A + Aᴴ·W = 0).
struct LinearRep {
  HermitianSpace space;
  std::vector<LieAlgebraElement> lie_basis;

  int group_dim() const { return static_cast<int>(lie_basis.size()); }

  /// Σ_j coeffs[j] · lie_basis[j].
  CMatrix combine(const RVector& coeffs) const;

  /// max_j ‖W·A_j + A_jᴴ·W‖_max / ‖A_j‖_max — anti-self-adjointness defect.
  double anti_self_adjoint_residual() const;

  /// Throws DomainError on bad weights, shape mismatch, or residual > tol.
  void validate(double tol = 1e-9) const;
};

struct MomentumValue {
  RVector components;  // one per lie_basis element
};

/// Φ^ξ(v) = ½·Ω(A·v, v) = ½·Im⟨A·v, v⟩ with A the action of xi.
/// xi may be any anti-Hermitian matrix for rep's metric, not only a basis
/// combination. Throws DimensionError on shape mismatch.
double momentum_component(const LinearRep& rep, const LieAlgebraElement& xi,
                          const CVector& v);

/// All components at once: Φ(v)(ξ_j) per basis element. Φ(0) = 0.
MomentumValue momentum_map(const LinearRep& rep, const CVector& v);

/// grad Φ^ξ(v) = i·A·v for the Riemannian metric Re⟨·,·⟩.
CVector momentum_gradient(const LinearRep& rep, const LieAlgebraElement& xi,
                          const CVector& v);

/// max over basis ξ_j of |Φ^{ξ_j}(k·v) − Φ^{k⁻¹ξ_jk}(v)|. k must be unitary
/// for the weighted metric (else DomainError): coadjoint equivariance probe.
double equivariance_residual(const LinearRep& rep, const CMatrix& k,
                             const CVector& v, double unitary_tol = 1e-8);

}  // namespace kflow
