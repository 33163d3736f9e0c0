#include "kflow/moment_map.hpp"

namespace kflow {

namespace {

void require_dim(const char* op, Eigen::Index want, Eigen::Index got) {
  if (want != got)
    throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

Complex HermitianSpace::inner(const CVector& u, const CVector& v) const {
  require_dim("inner", weights.size(), u.size());
  require_dim("inner", weights.size(), v.size());
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    acc += weights(i) * std::conj(u(i)) * v(i);
  return acc;
}

double HermitianSpace::norm2(const CVector& v) const {
  require_dim("norm2", weights.size(), v.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    acc += weights(i) * std::norm(v(i));
  return acc;
}

double HermitianSpace::symplectic(const CVector& u, const CVector& v) const {
  return inner(u, v).imag();
}

double HermitianSpace::riemannian(const CVector& u, const CVector& v) const {
  return inner(u, v).real();
}

void HermitianSpace::validate() const {
  if (weights.size() == 0)
    throw DomainError("HermitianSpace: empty weight vector");
  if (!(weights.minCoeff() > 0.0))
    throw DomainError("HermitianSpace: weights must be strictly positive");
}

HermitianSpace standard_space(int dim) {
  if (dim <= 0) throw DomainError("standard_space: dim must be positive");
  return {RVector::Ones(dim)};
}

CMatrix LinearRep::combine(const RVector& coeffs) const {
  if (coeffs.size() != group_dim())
    throw DimensionError("combine: one coefficient per basis element");
  CMatrix acc = CMatrix::Zero(space.dim(), space.dim());
  for (int j = 0; j < group_dim(); ++j) acc += coeffs(j) * lie_basis[j].matrix;
  return acc;
}

double LinearRep::anti_self_adjoint_residual() const {
  // W·A + Aᴴ·W = 0 is ⟨Au,v⟩ + ⟨u,Av⟩ = 0 in matrix form.
  Eigen::VectorXd w = space.weights;
  double worst = 0.0;
  for (const LieAlgebraElement& el : lie_basis) {
    const CMatrix& a = el.matrix;
    CMatrix defect = w.asDiagonal().toDenseMatrix().cast<Complex>() * a +
                     a.adjoint() * w.asDiagonal().toDenseMatrix().cast<Complex>();
    double scale = std::max(1.0, max_abs(a));
    worst = std::max(worst, max_abs(defect) / scale);
  }
  return worst;
}

void LinearRep::validate(double tol) const {
  space.validate();
  for (const LieAlgebraElement& el : lie_basis) {
    if (el.matrix.rows() != space.dim() || el.matrix.cols() != space.dim())
      throw DimensionError("LinearRep: basis element of wrong shape");
    if (!all_finite(el.matrix))
      throw DomainError("LinearRep: non-finite basis element");
  }
  if (anti_self_adjoint_residual() > tol)
    throw DomainError(
        "LinearRep: basis not anti-self-adjoint for the weighted metric");
}

double momentum_component(const LinearRep& rep, const LieAlgebraElement& xi,
                          const CVector& v) {
  require_dim("momentum_component", rep.space.dim(), v.size());
  require_dim("momentum_component", rep.space.dim(), xi.matrix.rows());
  require_dim("momentum_component", rep.space.dim(), xi.matrix.cols());
  // Φ^ξ(v) = ½·Ω(Av, v) = ½·Im⟨Av, v⟩
  return 0.5 * rep.space.symplectic(CVector(xi.matrix * v), v);
}

MomentumValue momentum_map(const LinearRep& rep, const CVector& v) {
  MomentumValue out;
  out.components.resize(rep.group_dim());
  for (int j = 0; j < rep.group_dim(); ++j)
    out.components(j) = momentum_component(rep, rep.lie_basis[j], v);
  return out;
}

CVector momentum_gradient(const LinearRep& rep, const LieAlgebraElement& xi,
                          const CVector& v) {
  require_dim("momentum_gradient", rep.space.dim(), v.size());
  require_dim("momentum_gradient", rep.space.dim(), xi.matrix.rows());
  return Complex(0, 1) * (xi.matrix * v);
}

double equivariance_residual(const LinearRep& rep, const CMatrix& k,
                             const CVector& v, double unitary_tol) {
  require_dim("equivariance_residual", rep.space.dim(), k.rows());
  require_dim("equivariance_residual", rep.space.dim(), k.cols());
  require_dim("equivariance_residual", rep.space.dim(), v.size());
  // unitary for the weighted metric: kᴴ·W·k = W
  CMatrix w = rep.space.weights.asDiagonal().toDenseMatrix().cast<Complex>();
  if (max_abs(CMatrix(k.adjoint() * w * k - w)) >
      unitary_tol * std::max(1.0, rep.space.weights.maxCoeff()))
    throw DomainError(
        "equivariance_residual: k is not unitary for the weighted metric");

  CVector kv = k * v;
  CMatrix k_inv = k.inverse();
  double worst = 0.0;
  for (const LieAlgebraElement& xi : rep.lie_basis) {
    double lhs = momentum_component(rep, xi, kv);
    LieAlgebraElement conj_xi{k_inv * xi.matrix * k};
    double rhs = momentum_component(rep, conj_xi, v);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace kflow
