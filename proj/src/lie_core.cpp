#include "kflow/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace kflow {

bool all_finite(const CMatrix& a) { return a.allFinite(); }

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double LieAlgebraElement::anti_hermitian_residual() const {
  return max_abs(matrix + matrix.adjoint());
}

CMatrix mat_exp(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("mat_exp: matrix must be square");
  if (!all_finite(a)) throw DomainError("mat_exp: non-finite entries");
  if (a.isZero(0.0)) return CMatrix::Identity(a.rows(), a.cols());
  return a.exp();
}

bool is_unitary(const CMatrix& g, double tol) {
  if (g.rows() != g.cols()) return false;
  CMatrix d = g * g.adjoint() - CMatrix::Identity(g.rows(), g.cols());
  return max_abs(d) <= tol;
}

namespace {

// Eigendecomposition of a Hermitian matrix with a scalar function applied to
// the spectrum. `fn` may throw DomainError for inadmissible eigenvalues.
template <typename Fn>
CMatrix hermitian_spectral_map(const CMatrix& h, Fn&& fn) {
  if (h.rows() != h.cols())
    throw DimensionError("spectral map: matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw DecompositionError("spectral map: eigensolver failed",
                             std::numeric_limits<double>::infinity());
  Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXd mapped(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) mapped(i) = fn(lam(i));
  return es.eigenvectors() *
         mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors().adjoint();
}

}  // namespace

CMatrix hermitian_sqrt(const CMatrix& h) {
  const double floor = -1e-12 * std::max(1.0, max_abs(h));
  return hermitian_spectral_map(h, [floor](double lam) {
    if (lam < floor)
      throw DomainError("hermitian_sqrt: matrix is not positive semidefinite");
    return std::sqrt(std::max(lam, 0.0));
  });
}

CMatrix hermitian_log(const CMatrix& h) {
  return hermitian_spectral_map(h, [](double lam) {
    if (lam <= 0.0)
      throw DomainError("hermitian_log: matrix is not positive-definite");
    return std::log(lam);
  });
}

CartanFactors cartan_decompose(const CMatrix& g, double cond_bound) {
  if (g.rows() != g.cols())
    throw DimensionError("cartan_decompose: matrix must be square");
  if (!all_finite(g))
    throw DomainError("cartan_decompose: non-finite entries");

  // polar factor P = sqrt(gᴴg): Hermitian positive-definite when g is
  // invertible; its spectrum is the squared singular values of g.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g.adjoint() * g);
  if (es.info() != Eigen::Success)
    throw DecompositionError("cartan_decompose: eigensolver failed",
                             std::numeric_limits<double>::infinity());
  Eigen::VectorXd s2 = es.eigenvalues();
  double s2max = s2.maxCoeff();
  double s2min = s2.minCoeff();
  double cond = (s2min <= 0.0) ? std::numeric_limits<double>::infinity()
                               : std::sqrt(s2max / s2min);
  if (!(cond < cond_bound))
    throw DecompositionError(
        "cartan_decompose: singular or ill-conditioned input", cond);

  const CMatrix& q = es.eigenvectors();
  CMatrix p_inv = q * s2.cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint();
  // i·ξ = log P = ½·log(gᴴg), Hermitian; ξ = −i·log P, anti-Hermitian.
  CMatrix log_p = q * (0.5 * s2.array().log()).matrix().asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint();

  CartanFactors out;
  out.k = g * p_inv;
  out.xi.matrix = Complex(0, -1) * log_p;
  return out;
}

}  // namespace kflow
