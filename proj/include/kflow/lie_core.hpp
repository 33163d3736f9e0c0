#pragma once

#include <Eigen/Dense>
#include <complex>

#include "kflow/errors.hpp"

namespace kflow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

bool all_finite(const CMatrix& a);

/// Entrywise sup norm.
double max_abs(const CMatrix& a);

/// Element of a compact Lie algebra acting on some space. Anti-Hermitian,
/// either for the standard metric or for a weighted one (see moment_map.hpp);
/// which metric applies is a property of the surrounding representation,
/// so construction does not validate.
struct LieAlgebraElement {
  CMatrix matrix;

  /// ‖A + Aᴴ‖_max — zero iff anti-Hermitian for the standard metric.
  double anti_hermitian_residual() const;
};

/// Factors of g = k · exp(i·xi) with k unitary and i·xi Hermitian.
struct CartanFactors {
  CMatrix k;
  LieAlgebraElement xi;
};

/// Matrix exponential (scaling-and-squaring); exp(0) = I exactly.
/// Throws DimensionError on non-square input.
CMatrix mat_exp(const CMatrix& a);

/// True iff ‖g·gᴴ − I‖_max ≤ tol.
bool is_unitary(const CMatrix& g, double tol = 1e-12);

/// Square root of a Hermitian positive-semidefinite matrix via
/// eigendecomposition. Input must be Hermitian (unchecked beyond symmetry
/// of the solver); negative eigenvalues below -tol throw DomainError.
CMatrix hermitian_sqrt(const CMatrix& h);

/// Logarithm of a Hermitian positive-definite matrix via eigendecomposition.
/// Deliberately restricted: general matrix logs (branch cuts) are out of
/// scope. Non-positive spectrum throws DomainError.
CMatrix hermitian_log(const CMatrix& h);

/// Cartan (polar) decomposition g = k·exp(i·xi): exp(i·xi) is the Hermitian
/// positive-definite polar factor sqrt(gᴴg), and k = g·exp(−i·xi) is unitary.
/// Throws DecompositionError (with a condition estimate) when g is singular
/// or its condition number exceeds cond_bound.
CartanFactors cartan_decompose(const CMatrix& g, double cond_bound = 1e12);

}  // namespace kflow
