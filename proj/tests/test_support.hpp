#pragma once

// Shared random generators for the unit tests. Everything is seeded
// explicitly so failures reproduce.

#include <random>

#include "kflow/moment_map.hpp"

namespace testsup {

using kflow::CMatrix;
using kflow::Complex;
using kflow::CVector;
using kflow::RVector;

inline Complex randc(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  return {n01(rng), n01(rng)};
}

inline CMatrix random_matrix(std::mt19937_64& rng, int n, int m) {
  CMatrix a(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = randc(rng);
  return a;
}

inline CVector random_vector(std::mt19937_64& rng, int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = randc(rng);
  return v;
}

inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n, n));
  CMatrix q = qr.householderQ();
  return q;
}

/// U · diag(s) · Vᴴ with singular values in [s_min, s_max]: condition number
/// bounded by s_max/s_min by construction.
inline CMatrix random_well_conditioned(std::mt19937_64& rng, int n,
                                       double s_min = 0.5, double s_max = 2.0) {
  std::uniform_real_distribution<double> us(s_min, s_max);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s(i) = us(rng);
  return random_unitary(rng, n) * s.asDiagonal().toDenseMatrix().cast<Complex>() *
         random_unitary(rng, n);
}

inline CMatrix random_sl2(std::mt19937_64& rng) {
  for (;;) {
    CMatrix g = random_matrix(rng, 2, 2);
    Complex d = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    if (std::abs(d) > 0.3) return g / std::sqrt(d);
  }
}

inline CMatrix random_su2(std::mt19937_64& rng) {
  // unit quaternion (a + bi, c + di; -c + di, a - bi)
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = n01(rng);
  q.normalize();
  CMatrix k(2, 2);
  k(0, 0) = Complex(q(0), q(1));
  k(0, 1) = Complex(q(2), q(3));
  k(1, 0) = Complex(-q(2), q(3));
  k(1, 1) = Complex(q(0), -q(1));
  return k;
}

/// Anti-Hermitian for the standard metric, sup-norm-normalized.
inline CMatrix random_anti_hermitian(std::mt19937_64& rng, int n) {
  CMatrix a = random_matrix(rng, n, n);
  CMatrix b = 0.5 * (a - a.adjoint());
  double s = b.cwiseAbs().maxCoeff();
  return s > 0 ? CMatrix(b / s) : b;
}

/// su(2) as anti-Hermitian traceless 2×2: span{diag(i,−i), [[0,1],[−1,0]],
/// [[0,i],[i,0]]}.
inline std::vector<CMatrix> su2_basis() {
  const Complex I(0, 1);
  CMatrix u1(2, 2), u2(2, 2), u3(2, 2);
  u1 << I, 0, 0, -I;
  u2 << 0, 1, -1, 0;
  u3 << 0, I, I, 0;
  return {u1, u2, u3};
}

inline RVector random_weights(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uw(0.4, 2.5);
  RVector w(n);
  for (int i = 0; i < n; ++i) w(i) = uw(rng);
  return w;
}

/// Random LinearRep on dim n with random positive weights: basis elements
/// W^{-1/2}·B·W^{1/2} with B anti-Hermitian, which is anti-Hermitian for the
/// weighted metric.
inline kflow::LinearRep random_rep(std::mt19937_64& rng, int n,
                                   int group_dim) {
  kflow::LinearRep rep;
  rep.space.weights = random_weights(rng, n);
  Eigen::VectorXd ws = rep.space.weights.cwiseSqrt();
  CMatrix w_half = ws.asDiagonal().toDenseMatrix().cast<Complex>();
  CMatrix w_half_inv = ws.cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>();
  for (int j = 0; j < group_dim; ++j) {
    kflow::LieAlgebraElement xi;
    xi.matrix = w_half_inv * random_anti_hermitian(rng, n) * w_half;
    rep.lie_basis.push_back(xi);
  }
  return rep;
}

}  // namespace testsup
