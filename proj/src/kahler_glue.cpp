#include "kflow/kahler_glue.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "kflow/errors.hpp"

namespace kflow {

namespace {

// 0 → 1 ramp on [0,1] with value, slope and curvature matched at both ends.
double quintic_ramp(double s) {
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

void require_evaluable(const KahlerPotential& u, const CVector& x) {
  if (!u.eval) throw DomainError("potential has no evaluator");
  if (x.size() != u.dim)
    throw DimensionError("point dimension does not match the potential");
}

CVector real_direction(int dim, int axis, bool imaginary) {
  CVector v = CVector::Zero(dim);
  v(axis) = imaginary ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  return v;
}

// 4-point cross stencil for the second partial along real directions p, q.
double cross_second(const std::function<double(const CVector&)>& f,
                    const CVector& x, const CVector& p, const CVector& q,
                    double h) {
  return (f(x + h * (p + q)) - f(x + h * (p - q)) - f(x + h * (q - p)) +
          f(x - h * (p + q))) /
         (4.0 * h * h);
}

CMatrix fd_complex_hessian(const KahlerPotential& u, const CVector& x,
                           double h) {
  const int n = u.dim;
  CMatrix out(n, n);
  for (int a = 0; a < n; ++a) {
    CVector xa = real_direction(n, a, false);
    CVector ya = real_direction(n, a, true);
    for (int b = 0; b < n; ++b) {
      CVector xb = real_direction(n, b, false);
      CVector yb = real_direction(n, b, true);
      double xx = cross_second(u.eval, x, xa, xb, h);
      double yy = cross_second(u.eval, x, ya, yb, h);
      double xy = cross_second(u.eval, x, xa, yb, h);
      double yx = cross_second(u.eval, x, ya, xb, h);
      out(a, b) = 0.25 * Complex(xx + yy, xy - yx);
    }
  }
  return out;
}

// Gauss–Legendre nodes/weights on [0,1] via the Jacobi matrix.
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double beta = k / std::sqrt(4.0 * double(k) * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success)
    throw DecompositionError("quadrature eigensolve failed",
                             std::numeric_limits<double>::infinity());
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    double first = es.eigenvectors()(0, i);
    weights[i] = first * first;  // 2·v₀² on [−1,1], halved for [0,1]
  }
}

}  // namespace

KahlerPotential flat_potential(int dim) {
  if (dim < 1) throw DimensionError("potential dimension must be positive");
  KahlerPotential u;
  u.dim = dim;
  u.eval = [](const CVector& x) { return x.squaredNorm(); };
  u.analytic_hessian = [dim](const CVector&) {
    return CMatrix(CMatrix::Identity(dim, dim));
  };
  u.description = "flat";
  return u;
}

KahlerPotential fubini_study_potential(int dim) {
  if (dim < 1) throw DimensionError("potential dimension must be positive");
  KahlerPotential u;
  u.dim = dim;
  u.eval = [](const CVector& x) { return std::log(1.0 + x.squaredNorm()); };
  u.analytic_hessian = [dim](const CVector& x) {
    double d = 1.0 + x.squaredNorm();
    CMatrix h = CMatrix::Identity(dim, dim) / d -
                (x.conjugate() * x.transpose()) / (d * d);
    return h;
  };
  u.description = "fubini-study";
  return u;
}

CutoffProfile make_cutoff(CutoffSmoothness smoothness) {
  CutoffProfile chi;
  chi.smoothness = smoothness;
  if (smoothness == CutoffSmoothness::c2_polynomial) {
    chi.eval = [](double t) {
      if (t <= 1.0) return 0.0;
      if (t >= 2.0) return 1.0;
      return quintic_ramp(t - 1.0);
    };
  } else {
    chi.eval = [](double t) {
      if (t <= 1.0) return 0.0;
      if (t >= 2.0) return 1.0;
      double rise = bump(t - 1.0);
      return rise / (rise + bump(2.0 - t));
    };
  }
  return chi;
}

CMatrix complex_hessian(const KahlerPotential& u, const CVector& x, double h,
                        HessianDiagnostics* diag) {
  require_evaluable(u, x);
  if (!(h > 0.0) || 1.0 + h == 1.0)
    throw DomainError("finite-difference step underflow");

  // Fast path for scans: an analytic Hessian with no diagnostics requested
  // makes the stencil evaluations pure waste.
  if (u.analytic_hessian && diag == nullptr) {
    CMatrix exact = u.analytic_hessian(x);
    if (exact.rows() != u.dim || exact.cols() != u.dim)
      throw DimensionError("analytic Hessian has the wrong shape");
    return exact;
  }

  CMatrix fd = fd_complex_hessian(u, x, h);
  double asymmetry = (fd - fd.adjoint()).cwiseAbs().maxCoeff();
  CMatrix sym = 0.5 * (fd + fd.adjoint());
  if (diag) {
    diag->asymmetry_residual = asymmetry;
    diag->analytic_mismatch = 0.0;
  }
  if (u.analytic_hessian) {
    CMatrix exact = u.analytic_hessian(x);
    if (exact.rows() != u.dim || exact.cols() != u.dim)
      throw DimensionError("analytic Hessian has the wrong shape");
    if (diag) diag->analytic_mismatch = (exact - sym).cwiseAbs().maxCoeff();
    return exact;
  }
  return sym;
}

KahlerPotential glued_potential(const KahlerPotential& u,
                                const CutoffProfile& chi, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("gluing scale must be positive");
  if (!chi.eval) throw DomainError("cutoff profile has no evaluator");
  CVector origin = CVector::Zero(u.dim);
  require_evaluable(u, origin);
  if (std::abs(u.eval(origin)) > 1e-9)
    throw DomainError("potential is not normalized: u(0) must vanish");
  CMatrix h0 = complex_hessian(u, origin);
  if ((h0 - CMatrix::Identity(u.dim, u.dim)).cwiseAbs().maxCoeff() > 1e-6)
    throw DomainError(
        "potential is not normalized: Hessian at the origin must be the "
        "identity");

  KahlerPotential out;
  out.dim = u.dim;
  out.description = "glued(" + u.description + ")";
  const double lam2 = lambda * lambda;
  auto inner = u.eval;
  auto cut = chi.eval;
  out.eval = [inner, cut, lam2](const CVector& x) {
    double r2 = x.squaredNorm();
    double c = cut(r2 / lam2);
    if (c == 0.0) return r2;  // keep the flat core bit-exact
    return r2 + c * (inner(x) - r2);
  };
  return out;
}

GlueReport certify_glue(const KahlerPotential& u, const CutoffProfile& chi,
                        double lambda, int grid_per_axis, double fd_step) {
  GlueReport report;
  report.lambda = lambda;
  report.grid_per_axis = grid_per_axis;
  report.dim = u.dim;
  report.half_width = lambda * std::sqrt(3.0);
  if (grid_per_axis < 8) {
    report.inconclusive = true;
    return report;
  }

  KahlerPotential tilde = glued_potential(u, chi, lambda);
  const int n = u.dim;
  const int axes = 2 * n;
  const double w = report.half_width;
  const double lam2 = lambda * lambda;
  // The flat-region claim is checked by finite differences, so the whole
  // stencil (reach h·√2 < 2h) must stay inside O(λ²); at rim points the
  // stencil would leak into the transition annulus and report a spurious
  // deviation that no step size removes.
  const double flat_margin = lambda - 2.0 * fd_step;
  const double flat_lim2 = flat_margin > 0.0 ? flat_margin * flat_margin : 0.0;
  const CMatrix eye = CMatrix::Identity(n, n);

  double min_eig = std::numeric_limits<double>::infinity();
  double sup_f = 0.0;
  double flat_res = 0.0;
  double outer_res = 0.0;

  Eigen::SelfAdjointEigenSolver<CMatrix> eig;
  std::vector<int> idx(axes, 0);
  CVector x(n);
  while (true) {
    for (int a = 0; a < n; ++a) {
      double re = -w + 2.0 * w * idx[2 * a] / (grid_per_axis - 1);
      double im = -w + 2.0 * w * idx[2 * a + 1] / (grid_per_axis - 1);
      x(a) = Complex(re, im);
    }
    double r2 = x.squaredNorm();
    if (r2 <= 3.0 * lam2) {
      CMatrix glued_h = complex_hessian(tilde, x, fd_step);
      eig.compute(glued_h, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
      CMatrix base_h = complex_hessian(u, x, fd_step);
      sup_f = std::max(sup_f, (glued_h - base_h).cwiseAbs().maxCoeff());
      if (r2 < flat_lim2)
        flat_res = std::max(flat_res, (glued_h - eye).cwiseAbs().maxCoeff());
      if (r2 > 2.0 * lam2)
        outer_res = std::max(outer_res, std::abs(tilde.eval(x) - u.eval(x)));
    }
    int carry = 0;
    while (carry < axes && ++idx[carry] == grid_per_axis) {
      idx[carry] = 0;
      ++carry;
    }
    if (carry == axes) break;
  }

  report.min_eigenvalue = min_eig;
  report.sup_f_ab = sup_f;
  report.flat_region_residual = flat_res;
  report.outer_region_residual = outer_res;
  report.positive_definite = std::isfinite(min_eig) && min_eig > 0.0;
  return report;
}

double find_lambda_threshold(const KahlerPotential& u, const CutoffProfile& chi,
                             double eps, double lambda_lo, double lambda_hi,
                             int grid_per_axis, int bisect_iters) {
  if (!(lambda_lo > 0.0) || !(lambda_hi > lambda_lo))
    throw DomainError("gluing-scale range must satisfy 0 < lo < hi");
  auto admissible = [&](double lam) {
    GlueReport r = certify_glue(u, chi, lam, grid_per_axis);
    return !r.inconclusive && r.positive_definite && r.sup_f_ab < eps;
  };
  if (admissible(lambda_hi)) return lambda_hi;
  if (!admissible(lambda_lo))
    throw DomainError("no admissible gluing scale in the range");
  double good = lambda_lo;
  double bad = lambda_hi;
  for (int i = 0; i < bisect_iters; ++i) {
    double mid = 0.5 * (good + bad);
    if (admissible(mid))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

double momentum_by_path(const HessianField& omega_hessian,
                        const LieAlgebraElement& xi,
                        const std::vector<CVector>& path, double base_value,
                        const RegionPredicate& region, int gauss_points) {
  if (!omega_hessian) throw DomainError("no Hessian field given");
  if (path.size() < 2) throw DomainError("path needs at least two nodes");
  const Eigen::Index d = path.front().size();
  if (xi.matrix.rows() != d || xi.matrix.cols() != d)
    throw DimensionError("generator does not match the path dimension");

  std::vector<double> nodes, weights;
  gauss_legendre_01(gauss_points, nodes, weights);

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const CVector& a = path[s];
    const CVector& b = path[s + 1];
    if (a.size() != d || b.size() != d)
      throw DimensionError("path nodes have mixed dimensions");
    CVector dir = b - a;
    double segment = 0.0;
    for (int i = 0; i < gauss_points; ++i) {
      CVector x = a + nodes[i] * dir;
      if (region && !region(x))
        throw DomainError("path leaves the admissible region");
      CMatrix h = omega_hessian(x);
      if (h.rows() != d || h.cols() != d)
        throw DimensionError("Hessian field has the wrong shape");
      CVector v = xi.matrix * x;
      segment += weights[i] * (v.adjoint() * h * dir).value().imag();
    }
    total += segment;
  }
  return base_value + total;
}

}  // namespace kflow
