#include "kflow/flow_convexity.hpp"

#include <algorithm>
#include <cmath>

namespace kflow {

CVector flow_point(const LinearRep& rep, const LieAlgebraElement& xi,
                   const CVector& v0, double t) {
  if (v0.size() != rep.space.dim() || xi.matrix.rows() != rep.space.dim())
    throw DimensionError("flow_point: dimension mismatch");
  if (!std::isfinite(t)) throw DomainError("flow_point: non-finite time");
  return mat_exp(CMatrix(Complex(0, t) * xi.matrix)) * v0;
}

Trajectory sample_trajectory(const LinearRep& rep, const LieAlgebraElement& xi,
                             const CVector& v0, double t_min, double t_max,
                             int n_samples) {
  if (!(t_min < t_max)) throw DomainError("sample_trajectory: empty window");
  if (n_samples < 2) throw DomainError("sample_trajectory: need >= 2 samples");

  std::vector<double> ts;
  ts.reserve(n_samples + 1);
  const double h = (t_max - t_min) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) ts.push_back(t_min + i * h);
  ts.back() = t_max;
  if (t_min <= 0.0 && 0.0 <= t_max &&
      std::none_of(ts.begin(), ts.end(), [](double t) { return t == 0.0; })) {
    ts.push_back(0.0);
    std::sort(ts.begin(), ts.end());
  }

  Trajectory traj;
  traj.samples.reserve(ts.size());
  for (double t : ts) {
    TrajectorySample s;
    s.t = t;
    s.point = (t == 0.0) ? v0 : flow_point(rep, xi, v0, t);
    s.phi = momentum_component(rep, xi, s.point);
    s.radius2 = rep.space.norm2(s.point);
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

double angle_identity_residual(const LinearRep& rep,
                               const LieAlgebraElement& xi, const CVector& v) {
  CVector grad_r2 = 2.0 * v;
  CVector grad_phi = momentum_gradient(rep, xi, v);
  double lhs = rep.space.riemannian(grad_r2, grad_phi);
  double rhs = 4.0 * momentum_component(rep, xi, v);
  return std::abs(lhs - rhs);
}

MonotonicityReport phi_monotonicity_check(const LinearRep& rep,
                                          const LieAlgebraElement& xi,
                                          const Trajectory& traj) {
  MonotonicityReport out;
  if (traj.samples.size() < 3) return out;  // inconclusive
  out.conclusive = true;

  for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    double drop = traj.samples[i].phi - traj.samples[i + 1].phi;
    out.max_monotonicity_violation =
        std::max(out.max_monotonicity_violation, std::max(0.0, drop));
  }
  for (size_t i = 1; i + 1 < traj.samples.size(); ++i) {
    const TrajectorySample& lo = traj.samples[i - 1];
    const TrajectorySample& hi = traj.samples[i + 1];
    double fd = (hi.phi - lo.phi) / (hi.t - lo.t);
    CVector grad = momentum_gradient(rep, xi, traj.samples[i].point);
    double grad2 = rep.space.norm2(grad);
    double mismatch = std::abs(fd - grad2) / std::max(1.0, grad2);
    out.max_derivative_mismatch = std::max(out.max_derivative_mismatch, mismatch);
  }
  return out;
}

namespace {

struct RadiusProbe {
  const LinearRep& rep;
  const LieAlgebraElement& xi;
  const CVector& v0;
  double r2;

  // ‖δ(t)‖² − r²: negative inside the ball
  double operator()(double t) const {
    return rep.space.norm2(flow_point(rep, xi, v0, t)) - r2;
  }
};

}  // namespace

ConvexityCertificate orbital_convexity_check(
    const LinearRep& rep, const LieAlgebraElement& xi, const CVector& v0,
    const BallRegion& ball, double t_min, double t_max, int n_samples,
    double crossing_tol) {
  if (n_samples < 100)
    throw DomainError("orbital_convexity_check: need >= 100 samples");
  if (!(ball.radius > 0.0))
    throw DomainError("orbital_convexity_check: radius must be positive");
  if (!(std::isfinite(t_min) && std::isfinite(t_max) && t_min < t_max))
    throw DomainError("orbital_convexity_check: bad window");

  Trajectory traj = sample_trajectory(rep, xi, v0, t_min, t_max, n_samples);
  const double r2 = ball.radius * ball.radius;
  RadiusProbe probe{rep, xi, v0, r2};

  ConvexityCertificate cert;
  cert.sample_step = (t_max - t_min) / (n_samples - 1);

  // maximal runs of samples strictly inside the ball
  bool prev_inside = false;
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    bool inside = traj.samples[i].radius2 < r2;
    if (inside && !prev_inside) ++cert.visit_intervals;
    if (i > 0 && inside != prev_inside) {
      // bisect the sign change of ‖δ(t)‖² − r²
      double a = traj.samples[i - 1].t, b = traj.samples[i].t;
      double fa = traj.samples[i - 1].radius2 - r2;
      while (b - a > crossing_tol) {
        double mid = 0.5 * (a + b);
        double fm = probe(mid);
        if ((fa > 0.0) == (fm > 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      CrossingEvent ev;
      ev.t = 0.5 * (a + b);
      ev.entering = inside;  // outside -> inside
      ev.phi = momentum_component(rep, xi, flow_point(rep, xi, v0, ev.t));
      cert.crossings.push_back(ev);
    }
    prev_inside = inside;
  }

  for (size_t i = 1; i < cert.crossings.size(); ++i) {
    if (cert.crossings[i].t - cert.crossings[i - 1].t < cert.sample_step) {
      cert.verdict = ConvexityVerdict::inconclusive;
      cert.note =
          "adjacent crossings within one sample step; rerun with a denser "
          "grid to separate them";
      return cert;
    }
  }

  cert.verdict = (cert.visit_intervals <= 1) ? ConvexityVerdict::convex
                                             : ConvexityVerdict::violation;
  return cert;
}

}  // namespace kflow
