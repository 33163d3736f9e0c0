#pragma once

#include <string>
#include <vector>

#include "kflow/moment_map.hpp"

namespace kflow {

/// Metric ball {‖v‖ < radius} about the origin (the fixed point of the
/// linear model), radius in the weighted norm.
struct BallRegion {
  double radius = 1.0;
};

struct TrajectorySample {
  double t;
  CVector point;   // δ(t) = exp(i·t·A)·v0
  double phi;      // Φ^ξ(δ(t))
  double radius2;  // ⟨δ(t), δ(t)⟩
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // strictly increasing in t
};

/// δ(t) = exp(i·t·A)·v0, the gradient-flow trajectory of Φ^ξ through v0.
CVector flow_point(const LinearRep& rep, const LieAlgebraElement& xi,
                   const CVector& v0, double t);

/// Uniform sampling of the trajectory over [t_min, t_max]; a sample at
/// t = 0 is inserted whenever the window contains it, so point(0) = v0
/// holds exactly on the record.
Trajectory sample_trajectory(const LinearRep& rep, const LieAlgebraElement& xi,
                             const CVector& v0, double t_min, double t_max,
                             int n_samples);

/// |⟨grad R²(v), grad Φ^ξ(v)⟩ − 4·Φ^ξ(v)| with grad R²(v) = 2v and the real
/// inner product Re⟨·,·⟩ — exact identity in the flat model, so the return
/// value is pure numerical noise for valid reps.
double angle_identity_residual(const LinearRep& rep,
                               const LieAlgebraElement& xi, const CVector& v);

struct MonotonicityReport {
  bool conclusive = false;
  /// max over consecutive samples of (phi_i − phi_{i+1}), clamped below at 0.
  double max_monotonicity_violation = 0.0;
  /// max over interior samples of the relative mismatch between the central
  /// difference of phi and ‖grad Φ^ξ‖².
  double max_derivative_mismatch = 0.0;
};

/// Verifies Φ^ξ∘δ nondecreasing and dΦ/dt = ‖grad Φ^ξ‖² on the samples.
/// Fewer than 3 samples → inconclusive.
MonotonicityReport phi_monotonicity_check(const LinearRep& rep,
                                          const LieAlgebraElement& xi,
                                          const Trajectory& traj);

enum class ConvexityVerdict { convex, violation, inconclusive };

struct CrossingEvent {
  double t;       // refined to crossing_tol by bisection
  bool entering;  // outside → inside as t increases
  double phi;     // Φ^ξ at the crossing point
};

struct ConvexityCertificate {
  ConvexityVerdict verdict = ConvexityVerdict::inconclusive;
  std::vector<CrossingEvent> crossings;  // strictly increasing t
  int visit_intervals = 0;  // maximal runs of samples inside the ball
  double sample_step = 0.0;
  std::string note;
};

/// Samples ‖δ(t)‖ over the window, locates boundary crossings by sign change
/// + bisection, and reports whether the visit set {t : ‖δ(t)‖ < r} is a
/// single interval. Also records Φ^ξ at each crossing (the boundary sign
/// conditions: ≤ 0 entering, ≥ 0 exiting, within tolerance). Two crossings
/// within one sample step → inconclusive rather than a guessed verdict.
/// Requires n_samples ≥ 100.
ConvexityCertificate orbital_convexity_check(
    const LinearRep& rep, const LieAlgebraElement& xi, const CVector& v0,
    const BallRegion& ball, double t_min, double t_max, int n_samples = 2000,
    double crossing_tol = 1e-10);

}  // namespace kflow
