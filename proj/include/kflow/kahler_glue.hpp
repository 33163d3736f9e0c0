#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kflow/moment_map.hpp"

namespace kflow {

/// Real potential u on C^dim, normalized so that its complex Hessian at the
/// origin is the identity and R(x) = u(x) − ‖x‖² is O(‖x‖³). The Kähler
/// form attached to a Hermitian Hessian H is
///   ω_H(u,v) = Im(uᴴ·H·v),
/// which for H = I is the standard symplectic form Im⟨·,·⟩ of moment_map —
/// the normalization that makes path-integrated momentum match ½·Im⟨Av,v⟩
/// with no factor-2 slack.
struct KahlerPotential {
  int dim = 1;
  std::function<double(const CVector&)> eval;
  std::function<CMatrix(const CVector&)> analytic_hessian;  // optional
  std::string description;
};

KahlerPotential flat_potential(int dim);
KahlerPotential fubini_study_potential(int dim);

enum class CutoffSmoothness { c2_polynomial, c_infinity_bump };

/// χ with χ(t) = 0 for t ≤ 1, χ(t) = 1 for t ≥ 2, monotone in between.
/// The default is the quintic with value/slope/curvature matched at both
/// ends (C²); a C-infinity bump is available for comparison.
struct CutoffProfile {
  CutoffSmoothness smoothness = CutoffSmoothness::c2_polynomial;
  std::function<double(double)> eval;
};

CutoffProfile make_cutoff(
    CutoffSmoothness smoothness = CutoffSmoothness::c2_polynomial);

struct HessianDiagnostics {
  double asymmetry_residual = 0.0;    // ‖H − Hᴴ‖_max before symmetrization
  double analytic_mismatch = 0.0;     // vs analytic_hessian when available
};

/// H_αβ = ∂²u/∂x_α∂x̄_β by 4-point central differences on the real
/// coordinates, symmetrized to Hermitian. When u carries an analytic
/// Hessian it is returned instead and the finite-difference value is kept
/// as a cross-check in `diag`. Throws DomainError when h underflows.
CMatrix complex_hessian(const KahlerPotential& u, const CVector& x,
                        double h = 1e-4, HessianDiagnostics* diag = nullptr);

/// ũ(x) = ‖x‖² + χ(‖x‖²/λ²)·R(x): flat on O(λ²) = {‖x‖² < λ²}, equal to u
/// outside O(2λ²). Checks that u is normalized (Hessian ≈ I at 0).
KahlerPotential glued_potential(const KahlerPotential& u,
                                const CutoffProfile& chi, double lambda);

struct GlueReport {
  double lambda = 0.0;
  int grid_per_axis = 0;
  int dim = 0;
  double half_width = 0.0;        // polydisc half-width enclosing O(3λ²)
  double min_eigenvalue = 0.0;    // of H̃ over the grid ∩ O(3λ²)
  double sup_f_ab = 0.0;          // sup |H̃_αβ − H_αβ(u)| over the grid ∩ O(3λ²)
  double flat_region_residual = 0.0;   // max ‖H̃ − I‖_max over O(λ²), shrunk
                                       // by the stencil width 2·fd_step
  double outer_region_residual = 0.0;  // max |ũ − u| outside O(2λ²)
  bool positive_definite = false;
  bool inconclusive = false;      // grid too coarse (< 8 per axis)
};

/// Grid scan over the polydisc enclosing O(3λ²): positivity of the glued
/// Hessian, the f_αβ smallness proxy, flatness near 0, and locality outside
/// O(2λ²). Hessians by finite differences of ũ (step fd_step).
GlueReport certify_glue(const KahlerPotential& u, const CutoffProfile& chi,
                        double lambda, int grid_per_axis = 64,
                        double fd_step = 1e-4);

/// Bisection over [lambda_lo, lambda_hi] for the largest tested λ whose
/// GlueReport has sup_f_ab < eps and a positive-definite verdict. Throws
/// DomainError when no admissible λ is found in the range.
double find_lambda_threshold(const KahlerPotential& u, const CutoffProfile& chi,
                             double eps, double lambda_lo, double lambda_hi,
                             int grid_per_axis = 32, int bisect_iters = 12);

using HessianField = std::function<CMatrix(const CVector&)>;
using RegionPredicate = std::function<bool(const CVector&)>;

/// Line integral of the 1-form ι_{ξ_M}ω_H along the polyline, plus
/// base_value: the path-reconstructed momentum. ξ_M(x) = xi.matrix · x.
/// Gauss–Legendre quadrature per segment. If a region predicate is given,
/// every quadrature node must satisfy it (DomainError otherwise).
double momentum_by_path(const HessianField& omega_hessian,
                        const LieAlgebraElement& xi,
                        const std::vector<CVector>& path, double base_value,
                        const RegionPredicate& region = nullptr,
                        int gauss_points = 32);

}  // namespace kflow
