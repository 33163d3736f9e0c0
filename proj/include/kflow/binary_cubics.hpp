#pragma once

#include <vector>

#include "kflow/moment_map.hpp"

namespace kflow::cubics {

using GroupElement = Eigen::Matrix2cd;
using RepMatrix = Eigen::Matrix4cd;
using Coeffs = Eigen::Vector4cd;

/// f = c₀x³ + c₁x²y + c₂xy² + c₃y³.
struct BinaryCubic {
  Coeffs c = Coeffs::Zero();

  double norm() const { return c.norm(); }
  bool is_zero() const { return c.isZero(0.0); }
};

BinaryCubic cubic(Complex c0, Complex c1, Complex c2, Complex c3);

/// Substitution action (g·f)(v) = f(g·v), expanded in the monomial basis.
/// This orientation is the one reproducing the printed expansion of the
/// order-three matrix below acting on x²y; it makes rep_matrix an
/// ANTI-homomorphism (rep(gh) = rep(h)·rep(g)). Throws DomainError when g
/// is singular.
BinaryCubic act(const GroupElement& g, const BinaryCubic& f);

/// Left-action variant act(g⁻¹, f); rep_matrix_left is a homomorphism.
BinaryCubic act_left(const GroupElement& g, const BinaryCubic& f);

/// 4×4 matrix of act(g,·) in the monomial basis (columns = act on monomials).
RepMatrix rep_matrix(const GroupElement& g);
RepMatrix rep_matrix_left(const GroupElement& g);

/// d/dt|₀ rep_matrix(exp(t·ξ)) from the first-order substitution rule,
/// exactly (no differencing). ξ must be traceless (tol 1e−9).
RepMatrix lie_rep(const GroupElement& xi);

/// Point [a:b] of the projective line, ‖(a,b)‖ = 1, with the largest-modulus
/// component rotated to the positive real axis (phase convention).
struct ProjectiveRoot {
  Complex a;
  Complex b;
  int multiplicity = 1;
};

/// Chordal distance |a₁b₂ − a₂b₁| between normalized representatives.
double chordal_distance(const ProjectiveRoot& p, const ProjectiveRoot& q);

struct ProjectiveRootSet {
  std::vector<ProjectiveRoot> roots;      // distinct after clustering
  double reconstruction_residual = 0.0;   // relative, vs the input cubic
};

/// Projective roots with multiplicities: companion-matrix eigenvalues after
/// dehomogenization, roots at infinity [1:0] recovered from vanishing
/// leading coefficients, multiplicities by clustering at cluster_tol in the
/// chordal metric. Clusters that escape cluster_tol but whose joint centroid
/// still annihilates the gradient of f are merged as well — multiple roots of
/// a numerically factored cubic split far wider than rounding error, like
/// (backward error)^(1/multiplicity). The zero form yields an empty root set
/// (type-IV signal).
ProjectiveRootSet factorize(const BinaryCubic& f, double cluster_tol = 1e-7);

/// I: three distinct roots; II: double + simple; III: triple; IV: zero form.
enum class FactorType { I, II, III, IV };

struct TypeReport {
  FactorType type = FactorType::IV;
  bool borderline = false;          // root separation near the clustering tol
  /// Between distinct clustered roots; +inf when fewer than two remain.
  double min_root_separation = 0.0;
};

TypeReport classify_type(const BinaryCubic& f, double cluster_tol = 1e-7);

enum class StabilizerKind { finite, positive_dimensional, full_group };

/// Stabilizer of a cubic inside SL(2,C). For positive-dimensional
/// stabilizers `order` holds the component count and `dimension` the complex
/// dimension of the identity component; for finite ones it is the group
/// order (dimension 0).
struct StabilizerDescription {
  StabilizerKind kind = StabilizerKind::finite;
  int order = 0;
  int dimension = 0;
  std::vector<GroupElement> generators;
  double max_fixing_residual = 0.0;
  bool borderline = false;
};

/// Table of stabilizers by type: I → cyclic of order 3 (root permutations
/// solved projectively, lifted ±, tested for exact fixing); II → trivial
/// (the two-point-fixing one-parameter family admits no nontrivial exact
/// fix); III → positive-dimensional, dim 1, 3 components (upper-triangular
/// family); IV → full group.
StabilizerDescription compute_stabilizer(const BinaryCubic& f,
                                         double tol = 1e-8);

/// [[−1/2, 3ε/2], [−1/(2ε), −1/2]]: determinant 1, order three, fixing
/// x²y − ε²y³. Throws DomainError when eps = 0.
GroupElement a_eps(const Complex& eps);

/// Point [g, η] of the bundle SL(2,C) ×_{Z/3} C over the orbit of x²y.
struct SliceBundlePoint {
  GroupElement g;
  Complex eta = 0.0;
};

/// φ([g,η]) = act(g, x²y + η·y³). Requires |det g − 1| ≤ 1e−9.
BinaryCubic slice_map(const SliceBundlePoint& p);

struct NonInjectivityReport {
  SliceBundlePoint p1, p2;        // (I, −ε²) and (A_ε, −ε²)
  BinaryCubic image1, image2;     // both equal m_ε = x²y − ε²y³
  double bundle_point_distance = 0.0;  // max-norm over (g, η) data
  double image_distance = 0.0;
  TypeReport center_type;         // of x²y: II
  TypeReport image_type;          // of m_ε: I
  int center_stabilizer_order = 0;
  int image_stabilizer_order = 0;
};

/// The two distinct bundle points that φ sends to the same cubic m_ε —
/// the observation that kills the slice.
NonInjectivityReport non_injectivity_demo(const Complex& eps);

/// Weights k!(3−k)!/3! on the monomial basis: the SU(2)-invariant product.
HermitianSpace binomial_metric();
/// Weights all 1: monomials declared orthonormal (not SU(2)-invariant).
HermitianSpace monomial_metric();

/// The su(2) action on cubics over the given metric: lie_basis = lie_rep of
/// the standard su(2) basis. Anti-self-adjoint for the binomial metric;
/// validate() fails for the monomial one (measured, not adjudicated).
LinearRep su2_cubics_rep(const HermitianSpace& metric);

/// max over sampled k ∈ SU(2) of the non-unitarity ‖RᴴWR − W‖_max of
/// R = rep_matrix(k) in the given metric. Binomial → rounding noise;
/// monomial → order 1.
double metric_unitarity_residual(const HermitianSpace& metric,
                                 int n_samples = 64, unsigned seed = 1);

struct TangentComplement {
  std::vector<Coeffs> basis;     // orthonormal in the given metric
  bool rank_borderline = false;  // a singular value fell near rank_tol
};

/// Orthonormal basis (in the given metric) of the orthogonal complement of
/// the orbit tangent span{lie_rep(ξ)·f : ξ ∈ sl(2,C)} at f.
TangentComplement tangent_complement(const BinaryCubic& f,
                                     const HermitianSpace& metric,
                                     double rank_tol = 1e-9);

/// Δ = 18·c₀c₁c₂c₃ − 4·c₁³c₃ + c₁²c₂² − 4·c₀c₂³ − 27·c₀²c₃²; vanishes iff
/// the cubic has a repeated root; invariant under det-1 substitutions.
Complex discriminant(const BinaryCubic& f);

}  // namespace kflow::cubics
