#include "kflow/binary_cubics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "kflow/errors.hpp"

namespace kflow::cubics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative threshold below which a leading coefficient counts as zero when
// reading off roots at infinity.
constexpr double kLeadingTol = 1e-13;

// Clusters whose merged centroid annihilates the gradient of f to this
// relative accuracy are treated as one multiple root. Multiple roots of a
// numerically factored cubic split like (backward error)^(1/multiplicity),
// so the gradient at the centroid — which cancels the splitting to first
// order — sits around 1e-10 for genuine multiples, while two distinct roots
// a chordal distance d apart leave a gradient of order d²/4.
constexpr double kMergeGradTol = 1e-8;

// Only clusters this close are ever considered for a multiplicity merge.
double refine_guard(double cluster_tol) {
  return std::max(1e-3, 100.0 * cluster_tol);
}

ProjectiveRoot normalized_root(Complex a, Complex b, int multiplicity) {
  double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n == 0.0) throw DomainError("projective root has no representative");
  a /= n;
  b /= n;
  Complex lead = std::abs(a) >= std::abs(b) ? a : b;
  Complex phase = std::abs(lead) > 0 ? Complex(std::conj(lead) / std::abs(lead))
                                     : Complex(1.0);
  return ProjectiveRoot{a * phase, b * phase, multiplicity};
}

// ∂f/∂x and ∂f/∂y at (a, b).
std::pair<Complex, Complex> gradient_at(const Coeffs& c, Complex a, Complex b) {
  Complex gx = 3.0 * c(0) * a * a + 2.0 * c(1) * a * b + c(2) * b * b;
  Complex gy = c(1) * a * a + 2.0 * c(2) * a * b + 3.0 * c(3) * b * b;
  return {gx, gy};
}

struct Cluster {
  std::vector<ProjectiveRoot> members;
  ProjectiveRoot rep;  // phase-aligned mean of the members
  int multiplicity = 0;
  double spread = 0.0;  // max member↔rep chordal distance
};

void recompute_rep(Cluster& cl) {
  Complex a = 0.0, b = 0.0;
  const ProjectiveRoot& anchor = cl.members.front();
  for (const ProjectiveRoot& m : cl.members) {
    // align the phase of m to the anchor before averaging
    Complex ip = std::conj(m.a) * anchor.a + std::conj(m.b) * anchor.b;
    Complex ph = std::abs(ip) > 0 ? Complex(ip / std::abs(ip)) : Complex(1.0);
    double w = static_cast<double>(m.multiplicity);
    a += w * m.a * ph;
    b += w * m.b * ph;
  }
  cl.rep = normalized_root(a, b, cl.multiplicity);
  cl.spread = 0.0;
  for (const ProjectiveRoot& m : cl.members)
    cl.spread = std::max(cl.spread, chordal_distance(m, cl.rep));
}

struct RootAnalysis {
  std::vector<ProjectiveRoot> roots;
  double reconstruction_residual = 0.0;
  double min_separation = kInf;
  double max_spread = 0.0;
  bool merged = false;
};

// Expand κ·Π(bᵢ·x − aᵢ·y)^{mᵢ} back into coefficients; the scale κ is fitted
// by least squares, so phase conventions on the roots drop out.
double reconstruction_residual(const Coeffs& c,
                               const std::vector<ProjectiveRoot>& roots) {
  std::vector<Complex> poly{1.0};
  for (const ProjectiveRoot& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) {
      std::vector<Complex> next(poly.size() + 1, Complex(0.0));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i] * r.b;       // times b·x
        next[i + 1] += poly[i] * -r.a;  // times −a·y
      }
      poly = std::move(next);
    }
  if (poly.size() != 4) return 1.0;  // degree defect: cannot reconstruct
  Coeffs e;
  for (int k = 0; k < 4; ++k) e(k) = poly[k];
  Complex ee = e.squaredNorm();
  Complex kappa = std::abs(ee) > 0 ? Complex(e.dot(c) / ee) : Complex(0.0);
  double denom = c.norm();
  return denom > 0 ? (kappa * e - c).norm() / denom : 0.0;
}

RootAnalysis analyze_roots(const BinaryCubic& f, double cluster_tol) {
  RootAnalysis out;
  if (f.is_zero()) return out;

  const double scale = f.c.cwiseAbs().maxCoeff();

  // Roots at infinity come from vanishing leading coefficients of the
  // dehomogenized polynomial c₀x³ + c₁x² + c₂x + c₃.
  int n_inf = 0;
  while (n_inf < 3 && std::abs(f.c(n_inf)) <= kLeadingTol * scale) ++n_inf;

  std::vector<ProjectiveRoot> raw(n_inf, ProjectiveRoot{1.0, 0.0, 1});
  const int degree = 3 - n_inf;
  if (degree == 1) {
    raw.push_back(normalized_root(-f.c(3) / f.c(2), 1.0, 1));
  } else if (degree >= 2) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i)
      comp(i, degree - 1) = -f.c(3 - i) / f.c(n_inf);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
      throw DecompositionError("companion eigensolve failed", kInf);
    for (int i = 0; i < degree; ++i)
      raw.push_back(normalized_root(es.eigenvalues()(i), 1.0, 1));
  }

  // Greedy chordal clustering at cluster_tol.
  std::vector<Cluster> clusters;
  for (const ProjectiveRoot& r : raw) {
    Cluster* home = nullptr;
    for (Cluster& cl : clusters)
      if (chordal_distance(cl.members.front(), r) <= cluster_tol) {
        home = &cl;
        break;
      }
    if (!home) {
      clusters.push_back({});
      home = &clusters.back();
    }
    home->members.push_back(r);
    home->multiplicity += 1;
  }
  for (Cluster& cl : clusters) recompute_rep(cl);

  // Multiplicity refinement: repeatedly merge the closest pair of clusters
  // whose joint centroid annihilates the gradient. Cascading pair merges
  // also capture a numerically split triple root.
  const double guard = refine_guard(cluster_tol);
  while (clusters.size() >= 2) {
    size_t bi = 0, bj = 1;
    double best = kInf;
    for (size_t i = 0; i < clusters.size(); ++i)
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double d = chordal_distance(clusters[i].rep, clusters[j].rep);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (best > guard) break;
    Cluster trial = clusters[bi];
    trial.members.insert(trial.members.end(), clusters[bj].members.begin(),
                         clusters[bj].members.end());
    trial.multiplicity += clusters[bj].multiplicity;
    recompute_rep(trial);
    auto [gx, gy] = gradient_at(f.c, trial.rep.a, trial.rep.b);
    if (std::max(std::abs(gx), std::abs(gy)) > kMergeGradTol * scale) break;
    clusters[bi] = trial;
    clusters.erase(clusters.begin() + static_cast<long>(bj));
    out.merged = true;
  }

  for (const Cluster& cl : clusters) {
    ProjectiveRoot r = cl.rep;
    r.multiplicity = cl.multiplicity;
    out.roots.push_back(r);
    out.max_spread = std::max(out.max_spread, cl.spread);
  }
  for (size_t i = 0; i < out.roots.size(); ++i)
    for (size_t j = i + 1; j < out.roots.size(); ++j)
      out.min_separation = std::min(
          out.min_separation, chordal_distance(out.roots[i], out.roots[j]));
  out.reconstruction_residual = reconstruction_residual(f.c, out.roots);
  return out;
}

bool analysis_borderline(const RootAnalysis& an, double cluster_tol) {
  return an.merged || an.max_spread > 0.01 * cluster_tol ||
         an.min_separation < 100.0 * cluster_tol;
}

// Maps (e₁, e₂, e₁+e₂) to the three projective points: columns α·v₁, β·v₂
// with (α, β) the coordinates of v₃ in the (v₁, v₂) frame.
GroupElement three_point_frame(const ProjectiveRoot& v1,
                               const ProjectiveRoot& v2,
                               const ProjectiveRoot& v3) {
  GroupElement p;
  p << v1.a, v2.a, v1.b, v2.b;
  Eigen::Vector2cd ab = p.inverse() * Eigen::Vector2cd(v3.a, v3.b);
  GroupElement n;
  n << ab(0) * v1.a, ab(1) * v2.a, ab(0) * v1.b, ab(1) * v2.b;
  return n;
}

double fixing_residual(const GroupElement& g, const BinaryCubic& f) {
  return (act(g, f).c - f.c).cwiseAbs().maxCoeff() / std::max(1.0, f.norm());
}

GroupElement random_su2_element(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = n01(rng);
  q.normalize();
  GroupElement k;
  k << Complex(q(0), q(1)), Complex(q(2), q(3)), Complex(-q(2), q(3)),
      Complex(q(0), -q(1));
  return k;
}

std::vector<GroupElement> su2_defining_basis() {
  const Complex I(0, 1);
  GroupElement u1, u2, u3;
  u1 << I, 0, 0, -I;
  u2 << 0, 1, -1, 0;
  u3 << 0, I, I, 0;
  return {u1, u2, u3};
}

}  // namespace

BinaryCubic cubic(Complex c0, Complex c1, Complex c2, Complex c3) {
  BinaryCubic f;
  f.c << c0, c1, c2, c3;
  return f;
}

RepMatrix rep_matrix(const GroupElement& g) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (std::abs(g.determinant()) <= 1e-14 * scale * scale)
    throw DomainError("substitution matrix is singular");
  const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  RepMatrix r;
  // column k = expansion of (a·x + b·y)^{3−k} (c·x + d·y)^k
  r.col(0) << a * a * a, 3.0 * a * a * b, 3.0 * a * b * b, b * b * b;
  r.col(1) << a * a * c, a * a * d + 2.0 * a * b * c, 2.0 * a * b * d + b * b * c,
      b * b * d;
  r.col(2) << a * c * c, 2.0 * a * c * d + b * c * c, a * d * d + 2.0 * b * c * d,
      b * d * d;
  r.col(3) << c * c * c, 3.0 * c * c * d, 3.0 * c * d * d, d * d * d;
  return r;
}

RepMatrix rep_matrix_left(const GroupElement& g) {
  return rep_matrix(GroupElement(g.inverse()));
}

BinaryCubic act(const GroupElement& g, const BinaryCubic& f) {
  return BinaryCubic{rep_matrix(g) * f.c};
}

BinaryCubic act_left(const GroupElement& g, const BinaryCubic& f) {
  return BinaryCubic{rep_matrix_left(g) * f.c};
}

RepMatrix lie_rep(const GroupElement& xi) {
  const double scale = std::max(1.0, xi.cwiseAbs().maxCoeff());
  if (std::abs(xi(0, 0) + xi(1, 1)) > 1e-9 * scale)
    throw DomainError("tangent substitution must be traceless");
  RepMatrix r = RepMatrix::Zero();
  for (int k = 0; k < 4; ++k) {
    r(k, k) = static_cast<double>(3 - k) * xi(0, 0) +
              static_cast<double>(k) * xi(1, 1);
    if (k + 1 <= 3) r(k + 1, k) = static_cast<double>(3 - k) * xi(0, 1);
    if (k - 1 >= 0) r(k - 1, k) = static_cast<double>(k) * xi(1, 0);
  }
  return r;
}

double chordal_distance(const ProjectiveRoot& p, const ProjectiveRoot& q) {
  return std::abs(p.a * q.b - q.a * p.b);
}

ProjectiveRootSet factorize(const BinaryCubic& f, double cluster_tol) {
  RootAnalysis an = analyze_roots(f, cluster_tol);
  return ProjectiveRootSet{an.roots, an.reconstruction_residual};
}

TypeReport classify_type(const BinaryCubic& f, double cluster_tol) {
  RootAnalysis an = analyze_roots(f, cluster_tol);
  TypeReport tr;
  tr.min_root_separation = an.min_separation;
  tr.borderline = analysis_borderline(an, cluster_tol);
  int max_mult = 0;
  for (const ProjectiveRoot& r : an.roots)
    max_mult = std::max(max_mult, r.multiplicity);
  if (an.roots.empty())
    tr.type = FactorType::IV;
  else if (max_mult == 3)
    tr.type = FactorType::III;
  else if (max_mult == 2)
    tr.type = FactorType::II;
  else
    tr.type = FactorType::I;
  return tr;
}

StabilizerDescription compute_stabilizer(const BinaryCubic& f, double tol) {
  TypeReport tr = classify_type(f);
  StabilizerDescription st;
  st.borderline = tr.borderline;

  if (tr.type == FactorType::IV) {
    st.kind = StabilizerKind::full_group;
    st.dimension = 3;
    st.order = 1;
    st.generators = {GroupElement::Identity()};
    return st;
  }

  if (tr.type == FactorType::III) {
    // Rotate the triple root to [1:0]; there the stabilizer is the
    // lower-left-zero family {[[1/w, q], [0, w]] : w³ = 1}.
    ProjectiveRoot r = factorize(f).roots.front();
    GroupElement u;
    u << r.a, -std::conj(r.b), r.b, std::conj(r.a);
    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    GroupElement shear, comp1, comp2;
    shear << 1, 1, 0, 1;
    comp1 << 1.0 / omega, 0, 0, omega;
    comp2 << omega, 0, 0, 1.0 / omega;
    st.kind = StabilizerKind::positive_dimensional;
    st.dimension = 1;
    st.order = 3;  // component count
    for (const GroupElement& g : {shear, comp1, comp2}) {
      GroupElement moved = u * g * u.adjoint();
      st.generators.push_back(moved);
      st.max_fixing_residual =
          std::max(st.max_fixing_residual, fixing_residual(moved, f));
    }
    return st;
  }

  if (tr.type == FactorType::II) {
    // Any stabilizing substitution must fix the double and the simple root
    // separately, hence is diagonal in that frame; the diagonal family
    // rescales the cubic by μ, so only the identity fixes it exactly.
    st.kind = StabilizerKind::finite;
    st.dimension = 0;
    st.order = 1;
    st.generators = {GroupElement::Identity()};
    return st;
  }

  // Three distinct roots: a stabilizing substitution permutes them, each
  // permutation is realized by exactly one Möbius map, and each map has two
  // unimodular lifts; keep the lifts that fix the cubic on the nose.
  std::vector<ProjectiveRoot> roots = factorize(f).roots;
  GroupElement base = three_point_frame(roots[0], roots[1], roots[2]);
  GroupElement base_inv = base.inverse();
  int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  st.kind = StabilizerKind::finite;
  st.dimension = 0;
  for (const auto& p : perm) {
    GroupElement target = three_point_frame(roots[p[0]], roots[p[1]], roots[p[2]]);
    GroupElement m = target * base_inv;
    m /= std::sqrt(m.determinant());
    for (double sign : {1.0, -1.0}) {
      GroupElement cand = sign * m;
      double res = fixing_residual(cand, f);
      if (res <= tol) {
        st.generators.push_back(cand);
        st.max_fixing_residual = std::max(st.max_fixing_residual, res);
        st.order += 1;
      } else if (res <= 100.0 * tol) {
        st.borderline = true;  // barely rejected: ambiguous membership
      }
    }
  }
  return st;
}

GroupElement a_eps(const Complex& eps) {
  if (std::abs(eps) == 0.0)
    throw DomainError("order-three matrix requires eps != 0");
  GroupElement a;
  a << -0.5, 1.5 * eps, -0.5 / eps, -0.5;
  return a;
}

BinaryCubic slice_map(const SliceBundlePoint& p) {
  if (std::abs(p.g.determinant() - 1.0) > 1e-9)
    throw DomainError("slice frame must be unimodular");
  return act(p.g, cubic(0.0, 1.0, 0.0, p.eta));
}

NonInjectivityReport non_injectivity_demo(const Complex& eps) {
  NonInjectivityReport rep;
  const Complex eta = -eps * eps;
  rep.p1 = {GroupElement::Identity(), eta};
  rep.p2 = {a_eps(eps), eta};
  rep.image1 = slice_map(rep.p1);
  rep.image2 = slice_map(rep.p2);
  rep.bundle_point_distance =
      std::max((rep.p1.g - rep.p2.g).cwiseAbs().maxCoeff(),
               std::abs(rep.p1.eta - rep.p2.eta));
  rep.image_distance = (rep.image1.c - rep.image2.c).cwiseAbs().maxCoeff();
  rep.center_type = classify_type(cubic(0.0, 1.0, 0.0, 0.0));
  rep.image_type = classify_type(rep.image1);
  rep.center_stabilizer_order =
      compute_stabilizer(cubic(0.0, 1.0, 0.0, 0.0)).order;
  rep.image_stabilizer_order = compute_stabilizer(rep.image1).order;
  return rep;
}

HermitianSpace binomial_metric() {
  HermitianSpace s;
  s.weights.resize(4);
  s.weights << 1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0;  // k!(3−k)!/3!
  return s;
}

HermitianSpace monomial_metric() {
  HermitianSpace s;
  s.weights = RVector::Ones(4);
  return s;
}

LinearRep su2_cubics_rep(const HermitianSpace& metric) {
  if (metric.dim() != 4)
    throw DimensionError("cubics live in four dimensions");
  LinearRep rep;
  rep.space = metric;
  for (const GroupElement& xi : su2_defining_basis())
    rep.lie_basis.push_back({lie_rep(xi)});
  return rep;
}

double metric_unitarity_residual(const HermitianSpace& metric, int n_samples,
                                 unsigned seed) {
  if (metric.dim() != 4)
    throw DimensionError("cubics live in four dimensions");
  Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) w(i, i) = metric.weights(i);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    RepMatrix r = rep_matrix(random_su2_element(rng));
    worst = std::max(worst,
                     (r.adjoint() * w * r - w).cwiseAbs().maxCoeff());
  }
  return worst;
}

TangentComplement tangent_complement(const BinaryCubic& f,
                                     const HermitianSpace& metric,
                                     double rank_tol) {
  if (metric.dim() != 4)
    throw DimensionError("cubics live in four dimensions");
  metric.validate();
  Eigen::Vector4cd w_sqrt = metric.weights.cwiseSqrt().cast<Complex>();

  // Orbit tangent = span of the complexified algebra acting at f; (h, e, f)
  // already spans it over C. Work in W^{1/2} coordinates so Euclidean
  // orthogonality there is metric orthogonality here.
  GroupElement h, e, lo;
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  lo << 0, 0, 1, 0;
  Eigen::Matrix<Complex, 4, 3> span;
  int col = 0;
  for (const GroupElement& xi : {h, e, lo})
    span.col(col++) = w_sqrt.asDiagonal() * (lie_rep(xi) * f.c);

  Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, 3>> svd(span,
                                                     Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * std::max(1.0, sv(0));
  TangentComplement out;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
    if (sv(i) > 0.01 * cutoff && sv(i) <= 100.0 * cutoff)
      out.rank_borderline = true;
  }
  for (int i = rank; i < 4; ++i)
    out.basis.push_back(Coeffs(w_sqrt.cwiseInverse().asDiagonal() *
                               svd.matrixU().col(i)));
  return out;
}

Complex discriminant(const BinaryCubic& f) {
  const Complex c0 = f.c(0), c1 = f.c(1), c2 = f.c(2), c3 = f.c(3);
  return 18.0 * c0 * c1 * c2 * c3 - 4.0 * c1 * c1 * c1 * c3 +
         c1 * c1 * c2 * c2 - 4.0 * c0 * c2 * c2 * c2 -
         27.0 * c0 * c0 * c3 * c3;
}

}  // namespace kflow::cubics
