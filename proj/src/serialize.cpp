#include "kflow/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kflow/errors.hpp"

namespace kflow::serial {

namespace {

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("complex scalar must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("vector must be an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw DomainError("matrix must be a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty())
    throw DomainError("matrix rows must be non-empty arrays");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw DomainError("matrix rows have mixed lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json rep_to_json(const LinearRep& rep) {
  json basis = json::array();
  for (const LieAlgebraElement& xi : rep.lie_basis)
    basis.push_back(matrix_to_json(xi.matrix));
  std::vector<double> weights(rep.space.weights.data(),
                              rep.space.weights.data() + rep.space.dim());
  return json{{"dim", rep.space.dim()}, {"weights", weights},
              {"lie_basis", basis}};
}

LinearRep rep_from_json(const json& j) {
  LinearRep rep;
  auto weights = j.at("weights").get<std::vector<double>>();
  rep.space.weights = Eigen::Map<const RVector>(weights.data(),
                                                static_cast<Eigen::Index>(weights.size()));
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != rep.space.dim())
    throw DomainError("representation dim does not match its weight count");
  for (const json& b : j.at("lie_basis"))
    rep.lie_basis.push_back(LieAlgebraElement{matrix_from_json(b)});
  return rep;
}

json cartan_to_json(const CartanFactors& f) {
  return json{{"k", matrix_to_json(f.k)}, {"xi", matrix_to_json(f.xi.matrix)}};
}

json momentum_to_json(const MomentumValue& mu) {
  return json{{"components", std::vector<double>(
                                 mu.components.data(),
                                 mu.components.data() + mu.components.size())}};
}

json cubic_to_json(const cubics::BinaryCubic& f) {
  return vector_to_json(CVector(f.c));
}

cubics::BinaryCubic cubic_from_json(const json& j) {
  CVector v = vector_from_json(j);
  if (v.size() != 4)
    throw DomainError("a binary cubic needs exactly 4 coefficients");
  cubics::BinaryCubic f;
  f.c = v;
  return f;
}

std::string factor_type_name(cubics::FactorType t) {
  switch (t) {
    case cubics::FactorType::I: return "I";
    case cubics::FactorType::II: return "II";
    case cubics::FactorType::III: return "III";
    case cubics::FactorType::IV: return "IV";
  }
  return "IV";
}

json type_report_to_json(const cubics::TypeReport& r) {
  return json{{"type", factor_type_name(r.type)},
              {"borderline", r.borderline},
              {"min_root_separation", finite_or_null(r.min_root_separation)}};
}

json root_set_to_json(const cubics::ProjectiveRootSet& s) {
  json roots = json::array();
  for (const cubics::ProjectiveRoot& r : s.roots)
    roots.push_back(json{{"a", complex_to_json(r.a)},
                         {"b", complex_to_json(r.b)},
                         {"multiplicity", r.multiplicity}});
  return json{{"roots", roots},
              {"reconstruction_residual", s.reconstruction_residual}};
}

json stabilizer_to_json(const cubics::StabilizerDescription& s) {
  std::string kind = "finite";
  if (s.kind == cubics::StabilizerKind::positive_dimensional)
    kind = "positive-dimensional";
  else if (s.kind == cubics::StabilizerKind::full_group)
    kind = "full-group";
  json gens = json::array();
  for (const cubics::GroupElement& g : s.generators)
    gens.push_back(matrix_to_json(g));
  return json{{"kind", kind},
              {"order", s.order},
              {"dimension", s.dimension},
              {"generators", gens},
              {"max_fixing_residual", s.max_fixing_residual},
              {"borderline", s.borderline}};
}

json non_injectivity_to_json(const cubics::NonInjectivityReport& r) {
  auto point = [](const cubics::SliceBundlePoint& p) {
    return json{{"g", matrix_to_json(p.g)}, {"eta", complex_to_json(p.eta)}};
  };
  return json{{"point1", point(r.p1)},
              {"point2", point(r.p2)},
              {"image1", cubic_to_json(r.image1)},
              {"image2", cubic_to_json(r.image2)},
              {"bundle_point_distance", r.bundle_point_distance},
              {"image_distance", r.image_distance},
              {"center_type", type_report_to_json(r.center_type)},
              {"image_type", type_report_to_json(r.image_type)},
              {"center_stabilizer_order", r.center_stabilizer_order},
              {"image_stabilizer_order", r.image_stabilizer_order}};
}

json tangent_complement_to_json(const cubics::TangentComplement& t) {
  json basis = json::array();
  for (const cubics::Coeffs& b : t.basis) basis.push_back(vector_to_json(CVector(b)));
  return json{{"basis", basis}, {"rank_borderline", t.rank_borderline}};
}

json monotonicity_to_json(const MonotonicityReport& r) {
  return json{{"conclusive", r.conclusive},
              {"max_monotonicity_violation", r.max_monotonicity_violation},
              {"max_derivative_mismatch", r.max_derivative_mismatch}};
}

json certificate_to_json(const ConvexityCertificate& c) {
  std::string verdict = "inconclusive";
  if (c.verdict == ConvexityVerdict::convex) verdict = "convex";
  else if (c.verdict == ConvexityVerdict::violation) verdict = "violation";
  json crossings = json::array();
  for (const CrossingEvent& e : c.crossings)
    crossings.push_back(json{{"t", e.t}, {"entering", e.entering}, {"phi", e.phi}});
  return json{{"verdict", verdict},
              {"crossings", crossings},
              {"visit_intervals", c.visit_intervals},
              {"sample_step", c.sample_step},
              {"note", c.note}};
}

json glue_report_to_json(const GlueReport& r) {
  return json{{"lambda", r.lambda},
              {"grid_per_axis", r.grid_per_axis},
              {"dim", r.dim},
              {"half_width", r.half_width},
              {"min_eigenvalue", finite_or_null(r.min_eigenvalue)},
              {"sup_f_ab", r.sup_f_ab},
              {"flat_region_residual", r.flat_region_residual},
              {"outer_region_residual", r.outer_region_residual},
              {"positive_definite", r.positive_definite},
              {"inconclusive", r.inconclusive}};
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);
  const Eigen::Index dim = traj.samples.empty() ? 0 : traj.samples.front().point.size();
  out << "t";
  for (Eigen::Index i = 0; i < dim; ++i) out << ",re" << i << ",im" << i;
  out << ",phi,radius2\n";
  for (const TrajectorySample& s : traj.samples) {
    out << s.t;
    for (Eigen::Index i = 0; i < dim; ++i)
      out << "," << s.point(i).real() << "," << s.point(i).imag();
    out << "," << s.phi << "," << s.radius2 << "\n";
  }
  return out.str();
}

}  // namespace kflow::serial
