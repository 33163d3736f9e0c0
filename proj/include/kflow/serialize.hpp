#pragma once

#include <json.hpp>
#include <string>

#include "kflow/binary_cubics.hpp"
#include "kflow/flow_convexity.hpp"
#include "kflow/kahler_glue.hpp"
#include "kflow/lie_core.hpp"
#include "kflow/moment_map.hpp"

namespace kflow::serial {

using json = nlohmann::json;

// Wire conventions: a complex scalar is a [re, im] pair; a matrix is a
// row-major nested array of such pairs; +inf fields are emitted as null.
// Parsers throw DomainError on structural problems (nlohmann type errors
// pass through for the caller to map to a usage failure).

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// {dim, weights, lie_basis}
json rep_to_json(const LinearRep& rep);
LinearRep rep_from_json(const json& j);

json cartan_to_json(const CartanFactors& f);

json momentum_to_json(const MomentumValue& mu);

json cubic_to_json(const cubics::BinaryCubic& f);
cubics::BinaryCubic cubic_from_json(const json& j);

std::string factor_type_name(cubics::FactorType t);
json type_report_to_json(const cubics::TypeReport& r);
json root_set_to_json(const cubics::ProjectiveRootSet& s);
json stabilizer_to_json(const cubics::StabilizerDescription& s);
json non_injectivity_to_json(const cubics::NonInjectivityReport& r);
json tangent_complement_to_json(const cubics::TangentComplement& t);

json monotonicity_to_json(const MonotonicityReport& r);
json certificate_to_json(const ConvexityCertificate& c);

json glue_report_to_json(const GlueReport& r);

/// Header "t,re0,im0,...,phi,radius2"; one row per sample; full double
/// round-trip precision so identical trajectories serialize identically.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace kflow::serial
