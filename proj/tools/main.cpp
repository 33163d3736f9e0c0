#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "kflow/equivariant_extend.hpp"
#include "kflow/errors.hpp"
#include "kflow/serialize.hpp"
#include "kflow/suite.hpp"

using namespace kflow;
using serial::json;

namespace {

struct GlobalOpts {
  double tol = 1e-9;
  double fd_step = 1e-5;
  unsigned seed = 42;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

CMatrix matrix_arg(const std::string& text) {
  return serial::matrix_from_json(json::parse(text));
}

CVector vector_arg(const std::string& text) {
  return serial::vector_from_json(json::parse(text));
}

cubics::BinaryCubic cubic_arg(const std::string& text) {
  return serial::cubic_from_json(json::parse(text));
}

/// Potentials on the command line: the named presets, or a JSON file
/// {dim, terms: [{c, z, zbar}]} describing u(x) = Σ c·Re(Π zᵢ^zᵢ·z̄ᵢ^z̄ᵢ).
KahlerPotential potential_arg(const std::string& name, int dim) {
  if (name == "flat") return flat_potential(dim);
  if (name == "fs") return fubini_study_potential(dim);
  std::ifstream in(name);
  if (!in) throw DomainError("cannot open potential file: " + name);
  json spec = json::parse(in);
  KahlerPotential u;
  u.dim = spec.at("dim").get<int>();
  u.description = "file:" + name;
  struct Term {
    double c;
    std::vector<int> z, zbar;
  };
  std::vector<Term> terms;
  for (const json& t : spec.at("terms")) {
    Term term{t.at("c").get<double>(), t.at("z").get<std::vector<int>>(),
              t.at("zbar").get<std::vector<int>>()};
    if (static_cast<int>(term.z.size()) != u.dim ||
        static_cast<int>(term.zbar.size()) != u.dim)
      throw DomainError("potential term power lists must have length dim");
    terms.push_back(std::move(term));
  }
  u.eval = [terms](const CVector& x) {
    double total = 0.0;
    for (const auto& t : terms) {
      Complex prod = 1.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (int p = 0; p < t.z[i]; ++p) prod *= x(i);
        for (int p = 0; p < t.zbar[i]; ++p) prod *= std::conj(x(i));
      }
      total += t.c * prod.real();
    }
    return total;
  };
  return u;
}

int run_cartan(const std::string& matrix_text) {
  CMatrix g = matrix_arg(matrix_text);
  CartanFactors f = cartan_decompose(g);
  CMatrix back = f.k * mat_exp(Complex(0, 1) * f.xi.matrix);
  json out = serial::cartan_to_json(f);
  out["reconstruction_residual"] = (back - g).norm() / std::max(1.0, g.norm());
  out["unitary_residual"] =
      (f.k.adjoint() * f.k - CMatrix::Identity(g.rows(), g.cols())).norm();
  emit(out);
  return 0;
}

int run_moment(const std::string& xi_text, const std::string& vector_text,
               const std::string& weights_text) {
  CVector v = vector_arg(vector_text);
  LinearRep rep;
  if (weights_text.empty()) {
    rep.space = standard_space(static_cast<int>(v.size()));
  } else {
    auto w = json::parse(weights_text).get<std::vector<double>>();
    rep.space.weights =
        Eigen::Map<const RVector>(w.data(), static_cast<Eigen::Index>(w.size()));
    rep.space.validate();
  }
  LieAlgebraElement xi{matrix_arg(xi_text)};
  json out;
  out["value"] = momentum_component(rep, xi, v);
  out["gradient"] = serial::vector_to_json(momentum_gradient(rep, xi, v));
  emit(out);
  return 0;
}

int run_flow_trace(const std::string& xi_text, const std::string& start_text,
                   double t0, double t1, int samples) {
  CVector v0 = vector_arg(start_text);
  LieAlgebraElement xi{matrix_arg(xi_text)};
  LinearRep rep;
  rep.space = standard_space(static_cast<int>(v0.size()));
  rep.lie_basis = {xi};
  Trajectory traj = sample_trajectory(rep, xi, v0, t0, t1, samples);
  std::cout << serial::trajectory_csv(traj);
  return 0;
}

int run_convexity(const std::string& xi_text, const std::string& start_text,
                  double radius, double t0, double t1, int samples) {
  CVector v0 = vector_arg(start_text);
  LieAlgebraElement xi{matrix_arg(xi_text)};
  LinearRep rep;
  rep.space = standard_space(static_cast<int>(v0.size()));
  rep.lie_basis = {xi};
  ConvexityCertificate cert =
      orbital_convexity_check(rep, xi, v0, BallRegion{radius}, t0, t1, samples);
  emit(serial::certificate_to_json(cert));
  return cert.verdict == ConvexityVerdict::violation ? 1 : 0;
}

EquivariantMapSample extend_sample(const std::string& map_name,
                                   const std::string& poly_text,
                                   Eigen::Index dim, double radius) {
  EquivariantMapSample sample;
  if (map_name == "identity" || map_name == "poly") {
    LinearRep rep;
    rep.space = standard_space(static_cast<int>(dim));
    sample.domain_rep = rep;
    sample.codomain_rep = rep;
    sample.domain_action = defining_realization();
    sample.codomain_action = defining_realization();
    if (map_name == "identity") {
      sample.eval = [](const CVector& v) { return v; };
    } else {
      // components as term lists {c: [re,im], p: [powers]}
      json spec = json::parse(poly_text);
      struct Term {
        Complex c;
        std::vector<int> p;
      };
      std::vector<std::vector<Term>> comps;
      for (const json& comp : spec) {
        std::vector<Term> terms;
        for (const json& t : comp)
          terms.push_back(Term{serial::complex_from_json(t.at("c")),
                               t.at("p").get<std::vector<int>>()});
        comps.push_back(std::move(terms));
      }
      if (static_cast<Eigen::Index>(comps.size()) != dim)
        throw DomainError("polynomial map must have one term list per output "
                          "coordinate");
      sample.eval = [comps](const CVector& x) {
        CVector out(static_cast<Eigen::Index>(comps.size()));
        for (std::size_t i = 0; i < comps.size(); ++i) {
          Complex total = 0.0;
          for (const auto& t : comps[i]) {
            if (static_cast<Eigen::Index>(t.p.size()) != x.size())
              throw DomainError("polynomial term power list has wrong length");
            Complex prod = t.c;
            for (Eigen::Index k = 0; k < x.size(); ++k)
              for (int rep = 0; rep < t.p[k]; ++rep) prod *= x(k);
            total += prod;
          }
          out(static_cast<Eigen::Index>(i)) = total;
        }
        return out;
      };
    }
  } else if (map_name == "discriminant-scale") {
    if (dim != 4)
      throw DomainError("the discriminant-scale map lives on the cubics "
                        "space (4 coefficients)");
    sample.domain_rep = cubics::su2_cubics_rep(cubics::binomial_metric());
    sample.codomain_rep = sample.domain_rep;
    GroupRealization action;
    auto as_2x2 = [](const CMatrix& m) {
      if (m.rows() != 2 || m.cols() != 2)
        throw DimensionError("the cubics action takes 2x2 group elements");
      return cubics::GroupElement(m);
    };
    action.group = [as_2x2](const CMatrix& g) {
      return CMatrix(cubics::rep_matrix_left(as_2x2(g)));
    };
    action.lie = [as_2x2](const CMatrix& m) {
      return CMatrix(-cubics::lie_rep(as_2x2(m)));
    };
    sample.domain_action = action;
    sample.codomain_action = action;
    sample.eval = [](const CVector& v) {
      cubics::BinaryCubic f;
      f.c = v;
      return CVector((1.0 + cubics::discriminant(f)) * v);
    };
  } else {
    throw DomainError("unknown map name: " + map_name);
  }
  sample.ball.radius = radius;
  return sample;
}

int run_extend(const std::string& map_name, const std::string& poly_text,
               const std::string& g_text, const std::string& x_text,
               double radius) {
  CVector x = vector_arg(x_text);
  CMatrix g = matrix_arg(g_text);
  EquivariantMapSample sample =
      extend_sample(map_name, poly_text, x.size(), radius);
  if (radius <= 0.0)
    sample.ball.radius =
        1.25 * std::sqrt(sample.domain_rep.space.norm2(x)) + 1e-9;
  json out;
  out["value"] = serial::vector_to_json(extend_eval(sample, g, x));
  out["ball_radius"] = sample.ball.radius;
  emit(out);
  return 0;
}

int run_glue_verify(const std::string& potential, int dim, double lambda,
                    int grid, double eps, double fd_step,
                    const std::string& cutoff) {
  KahlerPotential u = potential_arg(potential, dim);
  CutoffProfile chi = make_cutoff(cutoff == "bump"
                                      ? CutoffSmoothness::c_infinity_bump
                                      : CutoffSmoothness::c2_polynomial);
  GlueReport report = certify_glue(u, chi, lambda, grid, fd_step);
  json out = serial::glue_report_to_json(report);
  bool pass = report.positive_definite && !report.inconclusive;
  if (eps > 0.0) {
    pass = pass && report.sup_f_ab < eps;
    out["eps"] = eps;
    out["admissible"] = pass;
  }
  emit(out);
  return pass ? 0 : 1;
}

int run_glue_threshold(const std::string& potential, int dim, double eps,
                       double lo, double hi, int grid, int iters,
                       const std::string& cutoff) {
  KahlerPotential u = potential_arg(potential, dim);
  CutoffProfile chi = make_cutoff(cutoff == "bump"
                                      ? CutoffSmoothness::c_infinity_bump
                                      : CutoffSmoothness::c2_polynomial);
  json out;
  try {
    double lambda = find_lambda_threshold(u, chi, eps, lo, hi, grid, iters);
    out["found"] = true;
    out["lambda"] = lambda;
    emit(out);
    return 0;
  } catch (const DomainError&) {
    out["found"] = false;
    emit(out);
    return 1;
  }
}

int run_suite(unsigned seed) {
  SuiteConfig config{seed};
  std::vector<CriterionResult> results = run_acceptance_suite(config);
  bool all = true;
  json rows = json::array();
  for (const CriterionResult& r : results) {
    all = all && r.pass;
    rows.push_back(json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"worst", r.worst},
                        {"tolerance", r.tolerance},
                        {"detail", r.detail}});
  }
  emit(json{{"seed", seed}, {"all_pass", all}, {"criteria", rows}});
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for momentum maps, complexified flows, "
               "potential gluing and the binary-cubics slice obstruction"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--tol", opts.tol, "generic tolerance")->check(CLI::PositiveNumber);
  app.add_option("--fd-step", opts.fd_step, "finite-difference step")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "seed for randomized batteries");

  // cartan
  auto* cartan = app.add_subcommand("cartan", "polar factorization g = k·exp(i·xi)");
  std::string cartan_matrix;
  cartan->add_option("--matrix", cartan_matrix, "matrix as JSON [[..],[..]]")
      ->required();

  // moment
  auto* moment = app.add_subcommand("moment", "momentum value and gradient");
  std::string moment_xi, moment_vector, moment_weights;
  moment->add_option("--xi", moment_xi, "generator matrix as JSON")->required();
  moment->add_option("--vector", moment_vector, "point as JSON vector")->required();
  moment->add_option("--weights", moment_weights, "metric weights as JSON array");

  // flow trace
  auto* flow = app.add_subcommand("flow", "complexified gradient flow");
  flow->require_subcommand(1);
  auto* trace = flow->add_subcommand("trace", "CSV trajectory samples");
  std::string flow_xi, flow_start;
  double flow_from = -1.0, flow_to = 1.0;
  int flow_samples = 201;
  trace->add_option("--xi", flow_xi, "generator matrix as JSON")->required();
  trace->add_option("--start", flow_start, "initial point as JSON vector")->required();
  trace->add_option("--from", flow_from, "window start");
  trace->add_option("--to", flow_to, "window end");
  trace->add_option("--samples", flow_samples, "sample count");

  // convexity
  auto* convexity = app.add_subcommand("convexity", "orbital convexity certificate");
  std::string conv_xi, conv_start;
  double conv_radius = 1.0, conv_from = -10.0, conv_to = 10.0;
  int conv_samples = 2000;
  convexity->add_option("--xi", conv_xi, "generator matrix as JSON")->required();
  convexity->add_option("--start", conv_start, "initial point as JSON vector")
      ->required();
  convexity->add_option("--radius", conv_radius, "ball radius");
  convexity->add_option("--from", conv_from, "window start");
  convexity->add_option("--to", conv_to, "window end");
  convexity->add_option("--samples", conv_samples, "sample count");

  // extend
  auto* extend = app.add_subcommand("extend", "equivariant analytic extension");
  std::string ext_map = "identity", ext_poly, ext_g, ext_x;
  double ext_radius = 0.0;
  extend->add_option("--map", ext_map, "identity | discriminant-scale | poly");
  extend->add_option("--poly", ext_poly, "polynomial map JSON (for --map poly)");
  extend->add_option("--g", ext_g, "group element as JSON matrix")->required();
  extend->add_option("--x", ext_x, "base point as JSON vector")->required();
  extend->add_option("--radius", ext_radius, "domain ball radius (0 = auto)");

  // glue
  auto* glue = app.add_subcommand("glue", "potential gluing certificates");
  glue->require_subcommand(1);
  auto* verify = glue->add_subcommand("verify", "grid certificate for one lambda");
  std::string glue_potential = "fs", glue_cutoff = "quintic";
  int glue_dim = 1, glue_grid = 64;
  double glue_lambda = 0.1, glue_eps = 0.0;
  verify->add_option("--potential", glue_potential, "flat | fs | <file.json>");
  verify->add_option("--dim", glue_dim, "complex dimension for presets");
  verify->add_option("--lambda", glue_lambda, "gluing scale")->required();
  verify->add_option("--grid", glue_grid, "grid points per real axis");
  verify->add_option("--eps", glue_eps, "admissibility bound on sup deviation");
  verify->add_option("--cutoff", glue_cutoff, "quintic | bump");

  auto* threshold = glue->add_subcommand("threshold", "largest admissible lambda");
  std::string thr_potential = "fs", thr_cutoff = "quintic";
  int thr_dim = 1, thr_grid = 32, thr_iters = 12;
  double thr_eps = 0.05, thr_lo = 0.02, thr_hi = 0.5;
  threshold->add_option("--potential", thr_potential, "flat | fs | <file.json>");
  threshold->add_option("--dim", thr_dim, "complex dimension for presets");
  threshold->add_option("--eps", thr_eps, "admissibility bound")->required();
  threshold->add_option("--lo", thr_lo, "range start");
  threshold->add_option("--hi", thr_hi, "range end");
  threshold->add_option("--grid", thr_grid, "grid points per real axis");
  threshold->add_option("--iters", thr_iters, "bisection iterations");
  threshold->add_option("--cutoff", thr_cutoff, "quintic | bump");

  // cubics
  auto* cubics_cmd = app.add_subcommand("cubics", "binary cubic classification");
  cubics_cmd->require_subcommand(1);
  std::string cubic_text, cubics_metric = "binomial";
  double cubics_eps = 1.0;
  auto* classify = cubics_cmd->add_subcommand("classify", "type of a cubic");
  classify->add_option("--cubic", cubic_text, "4 coefficients as JSON")->required();
  auto* stabilizer = cubics_cmd->add_subcommand("stabilizer", "stabilizer in SL(2,C)");
  stabilizer->add_option("--cubic", cubic_text, "4 coefficients as JSON")->required();
  auto* aeps = cubics_cmd->add_subcommand("aeps", "the order-three symmetry");
  aeps->add_option("--eps", cubics_eps, "parameter (nonzero)")->required();
  auto* slice_demo =
      cubics_cmd->add_subcommand("slice-demo", "two bundle points, one image");
  slice_demo->add_option("--eps", cubics_eps, "parameter (nonzero)")->required();
  auto* complement =
      cubics_cmd->add_subcommand("complement", "orbit-tangent orthocomplement");
  complement->add_option("--cubic", cubic_text, "4 coefficients as JSON")->required();
  complement->add_option("--metric", cubics_metric, "binomial | monomial");

  // suite
  auto* suite = app.add_subcommand("suite", "full acceptance battery");

  // Let app-level options (--seed, --tol, --fd-step) be written after the
  // subcommand, the way they read naturally on the command line.
  std::function<void(CLI::App*)> allow_parent_opts = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands(nullptr)) allow_parent_opts(sub);
  };
  allow_parent_opts(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cartan) return run_cartan(cartan_matrix);
    if (*moment) return run_moment(moment_xi, moment_vector, moment_weights);
    if (*flow) return run_flow_trace(flow_xi, flow_start, flow_from, flow_to,
                                     flow_samples);
    if (*convexity)
      return run_convexity(conv_xi, conv_start, conv_radius, conv_from,
                           conv_to, conv_samples);
    if (*extend) return run_extend(ext_map, ext_poly, ext_g, ext_x, ext_radius);
    if (*glue) {
      if (*verify)
        return run_glue_verify(glue_potential, glue_dim, glue_lambda,
                               glue_grid, glue_eps, opts.fd_step, glue_cutoff);
      return run_glue_threshold(thr_potential, thr_dim, thr_eps, thr_lo,
                                thr_hi, thr_grid, thr_iters, thr_cutoff);
    }
    if (*cubics_cmd) {
      if (*classify) {
        emit(serial::type_report_to_json(
            cubics::classify_type(cubic_arg(cubic_text))));
        return 0;
      }
      if (*stabilizer) {
        emit(serial::stabilizer_to_json(
            cubics::compute_stabilizer(cubic_arg(cubic_text))));
        return 0;
      }
      if (*aeps) {
        cubics::GroupElement a = cubics::a_eps(cubics_eps);
        json out;
        out["matrix"] = serial::matrix_to_json(a);
        out["det"] = serial::complex_to_json(a.determinant());
        double cube_residual =
            (a * a * a - cubics::GroupElement::Identity()).cwiseAbs().maxCoeff();
        out["cube_residual"] = cube_residual;
        out["order"] = cube_residual <= opts.tol ? 3 : 0;
        emit(out);
        return 0;
      }
      if (*slice_demo) {
        emit(serial::non_injectivity_to_json(
            cubics::non_injectivity_demo(cubics_eps)));
        return 0;
      }
      HermitianSpace metric = cubics_metric == "monomial"
                                  ? cubics::monomial_metric()
                                  : cubics::binomial_metric();
      emit(serial::tangent_complement_to_json(
          cubics::tangent_complement(cubic_arg(cubic_text), metric)));
      return 0;
    }
    if (*suite) return run_suite(opts.seed);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
