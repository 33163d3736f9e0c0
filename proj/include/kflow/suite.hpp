#pragma once

#include <string>
#include <vector>

namespace kflow {

struct SuiteConfig {
  unsigned seed = 42;  // randomized ensembles are deterministic per seed
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double worst = 0.0;      // the measured extremal residual / defect count
  double tolerance = 0.0;  // the bound `worst` is held to
  std::string detail;      // human-readable breakdown
};

/// The full verification battery: twelve independent criteria covering the
/// closed-form cubic computations, the momentum identities, flow convexity,
/// equivariant extension, potential gluing, path-reconstructed momentum and
/// the polar factorization. Runs in about a minute; every tolerance is
/// pinned here rather than configurable, so a pass means the same thing on
/// every machine.
std::vector<CriterionResult> run_acceptance_suite(const SuiteConfig& config = {});

}  // namespace kflow
