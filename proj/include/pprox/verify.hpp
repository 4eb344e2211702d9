#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pprox/engine.hpp"
#include "pprox/oracle.hpp"

namespace pprox {

/// Catalog entries addressable by name from the CLI and the verification suites.
const std::vector<std::string>& catalog_names();

bool is_catalog_name(const std::string& name);

/// Builds a catalog entry by name; n is the (inner) dimension. For
/// "nested_quadratic" the returned function is the perspective of |.|^2/2 on
/// R^n, so it has dimension n + 1.
FunctionPtr function_by_name(const std::string& name, std::size_t n, const SolverConfig& cfg = {});

/// A random query drawn from n in {1,2,3} (n >= 2 for log_sum_exp, n = 1 for
/// capped_burg), x in [-5,5]^dim, eta in [-5,5], gamma in {0.5, 1, 2}.
struct RandomCase {
  FunctionPtr f;
  ProxQuery query;
};

RandomCase random_case(const std::string& name, std::mt19937_64& rng, const SolverConfig& cfg = {});

/// A random point c with c_s + f*(c_u) <= 0, i.e. a point of dom (f~)*.
/// Returns u followed by s.
Vector sample_conjugate_epigraph(const BaseFunction& f, std::mt19937_64& rng);

struct VerifyOptions {
  int samples = 200;
  std::uint64_t seed = 7;
  std::vector<std::string> functions = catalog_names();
  double grid_step = 1e-4;
  SolverConfig solver;
  bool exhaustive_oracle = false;
  int moreau_queries = 50;  ///< capped at samples
  int moreau_points = 100;
};

/// Outcome of one suite on one catalog entry. max_value is the worst observed
/// metric; a check passes when its metric is <= tolerance.
struct SuiteStats {
  std::string suite;
  int passed = 0;
  int failed = 0;
  double max_value = 0.0;
  double tolerance = 0.0;
  std::string first_failure;

  void record(double metric, const std::string& context = {});
  bool ok() const { return failed == 0 && passed > 0; }
};

struct FunctionReport {
  std::string function;
  std::vector<SuiteStats> suites;
  bool ok() const;
};

struct VerifyReport {
  std::vector<FunctionReport> functions;
  bool ok() const;
  const SuiteStats* find(const std::string& function, const std::string& suite) const;
};

// Tolerances of the verification suites.
inline constexpr double kOracleGapTol = 1e-3;
inline constexpr double kObjectiveDominanceTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr double kEqualityTol = 1e-8;
inline constexpr double kMuEquationTol = 1e-8;  // relative to max(1, |mu|)
inline constexpr double kFirmNonexpansiveTol = 1e-9;
inline constexpr double kHomogeneityTol = 1e-9;
inline constexpr double kMoreauTol = 1e-8;

/// Runs oracle agreement, objective dominance, residual, firm
/// nonexpansiveness, homogeneity and Moreau-consistency suites.
VerifyReport run_verification(const VerifyOptions& opts);

std::string format_report(const VerifyReport& report);

}  // namespace pprox
