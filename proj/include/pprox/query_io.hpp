#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "pprox/engine.hpp"

namespace pprox {

/// One line of the prox batch input.
///
///   {"function": "quadratic", "n": 2, "gamma": 1, "x": [1, 2], "eta": 0.5}
///
/// "n" is optional and defaults to the length of "x"; "delta" is required for
/// "nested_quadratic" (where "x" is the inner vector and "eta" its scale).
/// "abs_tol", "rel_tol" and "max_iter" override the solver defaults per line.
struct QueryRecord {
  std::string function;
  std::optional<std::size_t> n;
  double gamma = 1.0;
  Vector x;
  double eta = 0.0;
  std::optional<double> delta;
  SolverConfig solver;
};

/// Parses and validates one record. Throws InvalidArgument with a readable
/// message on a missing or ill-typed field.
QueryRecord parse_query(const nlohmann::json& j, const SolverConfig& defaults);

/// Computes the prox for a record.
ProxResult run_query(const QueryRecord& rec);

/// ResultRecord encoding; non-finite numbers are written as the string "inf".
nlohmann::json result_to_json(const ProxResult& r, std::optional<long long> elapsed_us);

struct BatchSummary {
  std::size_t lines = 0;
  std::size_t failures = 0;
};

/// Reads JSON Lines queries from in and writes one result (or error object)
/// per non-blank line to out, in order. Lines are handled one at a time.
BatchSummary process_stream(std::istream& in, std::ostream& out, const SolverConfig& defaults,
                            bool with_timing = true);

}  // namespace pprox
