#include "pprox/query_io.hpp"

#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "pprox/catalog.hpp"
#include "pprox/errors.hpp"
#include "pprox/verify.hpp"

namespace pprox {

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InvalidArgument(std::string("field '") + key + "' must be finite");
  return d;
}

json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return "inf";
}

}  // namespace

QueryRecord parse_query(const json& j, const SolverConfig& defaults) {
  if (!j.is_object()) throw InvalidArgument("query must be a JSON object");
  QueryRecord rec;
  rec.solver = defaults;

  if (!j.contains("function") || !j.at("function").is_string())
    throw InvalidArgument("missing string field 'function'");
  rec.function = j.at("function").get<std::string>();
  if (!is_catalog_name(rec.function)) throw InvalidArgument("unknown function '" + rec.function + "'");

  if (j.contains("n")) {
    const json& n = j.at("n");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw InvalidArgument("field 'n' must be an integer >= 1");
    rec.n = n.get<std::size_t>();
  }
  rec.gamma = number_field(j, "gamma");
  if (!(rec.gamma > 0.0)) throw InvalidArgument("field 'gamma' must be > 0");
  rec.eta = number_field(j, "eta");

  if (!j.contains("x") || !j.at("x").is_array()) throw InvalidArgument("missing array field 'x'");
  for (const json& xi : j.at("x")) {
    if (!xi.is_number()) throw InvalidArgument("field 'x' must contain only numbers");
    rec.x.push_back(xi.get<double>());
  }
  if (rec.x.empty()) throw InvalidArgument("field 'x' must not be empty");
  if (rec.n && *rec.n != rec.x.size())
    throw InvalidArgument("field 'x' has " + std::to_string(rec.x.size()) + " entries but n = " +
                          std::to_string(*rec.n));

  if (rec.function == "capped_burg" && rec.x.size() != 1) throw InvalidArgument("capped_burg takes a scalar x");
  if (rec.function == "log_sum_exp" && rec.x.size() < 2) throw InvalidArgument("log_sum_exp needs n >= 2");
  if (j.contains("delta")) rec.delta = number_field(j, "delta");
  if (rec.function == "nested_quadratic" && !rec.delta) throw InvalidArgument("nested_quadratic needs 'delta'");

  if (j.contains("abs_tol")) rec.solver.abs_tol = number_field(j, "abs_tol");
  if (j.contains("rel_tol")) rec.solver.rel_tol = number_field(j, "rel_tol");
  if (j.contains("max_iter")) {
    if (!j.at("max_iter").is_number_integer()) throw InvalidArgument("field 'max_iter' must be an integer");
    rec.solver.max_iter = j.at("max_iter").get<int>();
  }
  rec.solver.validate();
  return rec;
}

ProxResult run_query(const QueryRecord& rec) {
  const std::size_t n = rec.x.size();
  if (rec.function == "nested_quadratic")
    return nested_perspective_prox(rec.gamma, rec.x, rec.eta, *rec.delta, quadratic_ops(n), rec.solver);
  const ProxQuery q{function_by_name(rec.function, n, rec.solver), rec.gamma, rec.x, rec.eta};
  return prox_perspective(q, rec.solver);
}

json result_to_json(const ProxResult& r, std::optional<long long> elapsed_us) {
  json out;
  out["p"] = r.p;
  out["mu"] = r.mu;
  out["case"] = std::string(to_string(r.case_tag));
  out["threshold"] = number_or_inf(r.threshold.to_double());
  out["iterations"] = r.iterations;
  out["feasibility_residual"] = number_or_inf(r.feasibility_residual);
  out["equality_residual"] = number_or_inf(r.equality_residual);
  if (elapsed_us) out["elapsed_us"] = *elapsed_us;
  return out;
}

BatchSummary process_stream(std::istream& in, std::ostream& out, const SolverConfig& defaults, bool with_timing) {
  BatchSummary summary;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++summary.lines;
    json result;
    try {
      const QueryRecord rec = parse_query(json::parse(line), defaults);
      const auto start = std::chrono::steady_clock::now();
      const ProxResult r = run_query(rec);
      const auto stop = std::chrono::steady_clock::now();
      std::optional<long long> elapsed;
      if (with_timing) elapsed = std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
      result = result_to_json(r, elapsed);
    } catch (const json::exception& e) {
      ++summary.failures;
      result = {{"error", "parse_error"}, {"message", e.what()}, {"line", line_no}};
    } catch (const InvalidArgument& e) {
      ++summary.failures;
      result = {{"error", "invalid_query"}, {"message", e.what()}, {"line", line_no}};
    } catch (const Error& e) {
      ++summary.failures;
      result = {{"error", "solver_error"}, {"message", e.what()}, {"line", line_no}};
    }
    out << result.dump() << '\n';
    out.flush();
  }
  return summary;
}

}  // namespace pprox
