#include <sstream>

#include "doctest.h"
#include "pprox/errors.hpp"
#include "pprox/query_io.hpp"

using namespace pprox;
using nlohmann::json;

namespace {

std::vector<json> run_lines(const std::string& input, BatchSummary* summary = nullptr) {
  std::istringstream in(input);
  std::ostringstream out;
  const BatchSummary s = process_stream(in, out, {}, false);
  if (summary) *summary = s;
  std::vector<json> lines;
  std::istringstream back(out.str());
  std::string line;
  while (std::getline(back, line)) lines.push_back(json::parse(line));
  return lines;
}

}  // namespace

TEST_CASE("prox command examples") {
  const auto out = run_lines(
      "{\"function\":\"quadratic\",\"n\":1,\"gamma\":1,\"x\":[0],\"eta\":-1}\n"
      "{\"function\":\"capped_burg\",\"gamma\":1,\"x\":[3],\"eta\":1}\n"
      "{\"function\":\"quadratic\",\"n\":1,\"gamma\":1,\"x\":[2],\"eta\":0}\n");
  REQUIRE(out.size() == 3);
  CHECK(out[0]["p"] == json::array({0.0}));
  CHECK(out[0]["mu"] == 0.0);
  CHECK(out[0]["case"] == "boundary");
  CHECK(out[1]["p"] == json::array({2.0}));
  CHECK(out[1]["mu"] == 1.0);
  CHECK(out[1]["case"] == "interior");
  CHECK(std::abs(out[2]["mu"].get<double>() - 0.69562076955986206) <= 1e-12);
  CHECK_FALSE(out[2].contains("elapsed_us"));
}

TEST_CASE("infinite threshold is written as a string") {
  const auto out = run_lines("{\"function\":\"capped_burg\",\"gamma\":1,\"x\":[-1],\"eta\":1}\n");
  CHECK(out[0]["threshold"] == "inf");
}

TEST_CASE("nested query") {
  const auto out = run_lines("{\"function\":\"nested_quadratic\",\"gamma\":1,\"x\":[0],\"eta\":-1,\"delta\":7}\n");
  CHECK(out[0]["p"] == json::array({0.0, 0.0}));
  CHECK(out[0]["mu"] == 7.0);
}

TEST_CASE("bad lines produce error objects and processing continues") {
  BatchSummary s;
  const auto out = run_lines(
      "not json\n"
      "\n"
      "{\"function\":\"nope\",\"gamma\":1,\"x\":[0],\"eta\":0}\n"
      "{\"function\":\"quadratic\",\"n\":2,\"gamma\":1,\"x\":[0],\"eta\":0}\n"
      "{\"function\":\"quadratic\",\"gamma\":-1,\"x\":[0],\"eta\":0}\n"
      "{\"function\":\"log_sum_exp\",\"gamma\":1,\"x\":[0],\"eta\":0}\n"
      "{\"function\":\"nested_quadratic\",\"gamma\":1,\"x\":[0],\"eta\":0}\n"
      "{\"function\":\"quadratic\",\"gamma\":1,\"x\":[1],\"eta\":0}\n",
      &s);
  REQUIRE(out.size() == 7);
  CHECK(s.lines == 7);
  CHECK(s.failures == 6);
  CHECK(out[0]["error"] == "parse_error");
  CHECK(out[0]["line"] == 1);
  for (int i = 1; i < 6; ++i) CHECK(out[i]["error"] == "invalid_query");
  CHECK(out[1]["line"] == 3);
  CHECK_FALSE(out[6].contains("error"));
}

TEST_CASE("per-line solver overrides") {
  const QueryRecord rec = parse_query(
      json::parse("{\"function\":\"quadratic\",\"gamma\":1,\"x\":[1],\"eta\":0,\"abs_tol\":1e-6,\"max_iter\":7}"), {});
  CHECK(rec.solver.abs_tol == 1e-6);
  CHECK(rec.solver.max_iter == 7);
  CHECK_THROWS_AS(parse_query(json::parse("{\"function\":\"quadratic\",\"gamma\":1,\"x\":[1],\"eta\":0,\"max_iter\":0}"), {}),
                  InvalidArgument);
}

TEST_CASE("round trip at 17 digits and determinism") {
  const std::string input =
      "{\"function\":\"exp_sum\",\"gamma\":0.5,\"x\":[1.25,-3.5],\"eta\":2}\n"
      "{\"function\":\"log_sum_exp\",\"gamma\":2,\"x\":[0.1,4.0,-1.0],\"eta\":-0.3}\n";
  std::istringstream in1(input), in2(input);
  std::ostringstream out1, out2;
  process_stream(in1, out1, {}, false);
  process_stream(in2, out2, {}, false);
  CHECK(out1.str() == out2.str());

  const QueryRecord rec = parse_query(json::parse(input.substr(0, input.find('\n'))), {});
  const ProxResult r = run_query(rec);
  const json j = json::parse(result_to_json(r, std::nullopt).dump());
  CHECK(j["mu"].get<double>() == r.mu);
  for (std::size_t i = 0; i < r.p.size(); ++i) CHECK(j["p"][i].get<double>() == r.p[i]);
}
