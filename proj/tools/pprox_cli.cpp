// pprox: prox of perspective functions from the command line.
//
//   pprox prox   < queries.jsonl > results.jsonl
//   pprox verify --samples 200 --seed 7 --functions quadratic,exp_sum
//   pprox bench  --samples 1000

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pprox/catalog.hpp"
#include "pprox/engine.hpp"
#include "pprox/errors.hpp"
#include "pprox/query_io.hpp"
#include "pprox/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitPartialBatch = 2;
constexpr int kExitUsage = 64;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    out.push_back(s.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(idx, v.size() - 1)];
}

struct BenchEntry {
  std::string name;
  std::size_t n;  // inner dimension
};

int run_bench(int samples, std::uint64_t seed, const pprox::SolverConfig& cfg) {
  const std::vector<BenchEntry> entries{
      {"quadratic", 3}, {"capped_burg", 1}, {"exp_sum", 3}, {"log_sum_exp", 3}, {"nested_quadratic", 2}};
  std::printf("%-18s %4s %8s %12s %12s %10s %12s\n", "function", "dim", "samples", "median_us", "p99_us",
              "mu_iters", "inner_iters");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const BenchEntry& entry = entries[e];
    std::mt19937_64 rng(seed + e);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    const pprox::FunctionPtr f = pprox::function_by_name(entry.name, entry.n, cfg);

    std::vector<double> micros;
    micros.reserve(static_cast<std::size_t>(samples));
    double mu_iters = 0.0;
    double inner_iters = 0.0;
    int interior = 0;
    for (int s = 0; s < samples; ++s) {
      pprox::ProxQuery q{f, 1.0, pprox::Vector(f->dim()), unit(rng)};
      for (double& xi : q.x) xi = unit(rng);
      const auto start = std::chrono::steady_clock::now();
      const pprox::ProxResult r = pprox::prox_perspective(q, cfg);
      const auto stop = std::chrono::steady_clock::now();
      micros.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
      mu_iters += r.iterations;
      if (entry.name == "log_sum_exp" && r.case_tag == pprox::CaseTag::Interior) {
        pprox::Vector y = q.x;
        for (double& yi : y) yi /= q.gamma;
        inner_iters += pprox::log_sum_exp_prox_conj(r.mu / q.gamma, y, cfg).iterations;
        ++interior;
      }
    }
    std::printf("%-18s %4zu %8d %12.3f %12.3f %10.2f ", entry.name.c_str(), f->dim(), samples,
                percentile(micros, 0.5), percentile(micros, 0.99), mu_iters / samples);
    if (interior > 0) {
      std::printf("%12.2f\n", inner_iters / interior);
    } else {
      std::printf("%12s\n", "-");
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximity operator of perspective functions"};
  app.require_subcommand(1);

  pprox::SolverConfig solver;
  app.add_option("--tol", solver.abs_tol, "Absolute residual tolerance of the scalar solvers")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", solver.max_iter, "Iteration cap of the scalar solvers")->check(CLI::PositiveNumber);

  auto* prox = app.add_subcommand("prox", "Read JSON Lines queries on stdin, write results on stdout");
  bool no_timing = false;
  prox->add_flag("--no-timing", no_timing, "Omit elapsed_us from the output");

  auto* verify = app.add_subcommand("verify", "Run the verification suites against the brute-force oracle");
  int samples = 200;
  std::uint64_t seed = 7;
  std::string functions;
  double grid_step = 1e-4;
  bool exhaustive = false;
  verify->add_option("--samples", samples, "Random queries per function")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--functions", functions, "Comma-separated subset of the catalog");
  verify->add_option("--grid-step", grid_step, "Oracle grid step over the scale variable")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--exhaustive", exhaustive, "Evaluate every oracle grid point");

  auto* bench = app.add_subcommand("bench", "Latency of prox_perspective per catalog entry");
  int bench_samples = 1000;
  std::uint64_t bench_seed = 1;
  bench->add_option("--samples", bench_samples, "Queries per catalog entry")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    solver.validate();
    if (*prox) {
      const pprox::BatchSummary summary = pprox::process_stream(std::cin, std::cout, solver, !no_timing);
      return summary.failures == 0 ? kExitOk : kExitPartialBatch;
    }
    if (*verify) {
      pprox::VerifyOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      opts.grid_step = grid_step;
      opts.solver = solver;
      opts.exhaustive_oracle = exhaustive;
      if (!functions.empty()) {
        opts.functions = split_list(functions);
        for (const std::string& name : opts.functions) {
          if (!pprox::is_catalog_name(name)) {
            std::cerr << "pprox verify: unknown function '" << name << "' in --functions\n"
                      << "known functions:";
            for (const auto& known : pprox::catalog_names()) std::cerr << ' ' << known;
            std::cerr << "\n\n" << verify->help();
            return kExitUsage;
          }
        }
      }
      const pprox::VerifyReport report = pprox::run_verification(opts);
      std::cout << pprox::format_report(report);
      return report.ok() ? kExitOk : kExitVerifyFailed;
    }
    if (*bench) return run_bench(bench_samples, bench_seed, solver);
  } catch (const pprox::InvalidArgument& e) {
    std::cerr << "pprox: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pprox::Error& e) {
    std::cerr << "pprox: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
