#include "pprox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pprox/catalog.hpp"
#include "pprox/errors.hpp"

namespace pprox {

namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

std::string describe(const ProxQuery& q) {
  std::ostringstream os;
  os.precision(17);
  os << "gamma=" << q.gamma << " eta=" << q.eta << " x=[";
  for (std::size_t i = 0; i < q.x.size(); ++i) os << (i ? "," : "") << q.x[i];
  os << "]";
  return os.str();
}

SuiteStats make_suite(std::string name, double tolerance) {
  SuiteStats s;
  s.suite = std::move(name);
  s.tolerance = tolerance;
  return s;
}

// (p, mu) stacked into one vector.
Vector stacked(const Vector& p, double mu) {
  Vector v = p;
  v.push_back(mu);
  return v;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"quadratic", "capped_burg", "exp_sum", "log_sum_exp",
                                              "nested_quadratic"};
  return names;
}

bool is_catalog_name(const std::string& name) {
  const auto& names = catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

FunctionPtr function_by_name(const std::string& name, std::size_t n, const SolverConfig& cfg) {
  if (name == "quadratic") return quadratic_ops(n);
  if (name == "capped_burg") {
    if (n != 1) throw InvalidArgument("capped_burg is scalar (n = 1)");
    return capped_burg_ops();
  }
  if (name == "exp_sum") return exp_sum_ops(n);
  if (name == "log_sum_exp") return log_sum_exp_ops(n);
  if (name == "nested_quadratic") return nested_perspective_ops(quadratic_ops(n), cfg);
  throw InvalidArgument("unknown function '" + name + "'");
}

RandomCase random_case(const std::string& name, std::mt19937_64& rng, const SolverConfig& cfg) {
  std::size_t n = 1;
  if (name == "log_sum_exp") {
    n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
  } else if (name != "capped_burg") {
    n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  }
  static constexpr double kGammas[] = {0.5, 1.0, 2.0};
  RandomCase c;
  c.f = function_by_name(name, n, cfg);
  c.query.f = c.f;
  c.query.gamma = kGammas[std::uniform_int_distribution<int>(0, 2)(rng)];
  c.query.x.resize(c.f->dim());
  for (double& xi : c.query.x) xi = uniform(rng, -5.0, 5.0);
  c.query.eta = uniform(rng, -5.0, 5.0);
  return c;
}

Vector sample_conjugate_epigraph(const BaseFunction& f, std::mt19937_64& rng) {
  // prox_conj lands in dom of the subdifferential of f*, where f* is finite.
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector r(f.dim());
    for (double& ri : r) ri = uniform(rng, -5.0, 5.0);
    const Vector u = f.prox_conj(uniform(rng, 0.1, 10.0), r);
    const ExtReal fu = f.conj_eval(u);
    if (fu.is_infinite()) continue;
    const double slack = std::bernoulli_distribution(0.5)(rng) ? 0.0 : uniform(rng, 0.0, 5.0);
    return stacked(u, -fu.value() - slack);
  }
  throw SolverFailure("sample_conjugate_epigraph: could not find a point with finite conjugate");
}

void SuiteStats::record(double metric, const std::string& context) {
  if (std::isnan(metric)) metric = std::numeric_limits<double>::infinity();
  max_value = std::max(max_value, metric);
  if (metric <= tolerance) {
    ++passed;
  } else {
    if (failed == 0) first_failure = context;
    ++failed;
  }
}

bool FunctionReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteStats& s) { return s.failed == 0; });
}

bool VerifyReport::ok() const {
  return std::all_of(functions.begin(), functions.end(), [](const FunctionReport& f) { return f.ok(); });
}

const SuiteStats* VerifyReport::find(const std::string& function, const std::string& suite) const {
  for (const auto& fr : functions) {
    if (fr.function != function) continue;
    for (const auto& s : fr.suites)
      if (s.suite == suite) return &s;
  }
  return nullptr;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.samples < 1) throw InvalidArgument("verify: samples must be >= 1");
  opts.solver.validate();
  OracleConfig ocfg;
  ocfg.nu_step = opts.grid_step;
  ocfg.exhaustive = opts.exhaustive_oracle;
  ocfg.validate();

  VerifyReport report;
  for (const std::string& name : opts.functions) {
    if (!is_catalog_name(name)) throw InvalidArgument("verify: unknown function '" + name + "'");
    const auto& names = catalog_names();
    const auto index = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + index);

    SuiteStats oracle = make_suite("oracle_agreement", kOracleGapTol);
    SuiteStats dominance = make_suite("objective_dominance", kObjectiveDominanceTol);
    SuiteStats feasibility = make_suite("feasibility", kFeasibilityTol);
    SuiteStats mu_eq = make_suite("mu_equation", kMuEquationTol);
    SuiteStats equality = make_suite("equality", kEqualityTol);
    SuiteStats firm = make_suite("firm_nonexpansive", kFirmNonexpansiveTol);
    SuiteStats homog = make_suite("homogeneity", kHomogeneityTol);
    SuiteStats moreau_in = make_suite("moreau_membership", kFeasibilityTol);
    SuiteStats moreau_vi = make_suite("moreau_variational", kMoreauTol);

    const int moreau_queries = std::min(opts.samples, opts.moreau_queries);
    const double inf = std::numeric_limits<double>::infinity();

    for (int s = 0; s < opts.samples; ++s) {
      const RandomCase c = random_case(name, rng, opts.solver);
      const ProxQuery& q = c.query;
      const std::string ctx = describe(q);

      ProxResult r;
      try {
        r = prox_perspective(q, opts.solver);
      } catch (const Error& e) {
        for (SuiteStats* st : {&oracle, &feasibility, &equality}) st->record(inf, ctx + " error: " + e.what());
        continue;
      }

      // Oracle agreement and objective dominance.
      const OracleResult o = brute_prox(*c.f, q.gamma, q.x, q.eta, ocfg);
      oracle.record(distance(stacked(r.p, r.mu), stacked(o.p, o.mu)), ctx);
      const double engine_obj = prox_objective(*c.f, q.gamma, q.x, q.eta, r.p, r.mu);
      dominance.record(engine_obj - o.grid_min_objective, ctx);

      // Characterization residuals.
      feasibility.record(r.feasibility_residual, ctx);
      equality.record(r.equality_residual, ctx);
      if (r.case_tag == CaseTag::Interior) mu_eq.record(r.mu_equation_residual / std::max(1.0, std::abs(r.mu)), ctx);

      // Firm nonexpansiveness against a second point of the same space.
      {
        ProxQuery q2 = q;
        for (double& xi : q2.x) xi = uniform(rng, -5.0, 5.0);
        q2.eta = uniform(rng, -5.0, 5.0);
        const ProxResult r2 = prox_perspective(q2, opts.solver);
        const Vector P1 = stacked(r.p, r.mu);
        const Vector P2 = stacked(r2.p, r2.mu);
        const Vector z1 = stacked(q.x, q.eta);
        const Vector z2 = stacked(q2.x, q2.eta);
        Vector dP(P1.size());
        Vector dz(P1.size());
        for (std::size_t i = 0; i < P1.size(); ++i) {
          dP[i] = P1[i] - P2[i];
          dz[i] = z1[i] - z2[i];
        }
        firm.record(dot(dP, dP) - dot(dP, dz), ctx);
      }

      // Positive homogeneity: prox_{gamma f~}(l z) = l prox_{(gamma/l) f~}(z).
      {
        const double lambda = uniform(rng, 0.2, 5.0);
        ProxQuery scaled = q;
        for (double& xi : scaled.x) xi *= lambda;
        scaled.eta *= lambda;
        ProxQuery shrunk = q;
        shrunk.gamma = q.gamma / lambda;
        const ProxResult a = prox_perspective(scaled, opts.solver);
        const ProxResult b = prox_perspective(shrunk, opts.solver);
        double gap = std::abs(a.mu - lambda * b.mu);
        for (std::size_t i = 0; i < a.p.size(); ++i) gap = std::max(gap, std::abs(a.p[i] - lambda * b.p[i]));
        homog.record(gap, ctx + " lambda=" + std::to_string(lambda));
      }

      // Moreau consistency: ((x - p)/gamma, (eta - mu)/gamma) = P_C((x, eta)/gamma).
      if (s < moreau_queries) {
        const Vector z = stacked(q.x, q.eta);
        const Vector P = stacked(r.p, r.mu);
        Vector dual(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) dual[i] = (z[i] - P[i]) / q.gamma;
        const Vector u(dual.begin(), dual.end() - 1);
        const double slack = (ExtReal(dual.back()) + c.f->conj_eval(c.f->project_dom_conj(u))).to_double();
        moreau_in.record(std::max(0.0, slack) + distance(u, c.f->project_dom_conj(u)), ctx);
        double worst = -inf;
        for (int k = 0; k < opts.moreau_points; ++k) {
          const Vector cpt = sample_conjugate_epigraph(*c.f, rng);
          double vi = 0.0;
          for (std::size_t i = 0; i < z.size(); ++i) vi += (P[i] / q.gamma) * (cpt[i] - dual[i]);
          worst = std::max(worst, vi);
        }
        moreau_vi.record(worst, ctx);
      }
    }

    report.functions.push_back(
        {name, {oracle, dominance, feasibility, mu_eq, equality, firm, homog, moreau_in, moreau_vi}});
  }
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %-20s %6s %6s %12s %10s\n", "function", "suite", "pass", "fail", "max",
                "tol");
  os << line;
  for (const auto& fr : report.functions) {
    for (const auto& s : fr.suites) {
      std::snprintf(line, sizeof line, "%-18s %-20s %6d %6d %12.3e %10.1e%s\n", fr.function.c_str(),
                    s.suite.c_str(), s.passed, s.failed, s.max_value, s.tolerance, s.failed ? "  FAIL" : "");
      os << line;
      if (s.failed) os << "    first failure: " << s.first_failure << "\n";
    }
  }
  os << (report.ok() ? "verify: all suites passed\n" : "verify: FAILED\n");
  return os.str();
}

}  // namespace pprox
