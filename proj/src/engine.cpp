#include "pprox/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pprox/catalog.hpp"
#include "pprox/errors.hpp"

namespace pprox {

namespace {

Vector scaled_copy(std::span<const double> x, double inv) {
  Vector y(x.begin(), x.end());
  for (double& yi : y) yi *= inv;
  return y;
}

// gamma (y - c). For c == y this is exactly zero, which keeps recession
// values such as rec(|.|^2/2)(p) = +inf for p != 0 from firing on rounding noise.
Vector primal_from_dual(double gamma, std::span<const double> y, std::span<const double> c) {
  Vector p(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) p[i] = gamma * (y[i] - c[i]);
  return p;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

std::string_view to_string(CaseTag tag) { return tag == CaseTag::Boundary ? "boundary" : "interior"; }

void ProxQuery::validate() const {
  if (!f) throw InvalidArgument("ProxQuery: function is null");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("ProxQuery: gamma must be > 0");
  if (x.size() != f->dim())
    throw InvalidArgument("ProxQuery: x has dimension " + std::to_string(x.size()) + " but f has " +
                          std::to_string(f->dim()));
  for (double xi : x) require_finite(xi, "ProxQuery: x");
  require_finite(eta, "ProxQuery: eta");
}

ExtReal threshold(const ProxQuery& q) {
  q.validate();
  const Vector y = scaled_copy(q.x, 1.0 / q.gamma);
  return ExtReal(q.eta) + q.f->conj_eval(q.f->project_dom_conj(y)).scaled(q.gamma);
}

MuSolve solve_mu_equation(const ScalarFn& g, ExtReal t, double eta, const SolverConfig& cfg) {
  if (!(t > 0.0)) throw InvalidArgument("solve_mu_equation: threshold must be positive");
  try {
    Bracket bracket;
    if (t.is_finite()) {
      const double lo = std::min(kMuBracketLo, 0.5 * t.value());
      bracket = Bracket{lo, t};
    } else {
      double lo = kMuBracketLo;
      double hi = std::max(eta, 1.0);
      for (int k = 0;; ++k) {
        if (k > cfg.max_iter || !std::isfinite(hi))
          throw NoSignChange("mu bracket expansion did not reach g >= 0");
        const double v = g(hi);
        if (std::isnan(v)) throw NonFinite("mu equation is NaN during bracket expansion");
        if (v >= 0.0) break;
        lo = hi;
        hi *= cfg.bracket_expand;
      }
      bracket = Bracket{lo, ExtReal(hi)};
    }
    const RootResult root = bisect_monotone(g, bracket, cfg);
    return {root.root, root.bracket, root.iterations};
  } catch (const NoSignChange& e) {
    throw SolverFailure(std::string("mu equation: ") + e.what());
  } catch (const NonFinite& e) {
    throw SolverFailure(std::string("mu equation: ") + e.what());
  }
}

ProxResult prox_perspective(const ProxQuery& q, const SolverConfig& cfg) {
  q.validate();
  cfg.validate();
  const BaseFunction& f = *q.f;
  const double gamma = q.gamma;
  const Vector y = scaled_copy(q.x, 1.0 / gamma);

  ProxResult r;
  r.threshold = threshold(q);

  if (r.threshold <= 0.0) {
    r.case_tag = CaseTag::Boundary;
    r.mu = 0.0;
    r.p = primal_from_dual(gamma, y, f.project_dom_conj(y));
  } else {
    const ScalarFn g = [&](double mu) {
      return mu - q.eta - gamma * f.conj_eval(f.prox_conj(mu / gamma, y)).to_double();
    };
    const MuSolve solve = solve_mu_equation(g, r.threshold, q.eta, cfg);
    r.case_tag = CaseTag::Interior;
    r.mu = solve.mu;
    r.bracket_used = solve.bracket;
    r.iterations = solve.iterations;
    r.p = primal_from_dual(gamma, y, f.prox_conj(r.mu / gamma, y));
    r.mu_equation_residual = std::abs(g(r.mu));
  }

  const Residuals res = characterization_residuals(f, gamma, q.x, q.eta, r.p, r.mu);
  r.feasibility_residual = res.feasibility;
  r.equality_residual = res.equality;
  return r;
}

ProxResult capped_burg_closed_form(double gamma, double xi, double eta, const SolverConfig& cfg) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("capped_burg_closed_form: gamma must be > 0");
  require_finite(xi, "capped_burg_closed_form: xi");
  require_finite(eta, "capped_burg_closed_form: eta");
  cfg.validate();

  ProxResult r;
  const double med = std::clamp(xi / gamma, 0.0, 1.0);
  r.threshold = med > 0.0 ? ExtReal(eta - gamma * std::log(med)) : ExtReal::infinity();

  if (eta <= 0.0 && xi >= gamma * std::exp(eta / gamma)) {
    r.case_tag = CaseTag::Boundary;
    r.p = {std::max(0.0, xi - gamma)};
    r.mu = 0.0;
  } else if (eta > 0.0 && xi >= gamma - eta) {
    r.case_tag = CaseTag::Interior;
    r.p = {xi - gamma};
    r.mu = eta;
    r.bracket_used = Bracket{eta, ExtReal(eta)};
  } else {
    // mu = eta - gamma ln((xi + sqrt(xi^2 + 4 mu gamma)) / (2 gamma)) on ]0, eta - gamma ln(max{0, xi/gamma})]
    const ScalarFn g = [=](double mu) {
      const double s = std::sqrt(xi * xi + 4.0 * mu * gamma);
      const double q = xi >= 0.0 ? (xi + s) / (2.0 * gamma) : 2.0 * mu / (s - xi);
      return mu - eta + gamma * std::log(q);
    };
    const ExtReal upper = xi > 0.0 ? ExtReal(eta - gamma * std::log(xi / gamma)) : ExtReal::infinity();
    const MuSolve solve = solve_mu_equation(g, upper, eta, cfg);
    const double mu = solve.mu;
    const double s = std::sqrt(xi * xi + 4.0 * mu * gamma);
    r.case_tag = CaseTag::Interior;
    r.mu = mu;
    r.p = {xi <= 0.0 ? 0.5 * (xi - s) : -2.0 * mu * gamma / (xi + s)};
    r.bracket_used = solve.bracket;
    r.iterations = solve.iterations;
    r.mu_equation_residual = std::abs(g(mu));
  }

  const Vector x{xi};
  const Residuals res = characterization_residuals(*capped_burg_ops(), gamma, x, eta, r.p, r.mu);
  r.feasibility_residual = res.feasibility;
  r.equality_residual = res.equality;
  return r;
}

ProxResult nested_perspective_prox(double gamma, std::span<const double> x, double eta, double delta,
                                   const FunctionPtr& inner, const SolverConfig& cfg) {
  require_finite(delta, "nested_perspective_prox: delta");
  const FunctionPtr outer = nested_perspective_ops(inner, cfg);

  const ProxQuery inner_query{inner, gamma, Vector(x.begin(), x.end()), eta};
  const ProxResult head = prox_perspective(inner_query, cfg);

  ProxResult r;
  r.p = head.p;
  r.p.push_back(head.mu);
  r.mu = std::max(0.0, delta);
  r.case_tag = delta > 0.0 ? CaseTag::Interior : CaseTag::Boundary;
  r.threshold = ExtReal(delta);
  r.bracket_used = Bracket{r.mu, ExtReal(r.mu)};
  r.iterations = head.iterations;

  Vector z(x.begin(), x.end());
  z.push_back(eta);
  const Residuals res = characterization_residuals(*outer, gamma, z, delta, r.p, r.mu);
  r.feasibility_residual = res.feasibility;
  r.equality_residual = res.equality;
  return r;
}

}  // namespace pprox
