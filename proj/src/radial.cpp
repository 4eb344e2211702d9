#include "pprox/radial.hpp"

#include <algorithm>
#include <cmath>

#include "pprox/errors.hpp"

namespace pprox {

RadialProfile quadratic_profile() {
  RadialProfile prof;
  prof.phi_conj_eval = [](double xi) { return ExtReal(0.5 * xi * xi); };
  prof.phi_prox_conj = [](double tau, double xi) { return xi / (1.0 + tau); };
  prof.phi_project_dom_conj = [](double xi) { return xi; };
  prof.phi_eval = [](double t) { return ExtReal(0.5 * t * t); };
  return prof;
}

ProxResult prox_perspective_radial(const RadialProfile& profile, double gamma, std::span<const double> x,
                                   double eta, const SolverConfig& cfg) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("prox_perspective_radial: gamma must be > 0");
  if (x.empty()) throw InvalidArgument("prox_perspective_radial: x is empty");
  if (!std::isfinite(eta)) throw InvalidArgument("prox_perspective_radial: eta must be finite");
  cfg.validate();

  const double r = norm(x);
  const double rho = r / gamma;
  const bool at_origin = r == 0.0;

  ProxResult out;
  out.threshold = ExtReal(eta) + profile.phi_conj_eval(profile.phi_project_dom_conj(rho)).scaled(gamma);

  // Scale factor applied to x; the dual radius is the norm of (x - p)/gamma.
  double factor = 0.0;
  double dual_radius = 0.0;

  if (out.threshold <= 0.0) {
    out.case_tag = CaseTag::Boundary;
    out.mu = 0.0;
    if (!at_origin) {
      dual_radius = profile.phi_project_dom_conj(rho);
      factor = 1.0 - gamma * dual_radius / r;
    }
  } else if (at_origin) {
    out.case_tag = CaseTag::Interior;
    out.mu = out.threshold.value();
  } else {
    const ScalarFn g = [&](double mu) {
      return mu - eta - gamma * profile.phi_conj_eval(profile.phi_prox_conj(mu / gamma, rho)).to_double();
    };
    const MuSolve solve = solve_mu_equation(g, out.threshold, eta, cfg);
    out.case_tag = CaseTag::Interior;
    out.mu = solve.mu;
    out.bracket_used = solve.bracket;
    out.iterations = solve.iterations;
    out.mu_equation_residual = std::abs(g(solve.mu));
    dual_radius = profile.phi_prox_conj(solve.mu / gamma, rho);
    factor = 1.0 - gamma * dual_radius / r;
  }

  out.p.resize(x.size());
  std::transform(x.begin(), x.end(), out.p.begin(), [factor](double xi) { return factor * xi; });

  // With u = (x - p)/gamma, |u| = dual_radius.
  const double slack = (ExtReal((eta - out.mu) / gamma) + profile.phi_conj_eval(dual_radius)).to_double();
  out.feasibility_residual = std::max(0.0, slack);
  if (profile.phi_eval && out.mu > 0.0) {
    const double pr = norm(out.p);
    const ExtReal persp = profile.phi_eval(pr / out.mu).scaled(out.mu);
    out.equality_residual = persp.is_infinite()
                                ? std::numeric_limits<double>::infinity()
                                : std::abs(persp.value() - pr * dual_radius - out.mu * (eta - out.mu) / gamma);
  }
  return out;
}

}  // namespace pprox
