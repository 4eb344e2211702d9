#pragma once

#include <functional>
#include <span>

#include "pprox/engine.hpp"

namespace pprox {

/// Scalar description of f = phi(|.|) for an even phi, through phi*.
/// Callers only ever pass xi >= 0 since phi* is even.
struct RadialProfile {
  std::function<ExtReal(double)> phi_conj_eval;
  std::function<double(double, double)> phi_prox_conj;  ///< (tau, xi) -> prox_{tau phi*}(xi)
  std::function<double(double)> phi_project_dom_conj;
  std::function<ExtReal(double)> phi_eval;  ///< optional; enables the equality residual
};

/// phi(t) = t^2/2, i.e. f = |.|^2/2.
RadialProfile quadratic_profile();

/// prox_{gamma f~}(x, eta) for f = phi(|.|), reducing the problem to |x|.
///
/// x = 0 never goes through a division by |x|: it maps to (0, 0) on the
/// boundary case and to (0, eta + gamma phi*(0)) otherwise.
ProxResult prox_perspective_radial(const RadialProfile& profile, double gamma, std::span<const double> x,
                                   double eta, const SolverConfig& cfg = {});

}  // namespace pprox
