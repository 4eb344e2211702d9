#pragma once

#include <span>
#include <string_view>

#include "pprox/base_function.hpp"
#include "pprox/ext_real.hpp"
#include "pprox/numerics.hpp"

namespace pprox {

/// One prox computation: prox_{gamma f~}(x, eta).
struct ProxQuery {
  FunctionPtr f;
  double gamma = 1.0;
  Vector x;
  double eta = 0.0;

  /// Throws InvalidArgument on gamma <= 0, a missing function or a dimension mismatch.
  void validate() const;
};

enum class CaseTag { Boundary, Interior };

std::string_view to_string(CaseTag tag);

struct ProxResult {
  Vector p;
  double mu = 0.0;
  CaseTag case_tag = CaseTag::Boundary;
  ExtReal threshold;
  Bracket bracket_used{0.0, ExtReal(0.0)};
  int iterations = 0;
  double feasibility_residual = 0.0;
  double equality_residual = 0.0;
  /// |mu - eta - gamma f*(prox_{mu/gamma f*}(x/gamma))|, zero on the boundary case.
  double mu_equation_residual = 0.0;
};

/// eta + gamma f*(P_{cl dom f*}(x/gamma)); decides the case of the prox.
ExtReal threshold(const ProxQuery& q);

/// Lower end of the mu bracket; the admissible interval is open at 0.
inline constexpr double kMuBracketLo = 1e-300;

struct MuSolve {
  double mu = 0.0;
  Bracket bracket;
  int iterations = 0;
};

/// Root of the nondecreasing g on ]0, t] (t = threshold > 0). For t = +inf the
/// upper end starts at max(eta, 1) and grows by cfg.bracket_expand until g >= 0.
/// Numerical failures surface as SolverFailure.
MuSolve solve_mu_equation(const ScalarFn& g, ExtReal t, double eta, const SolverConfig& cfg);

/// prox of gamma times the perspective of q.f at (q.x, q.eta).
///
/// threshold <= 0: (x - gamma P(x/gamma), 0).
/// threshold  > 0: mu solves mu = eta + gamma f*(prox_{mu/gamma f*}(x/gamma)) and
///                 p = x - gamma prox_{mu/gamma f*}(x/gamma).
ProxResult prox_perspective(const ProxQuery& q, const SolverConfig& cfg = {});

/// Three-branch closed form for the capped Burg entry (scalar xi).
ProxResult capped_burg_closed_form(double gamma, double xi, double eta, const SolverConfig& cfg = {});

/// prox of gamma times the perspective of g~ at ((x, eta), delta).
///
/// Returns p = (prox_{gamma g~}(x, eta)) of size n + 1 and mu = max{0, delta}
/// exactly; threshold is delta.
ProxResult nested_perspective_prox(double gamma, std::span<const double> x, double eta, double delta,
                                   const FunctionPtr& inner, const SolverConfig& cfg = {});

}  // namespace pprox
