#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "pprox/ext_real.hpp"
#include "pprox/numerics.hpp"

namespace pprox {

/// Contract for a proper lsc convex f on R^n, described through its conjugate.
///
/// The perspective prox only needs f* (values), prox of tau*f*, and the
/// projection onto cl dom f*. The primal value and the recession function are
/// used by the oracle and by the residual checks.
class BaseFunction {
 public:
  virtual ~BaseFunction() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;

  /// f(x)
  virtual ExtReal eval_primal(std::span<const double> x) const = 0;
  /// f*(u)
  virtual ExtReal conj_eval(std::span<const double> u) const = 0;
  /// prox_{tau f*}(u), tau > 0
  virtual Vector prox_conj(double tau, std::span<const double> u) const = 0;
  /// Projection onto the closure of dom f*.
  virtual Vector project_dom_conj(std::span<const double> u) const = 0;

  /// Closed-form (rec f)(x) = sigma_{dom f*}(x) when known.
  virtual std::optional<ExtReal> recession(std::span<const double> /*x*/) const { return std::nullopt; }

  /// Number of perspective wrappers already inside this function.
  virtual int perspective_depth() const { return 0; }
};

using FunctionPtr = std::shared_ptr<const BaseFunction>;

struct RecessionValue {
  ExtReal value;
  bool approximate = false;  ///< true when obtained by ray sampling
};

/// (rec f)(x): the closed form if f provides one, otherwise
/// sup_K <x, P_{cl dom f*}(K x)> over K = 2^0 .. 2^30.
RecessionValue recession_value(const BaseFunction& f, std::span<const double> x);

/// The perspective (x, eta) -> eta f(x/eta), rec f at eta = 0, +inf for eta < 0.
ExtReal perspective_value(const BaseFunction& f, std::span<const double> x, double eta);

/// Residuals of the prox characterization of (p, mu) = prox_{gamma f~}(x, eta).
///
/// With u = (x - p)/gamma and u' its projection onto cl dom f*:
///   feasibility = max{0, (eta - mu)/gamma + f*(u')} + |u - u'|
///   equality    = |f~(p, mu) - <p, u> - mu (eta - mu)/gamma|
/// Both vanish exactly at the prox. The distance term keeps the feasibility
/// residual finite when rounding pushes u a few ulps outside dom f*.
struct Residuals {
  double feasibility = 0.0;
  double equality = 0.0;
};

Residuals characterization_residuals(const BaseFunction& f, double gamma, std::span<const double> x,
                                     double eta, std::span<const double> p, double mu);

}  // namespace pprox
