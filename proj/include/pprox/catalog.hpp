#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>

#include "pprox/base_function.hpp"
#include "pprox/numerics.hpp"

namespace pprox {

/// Deepest perspective stack allowed by default: g~ wrapped once more by the engine.
inline constexpr int kDefaultMaxPerspectiveDepth = 2;

/// f(x) = |x|^2 / 2 on R^n.
FunctionPtr quadratic_ops(std::size_t n);

/// f(xi) = -1 - ln(-xi) for xi < -1, xi otherwise; f* = -ln on ]0, 1].
FunctionPtr capped_burg_ops();

/// f(x) = sum_i e^{x_i - 1}; f* is the entropy sum_i xi ln xi on [0, +inf)^n.
FunctionPtr exp_sum_ops(std::size_t n);

/// f(x) = ln sum_i e^{x_i}, n >= 2; f* is the entropy restricted to the simplex.
FunctionPtr log_sum_exp_ops(std::size_t n);

/// f = g~ (the perspective of inner) on R^{n+1}; f* is the indicator of
/// C = {(u, s) : s + g*(u) <= 0}. Projections onto C go through the engine.
/// Throws NestingTooDeep when perspective_depth would exceed max_depth.
FunctionPtr nested_perspective_ops(FunctionPtr inner, const SolverConfig& cfg = {},
                                   int max_depth = kDefaultMaxPerspectiveDepth);

/// Diagnostics of the inner Lagrange-multiplier solve of log_sum_exp's prox_conj.
struct SimplexEntropyProx {
  Vector p;
  int iterations = 0;
};

/// prox_{tau f*}(y) for f = log-sum-exp, with the multiplier solve's iteration count.
SimplexEntropyProx log_sum_exp_prox_conj(double tau, std::span<const double> y,
                                         const SolverConfig& cfg = {});

// Catalog specification ---------------------------------------------------------

struct FunctionSpec;

struct QuadraticSpec {
  std::size_t n = 1;
};
struct CappedBurgSpec {};
struct ExpSumSpec {
  std::size_t n = 1;
};
struct LogSumExpSpec {
  std::size_t n = 2;
};
struct NestedPerspectiveSpec {
  std::shared_ptr<const FunctionSpec> inner;
};

struct FunctionSpec {
  std::variant<QuadraticSpec, CappedBurgSpec, ExpSumSpec, LogSumExpSpec, NestedPerspectiveSpec> kind;
};

/// Builds the catalog entry described by spec.
FunctionPtr make_function(const FunctionSpec& spec, const SolverConfig& cfg = {},
                          int max_depth = kDefaultMaxPerspectiveDepth);

}  // namespace pprox
