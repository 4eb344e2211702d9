#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pprox/ext_real.hpp"

namespace pprox {

using Vector = std::vector<double>;

/// Tolerances shared by every scalar solver in the library.
struct SolverConfig {
  double abs_tol = 1e-12;  ///< stop when |g(t)| <= abs_tol
  double rel_tol = 1e-14;  ///< or when the bracket is narrower than rel_tol * max(1, |t|)
  int max_iter = 200;
  double bracket_expand = 2.0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Search interval [lo, hi]; hi may start at +inf and is then expanded.
struct Bracket {
  double lo = 0.0;
  ExtReal hi = ExtReal::infinity();
};

struct RootResult {
  double root = 0.0;
  int iterations = 0;  ///< evaluations of g after the bracket was fixed
  Bracket bracket;     ///< finite bracket the root was searched in
};

using ScalarFn = std::function<double(double)>;

/// Root of a continuous nondecreasing g on a bracket.
///
/// If bracket.hi is +inf it is replaced by max(lo, 1) * bracket_expand^k for
/// the first k with g >= 0 (lo moves up to the last point with g < 0).
/// With a derivative, each step tries Newton from the latest iterate and falls
/// back to bisection whenever the step leaves the bracket or stalls.
///
/// The endpoints are tested first, so a root sitting exactly on lo or hi is
/// returned bit-exactly.
RootResult bisect_monotone(const ScalarFn& g, Bracket bracket, const SolverConfig& cfg = {},
                           const ScalarFn& derivative = {});

/// Principal branch W0 on [0, +inf).
double lambert_w0(double y);

/// W0(e^z) for any real z without forming e^z, i.e. the w > 0 with w + ln w = z.
double lambert_w0_exp(double z);

/// Euclidean projection onto the probability simplex {p >= 0, sum p = 1}.
Vector project_simplex(std::span<const double> v);

// Small vector helpers used across the library.
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace pprox
