#include "pprox/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "pprox/errors.hpp"

namespace pprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Halley stops once the update is below this relative size.
constexpr double kLambertStep = 1e-15;
constexpr int kLambertMaxIter = 64;

double checked(const ScalarFn& g, double t) {
  const double v = g(t);
  if (std::isnan(v)) throw NonFinite("bisect_monotone: g(" + std::to_string(t) + ") is NaN");
  return v;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(abs_tol > 0.0)) throw InvalidArgument("SolverConfig: abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw InvalidArgument("SolverConfig: rel_tol must be > 0");
  if (max_iter < 1) throw InvalidArgument("SolverConfig: max_iter must be >= 1");
  if (!(bracket_expand > 1.0)) throw InvalidArgument("SolverConfig: bracket_expand must be > 1");
}

RootResult bisect_monotone(const ScalarFn& g, Bracket bracket, const SolverConfig& cfg,
                           const ScalarFn& derivative) {
  cfg.validate();
  double lo = bracket.lo;
  if (!std::isfinite(lo)) throw InvalidArgument("bisect_monotone: lower bracket end must be finite");

  double hi = 0.0;
  if (bracket.hi.is_infinite()) {
    double h = std::max(lo, 1.0);
    for (int k = 0;; ++k) {
      if (k > cfg.max_iter || !std::isfinite(h))
        throw NoSignChange("bisect_monotone: no sign change after expanding the bracket");
      if (checked(g, h) >= 0.0) break;
      lo = h;
      h *= cfg.bracket_expand;
    }
    hi = h;
  } else {
    hi = bracket.hi.value();
  }
  if (!(lo <= hi)) throw InvalidArgument("bisect_monotone: bracket has lo > hi");

  const double g_hi = checked(g, hi);
  if (std::abs(g_hi) <= cfg.abs_tol) return {hi, 0, {lo, hi}};
  const double g_lo = checked(g, lo);
  if (std::abs(g_lo) <= cfg.abs_tol) return {lo, 0, {lo, hi}};
  if (g_lo > 0.0 || g_hi < 0.0)
    throw NoSignChange("bisect_monotone: g(lo) > 0 or g(hi) < 0 on the supplied bracket");

  const Bracket used{lo, hi};
  double x = lo;
  double gx = g_lo;
  bool have_iterate = false;
  double step = hi - lo;
  double prev_step = step;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    double next = 0.5 * (lo + hi);
    if (derivative && have_iterate) {
      const double d = derivative(x);
      if (std::isfinite(d) && d > 0.0) {
        const double newton = x - gx / d;
        // rtsafe-style safeguard: take Newton only if it stays inside and
        // shrinks at least as fast as bisection would.
        if (newton > lo && newton < hi && std::abs(2.0 * gx) < std::abs(prev_step * d)) next = newton;
      }
    }
    if (next == lo || next == hi) return {x, it, used};
    prev_step = step;
    step = std::abs(next - x);
    x = next;
    gx = checked(g, x);
    have_iterate = true;
    if (std::abs(gx) <= cfg.abs_tol) return {x, it, used};
    if (gx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= cfg.rel_tol * std::max(1.0, std::abs(x))) return {0.5 * (lo + hi), it, used};
  }
  throw SolverFailure("bisect_monotone: max_iter exhausted before reaching tolerance");
}

double lambert_w0(double y) {
  if (std::isnan(y) || y < 0.0) throw DomainError("lambert_w0: argument must be >= 0");
  if (y == 0.0) return 0.0;
  if (y == kInf) return kInf;
  // Past ~1e300 w*e^w overflows in the linear residual; the log form is exact there.
  if (y > 1e300) return lambert_w0_exp(std::log(y));

  double w = std::log1p(y);
  for (int it = 0; it < kLambertMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    const double wp1 = w + 1.0;
    const double dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (std::abs(dw) <= kLambertStep * (1.0 + std::abs(w))) break;
  }
  // Newton polish in case Halley stopped on the step criterion with a larger residual.
  for (int it = 0; it < 4; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    if (std::abs(f) <= 1e-15 * std::max(1.0, y)) break;
    w -= f / (ew * (w + 1.0));
  }
  return w;
}

double lambert_w0_exp(double z) {
  if (std::isnan(z)) throw DomainError("lambert_w0_exp: argument is NaN");
  if (z == kInf) return kInf;
  if (z < -30.0) {
    // W(x) = x - x^2 + O(x^3); with x < 1e-13 the cubic term is far below an ulp.
    const double x = std::exp(z);
    return x * (1.0 - x);
  }

  double w = z > 1.0 ? z - std::log(z) : std::exp(z) / (1.0 + std::exp(z));
  for (int it = 0; it < kLambertMaxIter; ++it) {
    const double h = w + std::log(w) - z;
    const double dh = 1.0 + 1.0 / w;
    const double dw = h / (dh + h / (2.0 * w * w * dh));
    const double next = w - dw;
    w = next > 0.0 ? next : 0.1 * w;
    if (std::abs(dw) <= kLambertStep * std::abs(w)) break;
  }
  return w;
}

Vector project_simplex(std::span<const double> v) {
  if (v.empty()) throw EmptyInput("project_simplex: empty input");
  for (double vi : v)
    if (!std::isfinite(vi)) throw InvalidArgument("project_simplex: non-finite coordinate");

  Vector sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] - (sum_{i<k} sorted[i] - 1)/k > 0; k = 1 always qualifies.
  double partial = 0.0;
  double theta = sorted[0] - 1.0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    partial += sorted[k - 1];
    const double candidate = (partial - 1.0) / static_cast<double>(k);
    if (sorted[k - 1] - candidate > 0.0) theta = candidate;
  }

  Vector p(v.size());
  std::transform(v.begin(), v.end(), p.begin(), [theta](double vi) { return std::max(vi - theta, 0.0); });
  return p;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: size mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace pprox
