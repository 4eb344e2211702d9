#include "pprox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pprox/errors.hpp"

namespace pprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxCeilingDoublings = 20;
constexpr double kGolden = 0.6180339887498949;

// F along the curve nu -> (p(nu), nu), where p(nu) minimizes F(., nu).
class ScaleObjective {
 public:
  ScaleObjective(const BaseFunction& f, double gamma, std::span<const double> x, double eta)
      : f_(f), gamma_(gamma), x_(x), eta_(eta), y_(x.begin(), x.end()) {
    for (double& yi : y_) yi /= gamma;
  }

  Vector minimizer(double nu) const {
    const Vector dual = nu == 0.0 ? f_.project_dom_conj(y_) : f_.prox_conj(nu / gamma_, y_);
    Vector p(y_.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = gamma_ * (y_[i] - dual[i]);
    return p;
  }

  double operator()(double nu) {
    ++evaluations;
    return prox_objective(f_, gamma_, x_, eta_, minimizer(nu), nu);
  }

  std::size_t evaluations = 0;

 private:
  const BaseFunction& f_;
  double gamma_;
  std::span<const double> x_;
  double eta_;
  Vector y_;
};

struct GridMin {
  std::size_t index = 0;
  double value = kInf;
};

// Smallest F over nu_k = k * step, k = 0..last. Ties go to the smaller nu.
GridMin search_grid(ScaleObjective& F, double step, std::size_t last, bool exhaustive) {
  std::map<std::size_t, double> memo;
  auto at = [&](std::size_t k) {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    const double v = F(static_cast<double>(k) * step);
    memo.emplace(k, v);
    return v;
  };
  auto scan = [&](std::size_t a, std::size_t b, GridMin best) {
    for (std::size_t k = a; k <= b; ++k) {
      const double v = at(k);
      if (v < best.value || (v == best.value && k < best.index)) best = {k, v};
    }
    return best;
  };

  if (exhaustive) return scan(0, last, {});

  // Ternary search on indices; F is strongly convex in nu.
  std::size_t lo = 0;
  std::size_t hi = last;
  while (hi - lo > 8) {
    const std::size_t m1 = lo + (hi - lo) / 3;
    const std::size_t m2 = hi - (hi - lo) / 3;
    if (at(m1) <= at(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  GridMin best = scan(lo, hi, {});
  // A window around the winner guards against rounding plateaus.
  constexpr std::size_t kWindow = 32;
  const std::size_t a = best.index > kWindow ? best.index - kWindow : 0;
  const std::size_t b = std::min(last, best.index + kWindow);
  return scan(a, b, best);
}

}  // namespace

void OracleConfig::validate() const {
  if (!(nu_step > 0.0)) throw InvalidArgument("OracleConfig: nu_step must be > 0");
  if (nu_max && !(*nu_max > 0.0)) throw InvalidArgument("OracleConfig: nu_max must be > 0");
  if (refine_iters < 0) throw InvalidArgument("OracleConfig: refine_iters must be >= 0");
}

ExtReal perspective_eval(const BaseFunction& f, std::span<const double> x, double eta) {
  return perspective_value(f, x, eta);
}

double prox_objective(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                      std::span<const double> p, double mu) {
  const ExtReal persp = perspective_value(f, p, mu);
  if (persp.is_infinite()) return kInf;
  const double d = distance(p, x);
  return gamma * persp.value() + 0.5 * d * d + 0.5 * (mu - eta) * (mu - eta);
}

OracleResult brute_prox(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                        const OracleConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0.0)) throw InvalidArgument("brute_prox: gamma must be > 0");
  if (x.size() != f.dim()) throw InvalidArgument("brute_prox: dimension mismatch");

  double nu_max = 0.0;
  if (cfg.nu_max) {
    nu_max = *cfg.nu_max;
  } else {
    Vector y(x.begin(), x.end());
    for (double& yi : y) yi /= gamma;
    const ExtReal t = ExtReal(eta) + f.conj_eval(f.project_dom_conj(y)).scaled(gamma);
    nu_max = t.is_finite() ? std::max(t.value() + 5.0, 1.0) : 10.0 * std::max(1.0, std::abs(eta));
  }

  ScaleObjective F(f, gamma, x, eta);
  GridMin best;
  std::size_t last = 0;
  for (int doubling = 0;; ++doubling) {
    last = static_cast<std::size_t>(std::ceil(nu_max / cfg.nu_step));
    best = search_grid(F, cfg.nu_step, last, cfg.exhaustive);
    if (best.index < last || doubling == kMaxCeilingDoublings) break;
    nu_max *= 2.0;
  }

  OracleResult out;
  out.grid_min_objective = best.value;
  out.nu_max = nu_max;
  out.grid_points = last + 1;

  // Golden section on [nu_{k-1}, nu_{k+1}].
  double a = best.index > 0 ? static_cast<double>(best.index - 1) * cfg.nu_step : 0.0;
  double b = static_cast<double>(best.index + 1) * cfg.nu_step;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = F(c);
  double fd = F(d);
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = F(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = F(d);
    }
  }
  double nu = static_cast<double>(best.index) * cfg.nu_step;
  double value = best.value;
  const double refined = fc <= fd ? c : d;
  const double refined_value = std::min(fc, fd);
  if (refined_value < value) {
    nu = refined;
    value = refined_value;
  }

  out.mu = nu;
  out.p = F.minimizer(nu);
  out.objective = value;
  out.evaluations = F.evaluations;
  out.recession_approximate = !f.recession(out.p).has_value();
  return out;
}

Residuals fenchel_young_residual(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                                 std::span<const double> p, double mu) {
  if (mu < 0.0) throw InvalidArgument("fenchel_young_residual: mu must be >= 0");
  return characterization_residuals(f, gamma, x, eta, p, mu);
}

}  // namespace pprox
