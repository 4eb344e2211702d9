#include "pprox/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pprox/engine.hpp"
#include "pprox/errors.hpp"

namespace pprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding slack when testing membership in the affine hull {sum u = 1} or in C.
constexpr double kSimplexSumTol = 1e-10;
constexpr double kConstraintTol = 1e-10;

void require_dim(std::span<const double> v, std::size_t n, const char* who) {
  if (v.size() != n)
    throw InvalidArgument(std::string(who) + ": expected dimension " + std::to_string(n) + ", got " +
                          std::to_string(v.size()));
}

void require_tau(double tau, const char* who) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument(std::string(who) + ": tau must be > 0");
}

// xi ln xi with the conventions 0 ln 0 = 0 and +inf for xi < 0.
ExtReal entropy_term(double xi) {
  if (xi < 0.0) return ExtReal::infinity();
  if (xi == 0.0) return ExtReal(0.0);
  return ExtReal(xi * std::log(xi));
}

class Quadratic final : public BaseFunction {
 public:
  explicit Quadratic(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "quadratic"; }

  ExtReal eval_primal(std::span<const double> x) const override {
    require_dim(x, n_, "quadratic");
    return ExtReal(0.5 * dot(x, x));
  }
  ExtReal conj_eval(std::span<const double> u) const override {
    require_dim(u, n_, "quadratic");
    return ExtReal(0.5 * dot(u, u));
  }
  Vector prox_conj(double tau, std::span<const double> u) const override {
    require_dim(u, n_, "quadratic");
    require_tau(tau, "quadratic");
    Vector p(u.begin(), u.end());
    for (double& pi : p) pi /= 1.0 + tau;
    return p;
  }
  Vector project_dom_conj(std::span<const double> u) const override {
    require_dim(u, n_, "quadratic");
    return Vector(u.begin(), u.end());
  }
  std::optional<ExtReal> recession(std::span<const double> x) const override {
    const bool zero = std::all_of(x.begin(), x.end(), [](double xi) { return xi == 0.0; });
    return zero ? ExtReal(0.0) : ExtReal::infinity();
  }

 private:
  std::size_t n_;
};

class CappedBurg final : public BaseFunction {
 public:
  std::size_t dim() const override { return 1; }
  std::string name() const override { return "capped_burg"; }

  ExtReal eval_primal(std::span<const double> x) const override {
    require_dim(x, 1, "capped_burg");
    const double xi = x[0];
    if (xi < -1.0) return ExtReal(-1.0 - std::log(-xi));
    return ExtReal(xi);
  }
  ExtReal conj_eval(std::span<const double> u) const override {
    require_dim(u, 1, "capped_burg");
    const double xi = u[0];
    if (xi > 0.0 && xi <= 1.0) return ExtReal(-std::log(xi));
    return ExtReal::infinity();
  }
  Vector prox_conj(double tau, std::span<const double> u) const override {
    require_dim(u, 1, "capped_burg");
    require_tau(tau, "capped_burg");
    const double y = u[0];
    const double root = std::sqrt(y * y + 4.0 * tau);
    // (y + sqrt(y^2 + 4 tau)) / 2 without cancellation for y < 0.
    const double uncapped = y >= 0.0 ? 0.5 * (y + root) : 2.0 * tau / (root - y);
    return {std::min(1.0, uncapped)};
  }
  Vector project_dom_conj(std::span<const double> u) const override {
    require_dim(u, 1, "capped_burg");
    return {std::clamp(u[0], 0.0, 1.0)};
  }
  std::optional<ExtReal> recession(std::span<const double> x) const override {
    require_dim(x, 1, "capped_burg");
    return ExtReal(std::max(0.0, x[0]));
  }
};

class ExpSum final : public BaseFunction {
 public:
  explicit ExpSum(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "exp_sum"; }

  ExtReal eval_primal(std::span<const double> x) const override {
    require_dim(x, n_, "exp_sum");
    double s = 0.0;
    for (double xi : x) s += std::exp(xi - 1.0);
    return ExtReal(s);
  }
  ExtReal conj_eval(std::span<const double> u) const override {
    require_dim(u, n_, "exp_sum");
    ExtReal s(0.0);
    for (double ui : u) s = s + entropy_term(ui);
    return s;
  }
  Vector prox_conj(double tau, std::span<const double> u) const override {
    require_dim(u, n_, "exp_sum");
    require_tau(tau, "exp_sum");
    // p_i = tau W0((1/tau) e^{u_i/tau - 1}), evaluated in the log domain.
    const double shift = 1.0 + std::log(tau);
    Vector p(n_);
    for (std::size_t i = 0; i < n_; ++i) p[i] = tau * lambert_w0_exp(u[i] / tau - shift);
    return p;
  }
  Vector project_dom_conj(std::span<const double> u) const override {
    require_dim(u, n_, "exp_sum");
    Vector p(u.begin(), u.end());
    for (double& pi : p) pi = std::max(0.0, pi);
    return p;
  }
  std::optional<ExtReal> recession(std::span<const double> x) const override {
    const bool nonpos = std::all_of(x.begin(), x.end(), [](double xi) { return xi <= 0.0; });
    return nonpos ? ExtReal(0.0) : ExtReal::infinity();
  }

 private:
  std::size_t n_;
};

class LogSumExp final : public BaseFunction {
 public:
  explicit LogSumExp(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "log_sum_exp"; }

  ExtReal eval_primal(std::span<const double> x) const override {
    require_dim(x, n_, "log_sum_exp");
    const double m = *std::max_element(x.begin(), x.end());
    double s = 0.0;
    for (double xi : x) s += std::exp(xi - m);
    return ExtReal(m + std::log(s));
  }
  ExtReal conj_eval(std::span<const double> u) const override {
    require_dim(u, n_, "log_sum_exp");
    const double total = std::accumulate(u.begin(), u.end(), 0.0);
    if (std::abs(total - 1.0) > kSimplexSumTol) return ExtReal::infinity();
    ExtReal s(0.0);
    for (double ui : u) s = s + entropy_term(ui);
    return s;
  }
  Vector prox_conj(double tau, std::span<const double> u) const override {
    require_dim(u, n_, "log_sum_exp");
    return log_sum_exp_prox_conj(tau, u).p;
  }
  Vector project_dom_conj(std::span<const double> u) const override {
    require_dim(u, n_, "log_sum_exp");
    return project_simplex(u);
  }
  std::optional<ExtReal> recession(std::span<const double> x) const override {
    require_dim(x, n_, "log_sum_exp");
    return ExtReal(*std::max_element(x.begin(), x.end()));
  }

 private:
  std::size_t n_;
};

class NestedPerspective final : public BaseFunction {
 public:
  NestedPerspective(FunctionPtr inner, SolverConfig cfg) : inner_(std::move(inner)), cfg_(cfg) {}

  std::size_t dim() const override { return inner_->dim() + 1; }
  std::string name() const override { return "nested_perspective(" + inner_->name() + ")"; }
  int perspective_depth() const override { return inner_->perspective_depth() + 1; }

  ExtReal eval_primal(std::span<const double> x) const override {
    require_dim(x, dim(), "nested_perspective");
    return perspective_value(*inner_, x.first(inner_->dim()), x.back());
  }
  ExtReal conj_eval(std::span<const double> u) const override {
    require_dim(u, dim(), "nested_perspective");
    const double s = u.back();
    const ExtReal lhs = ExtReal(s) + inner_->conj_eval(u.first(inner_->dim()));
    if (lhs.is_infinite()) return lhs;
    return lhs.value() <= kConstraintTol * std::max(1.0, std::abs(s)) ? ExtReal(0.0) : ExtReal::infinity();
  }
  Vector prox_conj(double tau, std::span<const double> u) const override {
    require_tau(tau, "nested_perspective");
    return project_dom_conj(u);
  }
  Vector project_dom_conj(std::span<const double> u) const override {
    require_dim(u, dim(), "nested_perspective");
    // P_C = Id - prox_{g~}
    const std::size_t n = inner_->dim();
    const ProxQuery q{inner_, 1.0, Vector(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n)), u.back()};
    const ProxResult r = prox_perspective(q, cfg_);
    Vector c(u.begin(), u.end());
    for (std::size_t i = 0; i < n; ++i) c[i] -= r.p[i];
    c[n] -= r.mu;
    return c;
  }
  std::optional<ExtReal> recession(std::span<const double> x) const override {
    // g~ is positively homogeneous and lsc, so it is its own recession function.
    return eval_primal(x);
  }

 private:
  FunctionPtr inner_;
  SolverConfig cfg_;
};

}  // namespace

FunctionPtr quadratic_ops(std::size_t n) {
  if (n < 1) throw InvalidArgument("quadratic_ops: n must be >= 1");
  return std::make_shared<Quadratic>(n);
}

FunctionPtr capped_burg_ops() { return std::make_shared<CappedBurg>(); }

FunctionPtr exp_sum_ops(std::size_t n) {
  if (n < 1) throw InvalidArgument("exp_sum_ops: n must be >= 1");
  return std::make_shared<ExpSum>(n);
}

FunctionPtr log_sum_exp_ops(std::size_t n) {
  if (n < 2) throw InvalidArgument("log_sum_exp_ops: n must be >= 2");
  return std::make_shared<LogSumExp>(n);
}

FunctionPtr nested_perspective_ops(FunctionPtr inner, const SolverConfig& cfg, int max_depth) {
  if (!inner) throw InvalidArgument("nested_perspective_ops: inner function is null");
  cfg.validate();
  // One level for the wrapper itself and one for the perspective the engine applies on top.
  const int depth = inner->perspective_depth() + 2;
  if (depth > max_depth)
    throw NestingTooDeep("nested_perspective_ops: perspective depth " + std::to_string(depth) +
                         " exceeds the limit " + std::to_string(max_depth));
  return std::make_shared<NestedPerspective>(std::move(inner), cfg);
}

SimplexEntropyProx log_sum_exp_prox_conj(double tau, std::span<const double> y, const SolverConfig& cfg) {
  require_tau(tau, "log_sum_exp");
  const std::size_t n = y.size();
  if (n < 2) throw InvalidArgument("log_sum_exp: n must be >= 2");

  // The stationarity system p_i = tau W0((1/tau) e^{y_i/tau - 1 - lambda}), sum p = 1
  // is solved for theta = tau (1 + lambda + ln tau), which keeps every quantity on
  // the scale of y even when tau is tiny: p_i(theta) = tau W0(e^{(y_i - theta)/tau}).
  auto coords = [&](double theta, Vector& w) {
    for (std::size_t i = 0; i < n; ++i) w[i] = lambert_w0_exp((y[i] - theta) / tau);
  };
  Vector w(n);
  const ScalarFn deficit = [&](double theta) {
    coords(theta, w);
    return 1.0 - tau * std::accumulate(w.begin(), w.end(), 0.0);
  };
  const ScalarFn slope = [&](double theta) {
    coords(theta, w);
    double s = 0.0;
    for (double wi : w) s += wi / (1.0 + wi);
    return s;
  };

  // At lo the largest coordinate alone equals 1; at hi every coordinate is <= 1/n.
  const double ymax = *std::max_element(y.begin(), y.end());
  const double dn = static_cast<double>(n);
  double lo = ymax - 1.0 + tau * std::log(tau);
  double hi = ymax - 1.0 / dn + tau * std::log(dn * tau);
  lo -= 1e-12 * (1.0 + std::abs(lo));
  hi += 1e-12 * (1.0 + std::abs(hi));

  // Sum of n terms; stop near rounding level so symmetric inputs land on 1/n.
  SolverConfig inner = cfg;
  inner.abs_tol = std::min(cfg.abs_tol, 1e-15);
  inner.rel_tol = std::min(cfg.rel_tol, 1e-16);
  const RootResult root = bisect_monotone(deficit, Bracket{lo, ExtReal(hi)}, inner, slope);
  coords(root.root, w);
  SimplexEntropyProx out;
  out.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.p[i] = tau * w[i];
  out.iterations = root.iterations;
  return out;
}

FunctionPtr make_function(const FunctionSpec& spec, const SolverConfig& cfg, int max_depth) {
  struct Builder {
    const SolverConfig& cfg;
    int max_depth;
    FunctionPtr operator()(const QuadraticSpec& s) const { return quadratic_ops(s.n); }
    FunctionPtr operator()(const CappedBurgSpec&) const { return capped_burg_ops(); }
    FunctionPtr operator()(const ExpSumSpec& s) const { return exp_sum_ops(s.n); }
    FunctionPtr operator()(const LogSumExpSpec& s) const { return log_sum_exp_ops(s.n); }
    FunctionPtr operator()(const NestedPerspectiveSpec& s) const {
      if (!s.inner) throw InvalidArgument("make_function: nested perspective without inner spec");
      return nested_perspective_ops(make_function(*s.inner, cfg, max_depth), cfg, max_depth);
    }
  };
  return std::visit(Builder{cfg, max_depth}, spec.kind);
}

}  // namespace pprox
