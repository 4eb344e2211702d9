#include "pprox/base_function.hpp"

#include <algorithm>
#include <cmath>

#include "pprox/errors.hpp"

namespace pprox {

RecessionValue recession_value(const BaseFunction& f, std::span<const double> x) {
  if (auto closed = f.recession(x)) return {*closed, false};

  double best = -std::numeric_limits<double>::infinity();
  Vector scaled(x.size());
  for (int k = 0; k <= 30; ++k) {
    const double K = std::ldexp(1.0, k);
    std::transform(x.begin(), x.end(), scaled.begin(), [K](double xi) { return K * xi; });
    best = std::max(best, dot(x, f.project_dom_conj(scaled)));
  }
  return {ExtReal(best), true};
}

ExtReal perspective_value(const BaseFunction& f, std::span<const double> x, double eta) {
  if (x.size() != f.dim()) throw InvalidArgument("perspective_value: dimension mismatch");
  if (eta < 0.0) return ExtReal::infinity();
  if (eta == 0.0) return recession_value(f, x).value;
  Vector z(x.size());
  std::transform(x.begin(), x.end(), z.begin(), [eta](double xi) { return xi / eta; });
  const ExtReal fz = f.eval_primal(z);
  if (fz.is_infinite()) return fz;
  return ExtReal(eta * fz.value());
}

Residuals characterization_residuals(const BaseFunction& f, double gamma, std::span<const double> x,
                                     double eta, std::span<const double> p, double mu) {
  if (x.size() != f.dim() || p.size() != f.dim())
    throw InvalidArgument("characterization_residuals: dimension mismatch");
  if (!(gamma > 0.0)) throw InvalidArgument("characterization_residuals: gamma must be > 0");

  Vector u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] - p[i]) / gamma;
  const Vector u_proj = f.project_dom_conj(u);

  Residuals r;
  const ExtReal slack = ExtReal((eta - mu) / gamma) + f.conj_eval(u_proj);
  r.feasibility = std::max(0.0, slack.to_double()) + distance(u, u_proj);

  const ExtReal persp = perspective_value(f, p, mu);
  if (persp.is_infinite()) {
    r.equality = std::numeric_limits<double>::infinity();
  } else {
    r.equality = std::abs(persp.value() - dot(p, u) - mu * (eta - mu) / gamma);
  }
  return r;
}

}  // namespace pprox
