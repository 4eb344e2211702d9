#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "pprox/base_function.hpp"

namespace pprox {

/// Brute-force search parameters over the perspective's scale variable nu.
struct OracleConfig {
  /// Search ceiling; defaults to threshold + 5 (finite threshold) or 10 max(1, |eta|).
  std::optional<double> nu_max;
  double nu_step = 1e-4;
  int refine_iters = 60;
  /// Evaluate every grid point instead of the discrete convex search.
  bool exhaustive = false;

  void validate() const;
};

struct OracleResult {
  Vector p;
  double mu = 0.0;
  double objective = 0.0;           ///< F at (p, mu)
  double grid_min_objective = 0.0;  ///< smallest F over the nu grid
  double nu_max = 0.0;              ///< ceiling actually searched
  std::size_t grid_points = 0;      ///< points on the grid [0, nu_max]
  std::size_t evaluations = 0;
  bool recession_approximate = false;
};

/// eta f(x/eta), the recession value at eta = 0, +inf for eta < 0.
ExtReal perspective_eval(const BaseFunction& f, std::span<const double> x, double eta);

/// F(p, mu) = gamma f~(p, mu) + |p - x|^2/2 + (mu - eta)^2/2, the prox objective.
double prox_objective(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                      std::span<const double> p, double mu);

/// Minimizer of F found by searching nu alone.
///
/// For fixed nu > 0 the minimizing p is nu prox_{(gamma/nu) f}(x/nu), obtained
/// through the Moreau identity from prox_conj; at nu = 0 it is
/// x - gamma P_{cl dom f*}(x/gamma). F restricted to the grid is searched for its
/// minimum (F is 1-strongly convex in nu, so the discrete search finds the
/// same point as a full scan), and the best grid point is refined by golden
/// section on its two neighbouring cells. The ceiling doubles if the minimum
/// lands on it.
OracleResult brute_prox(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                        const OracleConfig& cfg = {});

/// Residuals of the prox characterization at a candidate (p, mu); both vanish
/// exactly when (p, mu) = prox_{gamma f~}(x, eta).
Residuals fenchel_young_residual(const BaseFunction& f, double gamma, std::span<const double> x, double eta,
                                 std::span<const double> p, double mu);

}  // namespace pprox
