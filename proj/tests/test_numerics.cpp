#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pprox/errors.hpp"
#include "pprox/ext_real.hpp"
#include "pprox/numerics.hpp"

using namespace pprox;

// Frozen from oracles::newton on t^3 - 2 and w e^w - 1, and from the fixed
// point w <- 100 - ln w; each is recomputed below as well.
constexpr double kCbrt2 = 1.2599210498948732;
constexpr double kOmega = 0.56714329040978387;
constexpr double kW100 = 95.441486645575832;

TEST_CASE("ext_real") {
  const ExtReal inf = ExtReal::infinity();
  CHECK(inf.is_infinite());
  CHECK((ExtReal(1.0) + inf).is_infinite());
  CHECK(ExtReal(2.0).scaled(3.0) == 6.0);
  CHECK(inf.scaled(0.5).is_infinite());
  CHECK(ExtReal(1.0) < inf);
  CHECK(inf.to_string() == "inf");
  CHECK_THROWS_AS(ExtReal(NAN), DomainError);
  CHECK_THROWS_AS(ExtReal(-INFINITY), DomainError);
  CHECK_THROWS_AS(static_cast<void>(inf.value()), DomainError);
  CHECK_THROWS(static_cast<void>(ExtReal(1.0).scaled(-1.0)));
}

TEST_CASE("bisect_monotone examples") {
  CHECK(bisect_monotone([](double t) { return t - 1; }, {0.0, ExtReal(2.0)}).root == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(bisect_monotone([](double t) { return t; }, {-1.0, ExtReal(1.0)}).root) <= 1e-12);

  const long double oracle = oracles::newton([](long double t) { return t * t * t - 2; },
                                             [](long double t) { return 3 * t * t; }, 1.5L);
  CHECK(static_cast<double>(oracle) == doctest::Approx(kCbrt2).epsilon(1e-16));
  const double plain = bisect_monotone([](double t) { return t * t * t - 2; }, {1.0, ExtReal(2.0)}).root;
  const double newton = bisect_monotone([](double t) { return t * t * t - 2; }, {1.0, ExtReal(2.0)}, {},
                                        [](double t) { return 3 * t * t; }).root;
  CHECK(std::abs(plain - kCbrt2) <= 1e-12);
  CHECK(std::abs(newton - kCbrt2) <= 1e-12);
}

TEST_CASE("bisect_monotone endpoints and expansion") {
  // Root exactly on an endpoint comes back bit-exactly.
  CHECK(bisect_monotone([](double t) { return t - 0.3; }, {0.0, ExtReal(0.3)}).root == 0.3);
  CHECK(bisect_monotone([](double t) { return t - 0.3; }, {0.3, ExtReal(5.0)}).root == 0.3);
  const RootResult r = bisect_monotone([](double t) { return t - 1000.0; }, {0.0, ExtReal::infinity()});
  CHECK(std::abs(r.root - 1000.0) <= 1e-9);
  CHECK(r.bracket.hi.is_finite());
}

TEST_CASE("bisect_monotone errors") {
  CHECK_THROWS_AS(bisect_monotone([](double t) { return t + 10; }, {0.0, ExtReal(1.0)}), NoSignChange);
  CHECK_THROWS_AS(bisect_monotone([](double) { return NAN; }, {0.0, ExtReal(1.0)}), NonFinite);
  SolverConfig bad;
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("bisect_monotone recovers polynomial roots") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double root = u(rng);
    const int degree = 1 + 2 * (i % 3);  // odd powers are monotone
    auto g = [&](double t) { return std::pow(t - root, degree) + (t - root); };
    CHECK(std::abs(bisect_monotone(g, {-4.0, ExtReal(4.0)}).root - root) <= 1e-12);
  }
}

TEST_CASE("lambert_w0 examples") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  const long double omega = oracles::newton([](long double w) { return w * std::exp(w) - 1; },
                                            [](long double w) { return (1 + w) * std::exp(w); }, 0.5L);
  CHECK(static_cast<double>(omega) == doctest::Approx(kOmega).epsilon(1e-16));
  CHECK(lambert_w0(1.0) == doctest::Approx(kOmega).epsilon(1e-15));
  CHECK_THROWS_AS(lambert_w0(-0.1), DomainError);
}

TEST_CASE("lambert_w0_exp examples") {
  CHECK(lambert_w0_exp(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0_exp(0.0) == doctest::Approx(kOmega).epsilon(1e-15));
  long double w = 100;
  for (int i = 0; i < 200; ++i) w = 100 - std::log(w);
  CHECK(static_cast<double>(w) == doctest::Approx(kW100).epsilon(1e-15));
  CHECK(lambert_w0_exp(100.0) == doctest::Approx(kW100).epsilon(1e-15));
}

TEST_CASE("lambert residuals and monotonicity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uy(0.0, 1e6);
  std::uniform_real_distribution<double> uz(-30.0, 700.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = uy(rng);
    const double w = lambert_w0(y);
    CHECK(std::abs(w * std::exp(w) - y) <= 1e-12 * std::max(1.0, y));
    const double z = uz(rng);
    const double v = lambert_w0_exp(z);
    CHECK(std::abs(v + std::log(v) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
  double prev_w = -1.0, prev_v = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double w = lambert_w0(i * 50.0);
    const double v = lambert_w0_exp(-30.0 + i * 0.365);
    CHECK(w >= prev_w);
    CHECK(v >= prev_v);
    prev_w = w;
    prev_v = v;
  }
}

TEST_CASE("project_simplex examples") {
  CHECK(project_simplex(Vector{1.0, 0.0}) == Vector{1.0, 0.0});
  const Vector third = project_simplex(Vector{0.5, 0.5, 0.5});
  for (double t : third) CHECK(t == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(project_simplex(Vector{2.0, 0.0}) == oracles::simplex_by_enumeration({2.0, 0.0}));
  CHECK_THROWS_AS(project_simplex(Vector{}), EmptyInput);
}

TEST_CASE("project_simplex properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 5;
    Vector v(n);
    for (double& vi : v) vi = u(rng);
    const Vector p = project_simplex(v);
    double sum = 0;
    for (double pi : p) {
      CHECK(pi >= 0.0);
      sum += pi;
    }
    CHECK(std::abs(sum - 1) <= 1e-14);
    const std::vector<double> ref = oracles::simplex_by_enumeration(v);
    CHECK(distance(p, ref) <= 1e-12);

    if (i < 20) {
      const double d = distance(p, v);
      for (int k = 0; k < 10000; ++k) {
        Vector s(n);
        double tot = 0;
        for (double& si : s) tot += si = ex(rng);
        for (double& si : s) si /= tot;
        CHECK(d <= distance(s, v) + 1e-15);
      }
    }
  }
}
