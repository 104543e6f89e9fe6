#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rforge/fnspace.hpp"
#include "rforge/potentials.hpp"

using namespace rforge;

namespace {

Domain halfline() { return Domain(Interval(0.0, kInf)); }

// Central difference at the step the library documents for its fallback.
double central_diff(const std::function<double(double)>& f, double x) {
  double h = std::max(1e-6, 1e-6 * std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("fnspace") {

TEST_CASE("interval and domain basics") {
  Interval iv(0.0, 2.0);
  CHECK(iv.contains(1.0));
  CHECK_FALSE(iv.contains(0.0));  // open ends
  CHECK_FALSE(iv.contains(2.0));
  CHECK_THROWS_AS(Interval(2.0, 2.0), DomainError);
  CHECK_THROWS_AS(Interval(3.0, 1.0), DomainError);

  Domain d(std::vector<Interval>{Interval(0.0, 1.0), Interval(1.0, kInf)});
  CHECK(d.intervals().size() == 2);
  CHECK(d.contains(0.5));
  CHECK_FALSE(d.contains(1.0));
  CHECK(d.find(2.0) != nullptr);
}

TEST_CASE("make_function with an attached derivative") {
  auto f = make_function([](double x) { return x * x; },
                         [](double x) { return 2.0 * x; }, halfline());
  CHECK(f.hasAnalyticDerivative());
  CHECK(f.derivativeAt(1.0) == doctest::Approx(2.0));
}

TEST_CASE("finite-difference fallback: 1/x") {
  auto f = make_function([](double x) { return 1.0 / x; }, halfline());
  CHECK_FALSE(f.hasAnalyticDerivative());
  CHECK(std::abs(f.derivativeAt(2.0) - (-0.25)) < 1e-8);
}

TEST_CASE("finite-difference fallback: gaussian profile") {
  auto f = make_function([](double x) { return std::exp(-x * x / 4.0); },
                         halfline());
  double expect = -0.25 * std::exp(-1.0 / 16.0);
  CHECK(std::abs(f.derivativeAt(0.5) - expect) < 1e-8);
}

TEST_CASE("empty domain is rejected") {
  CHECK_THROWS_AS(make_function([](double x) { return x; }, Domain()),
                  DomainError);
}

TEST_CASE("derivative of the identity is the constant one") {
  auto one = derivative(identity_fn(halfline()));
  for (double x : {0.3, 1.0, 7.5, 42.0}) CHECK(one(x) == doctest::Approx(1.0));
}

TEST_CASE("second application of derivative") {
  // Raw evaluator only: both derivative levels fall back to stencils.
  auto cube = make_function([](double x) { return x * x * x; }, halfline());
  double dd = derivative(derivative(cube))(2.0);
  CHECK(std::abs(dd - 12.0) < 2e-3);

  // One analytic level tightens the second application by orders of magnitude.
  auto cube2 = make_function([](double x) { return x * x * x; },
                             [](double x) { return 3.0 * x * x; }, halfline());
  double dd2 = derivative(derivative(cube2))(2.0);
  CHECK(std::abs(dd2 - 12.0) < 1e-6);
}

TEST_CASE("derivative of the example gauge function") {
  ExampleParams p;
  p.l = -1.25;
  p.b = 2.0;
  GammaGauge gauge = example_gauge(ExampleId::Osc71, p);
  const ScalarFunction& g = gauge.gamma();
  double l = p.l, b = p.b;
  auto closed = [l, b](double x) {
    return 1.0 / std::sqrt(b - (2.0 * l + 2.0) / (x * x));
  };
  double fd = central_diff(closed, 1.0);
  CHECK(std::abs(g.derivativeAt(1.0) - fd) < 1e-6);
}

TEST_CASE("restrict_to_sign_intervals splits a simple root") {
  auto f = make_function([](double x) { return x - 1.0; }, halfline());
  Domain d = restrict_to_sign_intervals(f);
  REQUIRE(d.intervals().size() == 2);
  CHECK(d.intervals()[0].lo == doctest::Approx(0.0));
  CHECK(d.intervals()[0].hi == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.intervals()[1].lo == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.intervals()[1].hi == kInf);
}

TEST_CASE("nodeless ground state keeps its full domain") {
  OscillatorParams p;
  p.l = 0.0;
  p.b = 2.0;
  auto z0 = oscillator_eigenpair(p, 0);
  Domain d = restrict_to_sign_intervals(z0.wavefunction);
  REQUIRE(d.intervals().size() == 1);
  Interval hull = z0.wavefunction.domain().hull();
  CHECK(d.intervals()[0].lo == doctest::Approx(hull.lo));
  CHECK(d.intervals()[0].hi == doctest::Approx(hull.hi));
}

TEST_CASE("first excited state splits at the Laguerre root") {
  OscillatorParams p;
  p.l = 0.0;
  p.b = 2.0;
  auto z1 = oscillator_eigenpair(p, 1);
  Domain d = restrict_to_sign_intervals(z1.wavefunction);
  REQUIRE(d.intervals().size() == 2);
  // L_1^{l+1/2}(b x^2/2) = l + 3/2 - b x^2/2 vanishes at x = sqrt((2l+3)/b).
  double root = std::sqrt((2.0 * p.l + 3.0) / p.b);
  CHECK(d.intervals()[0].hi == doctest::Approx(root).epsilon(1e-9));
  CHECK(d.intervals()[1].lo == doctest::Approx(root).epsilon(1e-9));
}

TEST_CASE("analytic and finite-difference derivatives agree at random points") {
  ExampleParams gp;
  gp.l = -1.25;
  gp.b = 2.0;
  OscillatorParams op;
  op.l = 0.0;
  op.b = 2.0;
  auto z0 = oscillator_eigenpair(op, 0).wavefunction;
  auto z1 = oscillator_eigenpair(op, 1).wavefunction;

  std::vector<ScalarFunction> fns;
  fns.push_back(example_gauge(ExampleId::Osc71, gp).gamma());
  fns.push_back(z0);
  fns.push_back(z1);
  fns.push_back(z0 * z1 + 2.0 * z0);   // combinators propagate derivatives
  fns.push_back(z1 / (1.0 + z0 * z0));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.05, 8.0);
  for (const auto& f : fns) {
    REQUIRE(f.hasAnalyticDerivative());
    for (int i = 0; i < 100; ++i) {
      double x = u(rng);
      double a = f.derivativeAt(x);
      double fd = central_diff([&f](double t) { return f(t); }, x);
      CHECK(std::abs(a - fd) <= 1e-6 + 1e-6 * std::abs(a));
    }
  }
}

TEST_CASE("sign intervals never contain a sign change") {
  OscillatorParams p;
  p.l = 0.4;
  p.b = 2.0;
  for (int k : {1, 2, 3}) {
    auto z = oscillator_eigenpair(p, k).wavefunction;
    Domain d = restrict_to_sign_intervals(z);
    CHECK(d.intervals().size() == static_cast<size_t>(k + 1));
    for (const Interval& iv : d.intervals()) {
      std::vector<double> xs = sample_interval(iv, 1000);
      REQUIRE(!xs.empty());
      double s0 = z(xs.front()) > 0 ? 1.0 : -1.0;
      for (double x : xs) CHECK(s0 * z(x) > 0.0);
    }
  }
}

TEST_CASE("excise removes guard bands") {
  Domain d = excise(halfline(), {2.0}, 1e-3);
  REQUIRE(d.intervals().size() == 2);
  CHECK_FALSE(d.contains(2.0));
  CHECK_FALSE(d.contains(2.0 + 0.5e-3));
  CHECK(d.contains(2.0 + 2e-3));
}

TEST_CASE("sample grids stay interior") {
  Interval iv(0.0, kInf);
  std::vector<double> xs = sample_interval(iv, 200);
  CHECK(xs.size() == 200);
  for (double x : xs) {
    CHECK(x >= 1e-6);
    CHECK(x <= 60.0);
  }
  CHECK(std::is_sorted(xs.begin(), xs.end()));
}

}  // TEST_SUITE
