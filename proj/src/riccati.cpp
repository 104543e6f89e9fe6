#include "rforge/riccati.hpp"

#include <cmath>
#include <utility>

#include "rforge/errors.hpp"

namespace rforge {
namespace {

constexpr double kDetTol = 1e-9;
constexpr int kDetSamples = 200;

// exp(g) with two exact derivative levels taken from g's attached chain.
ScalarFunction exp_of(const ScalarFunction& g) {
  const ScalarFunction dg = derivative(g);
  const ScalarFunction ddg = derivative(dg);
  Domain d = g.domain();
  ScalarFunction second(
      [g, dg, ddg](double x) {
        const double d1 = dg(x);
        return (ddg(x) + d1 * d1) * std::exp(g(x));
      },
      d);
  ScalarFunction first([g, dg](double x) { return dg(x) * std::exp(g(x)); },
                       second, d);
  return ScalarFunction([g](double x) { return std::exp(g(x)); }, first, d);
}

}  // namespace

Domain RiccatiEquation::domain() const {
  return intersect(intersect(a2.domain(), a1.domain()), a0.domain());
}

GaugeCurve::GaugeCurve(ScalarFunction alpha, ScalarFunction beta,
                       ScalarFunction gamma, ScalarFunction delta)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)),
      delta_(std::move(delta)) {
  domain_ = intersect(intersect(alpha_.domain(), beta_.domain()),
                      intersect(gamma_.domain(), delta_.domain()));
  if (domain_.empty()) {
    throw DomainError("curve entries have no common domain");
  }
  for (double x : sample_domain(domain_, kDetSamples)) {
    const double det = alpha_(x) * delta_(x) - beta_(x) * gamma_(x);
    if (!(std::abs(det - 1.0) <= kDetTol)) {
      throw DegenerateInput("curve determinant deviates from one");
    }
  }
}

GaugeCurve compose(const GaugeCurve& first, const GaugeCurve& second) {
  return GaugeCurve(
      first.alpha() * second.alpha() + first.beta() * second.gamma(),
      first.alpha() * second.beta() + first.beta() * second.delta(),
      first.gamma() * second.alpha() + first.delta() * second.gamma(),
      first.gamma() * second.beta() + first.delta() * second.delta());
}

GaugeCurve inverse(const GaugeCurve& a) {
  return GaugeCurve(a.delta(), -a.beta(), -a.gamma(), a.alpha());
}

ScalarFunction act_on_solution(const GaugeCurve& a, const ScalarFunction& y,
                               double guard, const Window& w) {
  ScalarFunction den = a.gamma() * y + a.delta();
  ScalarFunction result = (a.alpha() * y + a.beta()) / den;
  const std::vector<double> zeros = find_zeros(den, w);
  if (zeros.empty()) return result;
  Domain cut = excise(result.domain(), zeros, guard);
  if (cut.empty()) {
    throw DomainError("denominator guard bands exhaust the domain");
  }
  return result.withDomain(std::move(cut));
}

RiccatiEquation act_on_coefficients(const GaugeCurve& a,
                                    const RiccatiEquation& eq) {
  const ScalarFunction& al = a.alpha();
  const ScalarFunction& be = a.beta();
  const ScalarFunction& ga = a.gamma();
  const ScalarFunction& de = a.delta();
  const ScalarFunction dal = derivative(al);
  const ScalarFunction dbe = derivative(be);
  const ScalarFunction dga = derivative(ga);
  const ScalarFunction dde = derivative(de);

  ScalarFunction n2 =
      de * de * eq.a2 - de * ga * eq.a1 + ga * ga * eq.a0 + ga * dde - de * dga;
  ScalarFunction n1 = -2.0 * (be * de * eq.a2) +
                      (al * de + be * ga) * eq.a1 - 2.0 * (al * ga * eq.a0) +
                      de * dal - al * dde + be * dga - ga * dbe;
  ScalarFunction n0 =
      be * be * eq.a2 - al * be * eq.a1 + al * al * eq.a0 + al * dbe - be * dal;
  return RiccatiEquation{std::move(n2), std::move(n1), std::move(n0)};
}

CoefficientTriple representation_B(const GaugeCurve& a,
                                   const CoefficientTriple& c, double x) {
  const double al = a.alpha()(x);
  const double be = a.beta()(x);
  const double ga = a.gamma()(x);
  const double de = a.delta()(x);
  return CoefficientTriple{
      de * de * c.c2 - de * ga * c.c1 + ga * ga * c.c0,
      -2.0 * be * de * c.c2 + (al * de + be * ga) * c.c1 -
          2.0 * al * ga * c.c0,
      be * be * c.c2 - al * be * c.c1 + al * al * c.c0};
}

CoefficientTriple cocycle_theta(const GaugeCurve& a, double x) {
  const double al = a.alpha()(x);
  const double be = a.beta()(x);
  const double ga = a.gamma()(x);
  const double de = a.delta()(x);
  const double dal = a.alpha().derivativeAt(x);
  const double dbe = a.beta().derivativeAt(x);
  const double dga = a.gamma().derivativeAt(x);
  const double dde = a.delta().derivativeAt(x);
  return CoefficientTriple{ga * dde - de * dga,
                           de * dal - al * dde + be * dga - ga * dbe,
                           al * dbe - be * dal};
}

double residual(const RiccatiEquation& eq, const ScalarFunction& y, double x) {
  const double yx = y(x);
  return y.derivativeAt(x) -
         (eq.a2(x) * yx * yx + eq.a1(x) * yx + eq.a0(x));
}

double riccati_residual(const RiccatiEquation& eq, const ScalarFunction& y,
                        int gridSize, const Window& w) {
  if (gridSize < 2) throw ArgumentError("residual grid needs gridSize >= 2");
  Domain d = intersect(eq.domain(), y.domain());
  if (d.empty()) {
    throw DomainError("equation and solution domains do not overlap");
  }
  double worst = 0.0;
  for (double x : sample_domain(d, gridSize, w)) {
    const double yx = y(x);
    const double t2 = eq.a2(x) * yx * yx;
    const double t1 = eq.a1(x) * yx;
    const double t0 = eq.a0(x);
    const double r = y.derivativeAt(x) - (t2 + t1 + t0);
    const double rel =
        std::abs(r) / (1.0 + std::abs(t2) + std::abs(t1) + std::abs(t0));
    if (rel > worst) worst = rel;
  }
  return worst;
}

ScalarFunction random_smooth_function(std::mt19937& rng, const Interval& iv) {
  std::uniform_real_distribution<double> amp(-0.8, 0.8);
  std::uniform_real_distribution<double> freq(0.3, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  const double c0 = amp(rng);
  const double c1 = amp(rng);
  const double c2 = amp(rng);
  const double c3 = amp(rng);
  const double w1 = freq(rng);
  const double w2 = freq(rng);
  const double p1 = phase(rng);
  const double p2 = phase(rng);

  Domain d(iv);
  ScalarFunction second(
      [=](double x) {
        const double u = 1.0 + x * x;
        return -c1 * w1 * w1 * std::sin(w1 * x + p1) -
               c2 * w2 * w2 * std::cos(w2 * x + p2) +
               c3 * (2.0 * x * x * x - 6.0 * x) / (u * u * u);
      },
      d);
  ScalarFunction first(
      [=](double x) {
        const double u = 1.0 + x * x;
        return c1 * w1 * std::cos(w1 * x + p1) -
               c2 * w2 * std::sin(w2 * x + p2) +
               c3 * (1.0 - x * x) / (u * u);
      },
      second, d);
  return ScalarFunction(
      [=](double x) {
        return c0 + c1 * std::sin(w1 * x + p1) + c2 * std::cos(w2 * x + p2) +
               c3 * x / (1.0 + x * x);
      },
      first, d);
}

GaugeCurve random_gauge_curve(std::mt19937& rng, const Interval& iv) {
  const ScalarFunction g1 = random_smooth_function(rng, iv);
  const ScalarFunction g2 = random_smooth_function(rng, iv);
  const ScalarFunction g3 = random_smooth_function(rng, iv);
  const ScalarFunction e = exp_of(g2);
  const ScalarFunction einv = 1.0 / e;
  // Lower * diagonal * upper, so the determinant collapses to one
  // identically rather than to a product of nearly cancelling terms.
  return GaugeCurve(e, g3 * e, g1 * e, g1 * g3 * e + einv);
}

}  // namespace rforge
