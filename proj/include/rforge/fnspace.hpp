#pragma once

// Numerically evaluable real functions on unions of open intervals.
//
// ScalarFunction is an immutable evaluator: a map real -> real, an optional
// analytic derivative (itself a ScalarFunction, so chains of closed-form
// derivatives can be attached), and a domain. When no analytic derivative is
// present, differentiation falls back to central differences with
// h = max(1e-6, 1e-6*|x|), switching to second-order one-sided stencils near
// interval boundaries. Arithmetic combinators propagate derivatives by the
// usual calculus rules, so composite evaluators keep one analytic level and
// degrade gracefully to finite differences below that.

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "rforge/errors.hpp"

namespace rforge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluation window for operations that must sample a half-line: scans and
// sweeps stay inside [loFloor, hiCap] unless the interval itself is tighter.
struct Window {
  double loFloor = 1e-6;
  double hiCap = 60.0;
};

struct Interval {
  double lo = 0.0;
  double hi = kInf;

  Interval() = default;
  Interval(double lo_, double hi_);

  bool contains(double x) const { return x > lo && x < hi; }
  bool boundedAbove() const { return hi < kInf; }
  double span() const { return hi - lo; }
};

class Domain {
 public:
  Domain() = default;
  Domain(Interval iv) : ivs_{iv} {}
  explicit Domain(std::vector<Interval> ivs);

  bool empty() const { return ivs_.empty(); }
  const std::vector<Interval>& intervals() const { return ivs_; }
  bool contains(double x) const { return find(x) != nullptr; }
  const Interval* find(double x) const;
  Interval hull() const;

 private:
  std::vector<Interval> ivs_;
};

Domain intersect(const Domain& a, const Domain& b);

// Remove a closed guard band [p-guard, p+guard] around each point.
Domain excise(const Domain& d, const std::vector<double>& points, double guard);

class ScalarFunction {
 public:
  using Eval = std::function<double(double)>;

  ScalarFunction(Eval eval, Domain domain);
  ScalarFunction(Eval eval, ScalarFunction deriv, Domain domain);

  double operator()(double x) const { return eval_(x); }
  double derivativeAt(double x) const;
  bool hasAnalyticDerivative() const { return deriv_ != nullptr; }

  const Domain& domain() const { return domain_; }
  ScalarFunction withDomain(Domain d) const;
  ScalarFunction restrictedTo(const Domain& d) const;

  friend ScalarFunction derivative(const ScalarFunction& f);

 private:
  Eval eval_;
  std::shared_ptr<const ScalarFunction> deriv_;
  Domain domain_;
};

ScalarFunction make_function(ScalarFunction::Eval eval, Domain domain);
ScalarFunction make_function(ScalarFunction::Eval eval, ScalarFunction::Eval deriv,
                             Domain domain);

// f' as a ScalarFunction on the same domain: the attached analytic derivative
// when present, otherwise finite differences of eval. Apply twice for f''.
ScalarFunction derivative(const ScalarFunction& f);

// Five-point second-derivative stencil at step h = 1e-4*max(1,|x|), clamped
// near interval boundaries. Used for Schrodinger-form residuals.
double second_derivative(const ScalarFunction& f, double x);

// Roots of f inside its domain, located by a scan at resolution 1e-3 of the
// (window-capped) interval span plus a log-spaced scan on wide positive
// intervals, each refined by bisection to 1e-12 relative.
std::vector<double> find_zeros(const ScalarFunction& f, const Window& w = {});

// Sub-domain on which f keeps a fixed sign: the domain split at every
// detected root. Boundaries are open, the roots themselves are excluded.
Domain restrict_to_sign_intervals(const ScalarFunction& f, const Window& w = {});

// Deterministic interior sample grids (log-spaced on wide positive ranges).
std::vector<double> sample_interval(const Interval& iv, int n, const Window& w = {});
std::vector<double> sample_domain(const Domain& d, int n, const Window& w = {});

// Constants carry exact zero derivatives at every order.
ScalarFunction constant(double c, Domain d);
ScalarFunction identity_fn(Domain d);

ScalarFunction operator+(const ScalarFunction& f, const ScalarFunction& g);
ScalarFunction operator-(const ScalarFunction& f, const ScalarFunction& g);
ScalarFunction operator*(const ScalarFunction& f, const ScalarFunction& g);
ScalarFunction operator/(const ScalarFunction& f, const ScalarFunction& g);
ScalarFunction operator-(const ScalarFunction& f);

ScalarFunction operator+(const ScalarFunction& f, double c);
ScalarFunction operator+(double c, const ScalarFunction& f);
ScalarFunction operator-(const ScalarFunction& f, double c);
ScalarFunction operator-(double c, const ScalarFunction& f);
ScalarFunction operator*(const ScalarFunction& f, double c);
ScalarFunction operator*(double c, const ScalarFunction& f);
ScalarFunction operator/(const ScalarFunction& f, double c);
ScalarFunction operator/(double c, const ScalarFunction& f);

}  // namespace rforge
