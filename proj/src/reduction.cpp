#include "rforge/reduction.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "rforge/verify.hpp"

namespace rforge {

ScalarFunction log_derivative(const ScalarFunction& phi, SignConvention sign,
                              const Window& w) {
  double peak = 0.0;
  for (double x : sample_domain(phi.domain(), 64, w)) {
    peak = std::max(peak, std::abs(phi(x)));
  }
  if (peak < 1e-150) {
    throw DegenerateInput("function vanishes over the window");
  }
  Domain signDomain = restrict_to_sign_intervals(phi, w);
  if (signDomain.empty()) {
    throw DegenerateInput("no sign interval survives the zero scan");
  }
  ScalarFunction ratio = derivative(phi) / phi;
  if (sign == SignConvention::Minus) ratio = -ratio;
  return ratio.withDomain(std::move(signDomain));
}

RiccatiEquation schrodinger_to_riccati(const SchrodingerProblem& p,
                                       SignConvention sign) {
  const Domain& d = p.potential.domain();
  if (sign == SignConvention::Plus) {
    return {constant(-1.0, d), constant(0.0, d), p.potential - p.energy};
  }
  return {constant(1.0, d), constant(0.0, d), p.energy - p.potential};
}

ScalarFunction reconstruct_wavefunction(const ScalarFunction& w, double x0) {
  const Interval* piece = w.domain().find(x0);
  if (piece == nullptr) {
    throw DomainError("anchor point lies outside the domain");
  }
  ScalarFunction wLocal = w.withDomain(Domain(*piece));
  auto wp = std::make_shared<ScalarFunction>(wLocal);

  ScalarFunction::Eval eval = [wp, x0](double x) {
    if (x == x0) return 1.0;
    QuadratureSpec spec;
    spec.absTol = 1e-12;
    spec.relTol = 1e-12;
    spec.window = Interval(std::min(x, x0), std::max(x, x0));
    double integral = integrate(*wp, spec);
    return std::exp(x > x0 ? integral : -integral);
  };

  Domain dom(*piece);
  // phi'' = (w' + w^2) phi, phi' = w phi; both exact given the chain of w.
  ScalarFunction second(
      [wp, eval](double x) {
        return (wp->derivativeAt(x) + (*wp)(x) * (*wp)(x)) * eval(x);
      },
      dom);
  ScalarFunction first([wp, eval](double x) { return (*wp)(x)*eval(x); },
                       std::move(second), dom);
  return {eval, std::move(first), dom};
}

}  // namespace rforge
