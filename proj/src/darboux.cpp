#include "rforge/darboux.hpp"

#include <cmath>
#include <utility>

#include "rforge/errors.hpp"
#include "rforge/verify.hpp"

namespace rforge {
namespace {

constexpr double kInputTol = 1e-6;   // gate on precondition residuals
constexpr double kGuard = 1e-4;      // band excised around denominator zeros
constexpr int kReportGrid = 500;

double resolve_threshold(double threshold) {
  return threshold > 0.0 ? threshold : default_residual_threshold();
}

RiccatiEquation canonical_equation(const ScalarFunction& shift) {
  Domain d = shift.domain();
  return RiccatiEquation{constant(-1.0, d), constant(0.0, d), shift};
}

// Domain minus guard bands around the zeros of f.
Domain nonvanishing_domain(const ScalarFunction& f, const Window& w = {}) {
  const std::vector<double> zeros = find_zeros(f, w);
  if (zeros.empty()) return f.domain();
  Domain cut = excise(f.domain(), zeros, kGuard);
  if (cut.empty()) {
    throw DomainError("guard bands around denominator zeros exhaust the domain");
  }
  return cut;
}

}  // namespace

GammaGauge::GammaGauge(ScalarFunction gamma, const Window& w)
    : gamma_(std::move(gamma)) {
  if (!find_zeros(gamma_, w).empty()) {
    throw GaugeError("gauge function vanishes inside its domain");
  }
}

GaugeCurve backlund_element(const ScalarFunction& h, double a) {
  if (!(a > 0.0)) {
    throw OrderError("curve requires a positive energy gap");
  }
  const double s = 1.0 / std::sqrt(a);
  ScalarFunction diag = h * s;
  return GaugeCurve(diag, (a - h * h) * s, constant(-s, h.domain()), diag);
}

TransformReport finite_difference_backlund(const ScalarFunction& w_k,
                                           const ScalarFunction& w_l,
                                           double eps_k, double eps_l,
                                           double threshold) {
  if (!(eps_k < eps_l)) {
    throw OrderError("the first energy must lie strictly below the second");
  }

  // V is not passed in; recover it from each solution and demand agreement.
  ScalarFunction fromK = derivative(w_k) + w_k * w_k + eps_k;
  ScalarFunction fromL = derivative(w_l) + w_l * w_l + eps_l;
  Domain shared = intersect(w_k.domain(), w_l.domain());
  if (shared.empty()) throw DomainError("solution domains do not overlap");
  for (double x : sample_domain(shared, kReportGrid)) {
    const double vk = fromK(x);
    const double vl = fromL(x);
    if (std::abs(vk - vl) > kInputTol * (1.0 + std::abs(vk) + std::abs(vl))) {
      throw InvalidSolution("inputs do not solve a common potential");
    }
  }

  ScalarFunction diff = w_k - w_l;
  ScalarFunction out = -w_k - (eps_k - eps_l) / diff;
  ScalarFunction shift = w_k * w_k - derivative(w_k) + (eps_k - eps_l);
  Domain working =
      intersect(nonvanishing_domain(diff.withDomain(shared)), shift.domain());
  out = out.withDomain(working);

  TransformReport report{std::move(shift), std::move(out), 0.0, working, eps_l};
  report.maxResidual = riccati_residual(canonical_equation(report.newPotentialShift),
                                        report.newSolution, kReportGrid);
  if (report.maxResidual > resolve_threshold(threshold)) {
    throw ResidualError("transformed solution fails its target equation",
                        report.maxResidual);
  }
  return report;
}

TransformReport generalized_backlund(const ScalarFunction& w,
                                     const ScalarFunction& v,
                                     const GammaGauge& gauge,
                                     const ScalarFunction& V, double eps,
                                     double threshold) {
  const ScalarFunction& g = gauge.gamma();
  ScalarFunction invGammaSq = 1.0 / (g * g);

  if (riccati_residual(canonical_equation(V - eps), w, kReportGrid) >
      kInputTol) {
    throw InvalidSolution("first input does not solve the base equation");
  }
  if (riccati_residual(canonical_equation(V + invGammaSq - eps), v,
                       kReportGrid) > kInputTol) {
    throw InvalidSolution("second input does not solve the offset equation");
  }

  ScalarFunction diff = w - v;
  ScalarFunction dg = derivative(g);
  ScalarFunction out = -v - invGammaSq / diff + dg / g;
  ScalarFunction shift =
      V - 2.0 * ((dg / g) * v + derivative(v)) + derivative(dg) / g - eps;
  Domain working = intersect(nonvanishing_domain(diff), shift.domain());
  out = out.withDomain(working);

  TransformReport report{std::move(shift), std::move(out), 0.0, working, eps};
  report.maxResidual = riccati_residual(canonical_equation(report.newPotentialShift),
                                        report.newSolution, kReportGrid);
  if (report.maxResidual > resolve_threshold(threshold)) {
    throw ResidualError("transformed solution fails its target equation",
                        report.maxResidual);
  }
  return report;
}

TransformReport schrodinger_backlund(const ScalarFunction& phi_w,
                                     const ScalarFunction& phi_v,
                                     const GammaGauge& gauge,
                                     const ScalarFunction& V, double eps,
                                     double threshold) {
  const ScalarFunction& g = gauge.gamma();
  ScalarFunction invGammaSq = 1.0 / (g * g);

  if (schrodinger_residual_sweep(V, eps, phi_w, kReportGrid).maxRel >
      kInputTol) {
    throw InvalidSolution("first input does not solve the base problem");
  }
  if (schrodinger_residual_sweep(V + invGammaSq, eps, phi_v, kReportGrid)
          .maxRel > kInputTol) {
    throw InvalidSolution("second input does not solve the offset problem");
  }

  ScalarFunction v = log_derivative(phi_v);
  ScalarFunction dg = derivative(g);
  ScalarFunction out = g * (v * phi_w - derivative(phi_w));
  ScalarFunction shift =
      V - 2.0 * ((dg / g) * v + derivative(v)) + derivative(dg) / g - eps;

  TransformReport report{std::move(shift), std::move(out), 0.0,
                         Domain{}, eps};
  report.domain = intersect(report.newSolution.domain(),
                            report.newPotentialShift.domain());
  report.newSolution = report.newSolution.withDomain(report.domain);
  const ResidualSweep sweep = schrodinger_residual_sweep(
      report.newPotentialShift, 0.0, report.newSolution, kReportGrid);
  report.maxResidual = sweep.maxRel;
  if (report.maxResidual > resolve_threshold(threshold)) {
    throw ResidualError("transformed eigenfunction fails its target problem",
                        report.maxResidual);
  }
  return report;
}

IntertwinedPair intertwine_pair(const ScalarFunction& V0,
                                const ScalarFunction& groundState, double E0) {
  if (!find_zeros(groundState).empty()) {
    throw NotGroundState("the seed eigenfunction has an interior zero");
  }
  ScalarFunction W = log_derivative(groundState);
  ScalarFunction V1 = V0 - 2.0 * derivative(W);

  if (riccati_residual(canonical_equation(V0 - E0), W, kReportGrid) >
      kInputTol) {
    throw InvalidSolution(
        "the seed eigenfunction does not solve the potential at that energy");
  }
  if (riccati_residual(canonical_equation(V1 - E0), -W, kReportGrid) >
      kInputTol) {
    throw InvalidSolution("partner factorization identity fails");
  }
  return IntertwinedPair{std::move(V1), FactorizationData{std::move(W), E0}};
}

ScalarFunction map_eigenfunction(const FactorizationData& f,
                                 const ScalarFunction& psi_n, double E_n) {
  if (!(E_n > f.factorizationEnergy)) {
    throw EnergyOrderError(
        "mapped energy must exceed the factorization energy");
  }
  return (f.superpotential * psi_n - derivative(psi_n)) /
         std::sqrt(E_n - f.factorizationEnergy);
}

}  // namespace rforge
