#pragma once

// Solution-to-solution transformations built on the curve group: the
// finite-difference two-solution algorithm, its gauge-function
// generalization at Riccati level, the same construction at the linear
// (Schrodinger) level, and the classical factorization / partner-potential
// machinery with its eigenfunction map.
//
// Every transformation verifies its preconditions numerically (input
// residual <= 1e-6, normalized) and gates its own output residual: a result
// above the threshold throws ResidualError instead of returning quietly.
// Pass an infinite threshold to collect the report and apply a gate
// externally.

#include "rforge/fnspace.hpp"
#include "rforge/reduction.hpp"
#include "rforge/riccati.hpp"

namespace rforge {

struct FactorizationData {
  ScalarFunction superpotential;
  double factorizationEnergy = 0.0;
};

// A gauge function that must never vanish. Construction scans for zeros and
// rejects the function if any are detected.
class GammaGauge {
 public:
  explicit GammaGauge(ScalarFunction gamma, const Window& w = {});
  const ScalarFunction& gamma() const { return gamma_; }

 private:
  ScalarFunction gamma_;
};

struct TransformReport {
  // The target equation is w' + w^2 = newPotentialShift at Riccati level,
  // -phi'' + newPotentialShift*phi = 0 at Schrodinger level. Only this
  // combination (potential minus energy) is determined; epsilon echoes the
  // input energy so callers can split it by their own convention.
  ScalarFunction newPotentialShift;
  ScalarFunction newSolution;
  double maxResidual = 0.0;  // normalized sup over a 500-point grid
  Domain domain;
  double epsilon = 0.0;
};

// The curve [[h, a - h^2], [-1, h]] / sqrt(a), determinant one identically.
// Acting on a second solution it reproduces the finite-difference algorithm;
// with h the ground-state log-derivative and a an energy gap it is the
// eigenfunction-mapping curve of the factorization construction.
GaugeCurve backlund_element(const ScalarFunction& h, double a);

// From w_k, w_l solving w' + w^2 = V - eps_k resp. V - eps_l (same V,
// eps_k < eps_l), produce
//   -w_k - (eps_k - eps_l)/(w_k - w_l)
// solving w' + w^2 = V - 2 w_k' - eps_l. V itself is not an argument: it is
// recovered from each input as w' + w^2 + eps, and the two recoveries must
// agree (normalized difference <= 1e-6) or the inputs are rejected.
// A threshold <= 0 means default_residual_threshold().
TransformReport finite_difference_backlund(const ScalarFunction& w_k,
                                           const ScalarFunction& w_l,
                                           double eps_k, double eps_l,
                                           double threshold = -1.0);

// Gauge-function generalization: from w solving w' + w^2 = V - eps and v
// solving the offset equation v' + v^2 = V + 1/gamma^2 - eps, produce
//   -v - (1/gamma^2)/(w - v) + gamma'/gamma
// solving w' + w^2 = V - 2((gamma'/gamma) v + v') + gamma''/gamma - eps.
TransformReport generalized_backlund(const ScalarFunction& w,
                                     const ScalarFunction& v,
                                     const GammaGauge& gauge,
                                     const ScalarFunction& V, double eps,
                                     double threshold = -1.0);

// Same construction one level up: from phi_w solving -phi'' + (V-eps)phi = 0
// and phi_v solving the 1/gamma^2-offset problem, produce
//   gamma * (-phi_w' + (phi_v'/phi_v) phi_w),
// an eigenfunction of the transformed problem. No division by phi_w occurs,
// so nodes of phi_w are harmless; the result is fixed only up to a constant.
TransformReport schrodinger_backlund(const ScalarFunction& phi_w,
                                     const ScalarFunction& phi_v,
                                     const GammaGauge& gauge,
                                     const ScalarFunction& V, double eps,
                                     double threshold = -1.0);

struct IntertwinedPair {
  ScalarFunction partnerPotential;
  FactorizationData factorization;
};

// Classical one-step factorization from a nodeless ground state:
// W = groundState'/groundState, partner V1 = V0 - 2W'. Both factorization
// identities W' + W^2 = V0 - E0 and -W' + W^2 = V1 - E0 are verified.
IntertwinedPair intertwine_pair(const ScalarFunction& V0,
                                const ScalarFunction& groundState, double E0);

// (-psi' + W psi) / sqrt(E_n - E0): maps an eigenfunction of the original
// problem at E_n > E0 to one of the partner problem at the same energy,
// preserving norms.
ScalarFunction map_eigenfunction(const FactorizationData& f,
                                 const ScalarFunction& psi_n, double E_n);

}  // namespace rforge
