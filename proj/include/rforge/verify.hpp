#pragma once

// Independent numerical oracles: adaptive Gauss-Kronrod quadrature,
// Schrodinger residual sweeps, and L2 inner products. Everything here works
// from raw evaluators (stencils, never attached analytic derivatives), so the
// checks stay independent of the machinery they validate.

#include "rforge/fnspace.hpp"

namespace rforge {

struct QuadratureSpec {
  double absTol = 1e-10;
  double relTol = 1e-10;
  int maxDepth = 60;
  // Integration runs over domain(f) ∩ window. An infinite upper end is
  // truncated per the half-line evaluation rule and the tail bound reported.
  Interval window{0.0, kInf};
};

struct IntegralResult {
  double value = 0.0;
  double errorBound = 0.0;
  double tailBound = 0.0;
};

// Global residual gate used by the transformation routines when no explicit
// threshold is passed. The environment variable RICCATI_FORGE_SEED_TOL
// overrides the built-in default of 1e-5; unparsable or non-positive values
// fall back to the default.
double default_residual_threshold();

double integrate(const ScalarFunction& f, const QuadratureSpec& spec = {});
IntegralResult integrate_detail(const ScalarFunction& f,
                                const QuadratureSpec& spec = {});

double inner_product(const ScalarFunction& f, const ScalarFunction& g,
                     const QuadratureSpec& spec = {});

struct ResidualSweep {
  int gridSize = 0;
  double maxAbs = 0.0;
  double maxRel = 0.0;  // maxAbs / (max|phi| * (1 + max|V - E|)) over the sweep
  double worstX = 0.0;
};

// Residual of -phi'' + (V - E) phi over a log-spaced grid; phi'' from the
// five-point stencil on phi's raw evaluator.
ResidualSweep schrodinger_residual_sweep(const ScalarFunction& V, double E,
                                         const ScalarFunction& phi,
                                         int gridSize = 500);

}  // namespace rforge
