#pragma once

// Dilation reduction between the stationary Schrodinger form
// -phi'' + (V - eps) phi = 0 and its Riccati counterparts via log-derivatives.
// Solutions correspond interval-wise: w lives on the sign intervals of phi,
// and phi is recovered from w up to one multiplicative constant per interval.

#include "rforge/fnspace.hpp"
#include "rforge/riccati.hpp"

namespace rforge {

struct SchrodingerProblem {
  ScalarFunction potential;
  double energy = 0.0;
};

enum class SignConvention { Plus, Minus };

// +phi'/phi (Plus) or -phi'/phi (Minus) on restrict_to_sign_intervals(phi).
// A phi that vanishes identically over the window is rejected.
ScalarFunction log_derivative(const ScalarFunction& phi,
                              SignConvention sign = SignConvention::Plus,
                              const Window& w = {});

// Plus: w' = -w^2 + (V - eps), solved by +phi'/phi.
// Minus: w' = +w^2 - (V - eps), solved by -phi'/phi.
RiccatiEquation schrodinger_to_riccati(const SchrodingerProblem& p,
                                       SignConvention sign);

// x -> exp(integral of w from x0 to x) on the connected interval containing
// x0, anchored to value 1 at x0. Carries two analytic derivative levels,
// phi' = w phi and phi'' = (w' + w^2) phi.
ScalarFunction reconstruct_wavefunction(const ScalarFunction& w, double x0);

}  // namespace rforge
