#pragma once

// Special functions needed by the exactly solvable families: generalized
// Laguerre polynomials, the Gamma function, and the upper incomplete Gamma
// function extended to negative non-integer first argument.

#include "rforge/errors.hpp"

namespace rforge {

struct LaguerreSpec {
  int degree = 0;        // k >= 0
  double parameter = 0;  // a, real
};

// L_k^a(u) by the three-term recurrence
//   n L_n^a = (2n-1+a-u) L_{n-1}^a - (n-1+a) L_{n-2}^a.
double laguerre(const LaguerreSpec& s, double u);
double laguerre(int degree, double parameter, double u);

// Gamma(a); poles at non-positive integers raise ArgumentError.
double gamma_fn(double a);

// Gamma(a, x) = integral_x^inf e^{-t} t^{a-1} dt for x > 0 (x = 0 allowed when
// a > 0). For a > 0: series / continued fraction split at x = a+1. For a <= 0:
// computed through Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a applied
// downward from a lifted positive argument.
double upper_incomplete_gamma(double a, double x);

}  // namespace rforge
