#pragma once

// The curve group SL(2,R)^X acting on Riccati equations y' = a2 y^2 + a1 y + a0.
//
// A GaugeCurve is a matrix [[alpha, beta], [gamma, delta]] of evaluators with
// pointwise determinant one. It acts on solutions by the Moebius map
// y -> (alpha y + beta) / (gamma y + delta) and on coefficient triples by an
// affine map: a 3x3 linear representation built from the entries plus a
// derivative cocycle built from the entries and their first derivatives.

#include <random>

#include "rforge/fnspace.hpp"

namespace rforge {

struct RiccatiEquation {
  ScalarFunction a2;
  ScalarFunction a1;
  ScalarFunction a0;

  Domain domain() const;
};

// Pointwise values of (a2, a1, a0) at a fixed x, ordered to match the column
// vector the representation acts on.
struct CoefficientTriple {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

class GaugeCurve {
 public:
  // Validates pointwise |alpha*delta - beta*gamma - 1| <= 1e-9 on a 200-point
  // sample of the common domain; throws DegenerateInput otherwise.
  GaugeCurve(ScalarFunction alpha, ScalarFunction beta, ScalarFunction gamma,
             ScalarFunction delta);

  const ScalarFunction& alpha() const { return alpha_; }
  const ScalarFunction& beta() const { return beta_; }
  const ScalarFunction& gamma() const { return gamma_; }
  const ScalarFunction& delta() const { return delta_; }
  const Domain& domain() const { return domain_; }

 private:
  ScalarFunction alpha_, beta_, gamma_, delta_;
  Domain domain_;
};

// Pointwise matrix product and inverse. Entry derivatives propagate through
// the arithmetic combinators, so cocycles of composites stay accurate.
GaugeCurve compose(const GaugeCurve& first, const GaugeCurve& second);
GaugeCurve inverse(const GaugeCurve& a);

// (alpha y + beta) / (gamma y + delta), with a guard band excised around each
// zero of the denominator found inside the window.
ScalarFunction act_on_solution(const GaugeCurve& a, const ScalarFunction& y,
                               double guard = 1e-4, const Window& w = {});

RiccatiEquation act_on_coefficients(const GaugeCurve& a,
                                    const RiccatiEquation& eq);

// Linear part of the coefficient action at x, applied to c (no cocycle term).
CoefficientTriple representation_B(const GaugeCurve& a,
                                   const CoefficientTriple& c, double x);

// Inhomogeneous part at x:
//   (gamma delta' - delta gamma',
//    delta alpha' - alpha delta' + beta gamma' - gamma beta',
//    alpha beta' - beta alpha').
// Satisfies theta(A1 A2) = B(A1) theta(A2) + theta(A1) pointwise.
CoefficientTriple cocycle_theta(const GaugeCurve& a, double x);

// Raw pointwise defect y'(x) - a2 y^2 - a1 y - a0.
double residual(const RiccatiEquation& eq, const ScalarFunction& y, double x);

// Scale-normalized sup residual over a sample grid:
//   |y' - (a2 y^2 + a1 y + a0)| / (1 + |a2 y^2| + |a1 y| + |a0|).
// The normalization keeps the gate meaningful near 1/x^2 singularities where
// individual terms dwarf double precision.
double riccati_residual(const RiccatiEquation& eq, const ScalarFunction& y,
                        int gridSize = 400, const Window& w = {});

// Smooth bounded random functions (and curves built from them) for property
// tests: a short trigonometric sum plus a rational bump, with two attached
// analytic derivative levels.
ScalarFunction random_smooth_function(std::mt19937& rng, const Interval& iv);

// Random determinant-one curve assembled as a lower * diagonal * upper
// product, so the determinant is one exactly, not merely to rounding.
GaugeCurve random_gauge_curve(std::mt19937& rng, const Interval& iv);

}  // namespace rforge
