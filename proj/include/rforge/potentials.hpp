#pragma once

// Exactly solvable half-line families: the radial oscillator-like and
// Coulomb-like potentials, each in a plain and an energy-shifted variant,
// with closed-form eigenfunctions carrying two analytic derivative levels.
// On top of them, the four built-in gauge pipelines (osc-7.1, coul-7.2,
// coul-7.3, coul-7.4) that feed the transformation machinery and produce a
// new potential with one exactly known eigenstate.

#include <string>
#include <vector>

#include "rforge/darboux.hpp"
#include "rforge/fnspace.hpp"

namespace rforge {

struct OscillatorParams {
  double l = 0.0;
  double b = 2.0;
  // Plain: b^2 x^2/4 + l(l+1)/x^2, ground energy b(l+3/2).
  // Shifted: minus b(l+3/2), so the ground state sits at zero energy.
  bool shifted = false;
};

struct CoulombParams {
  double l = 0.0;
  double q = -1.0;
  // Plain: 2q/x + l(l+1)/x^2, energies -q^2/(k+l+1)^2.
  // Shifted: plus q^2/(l+1)^2, so the k=0 state sits at zero energy.
  bool shifted = false;
};

struct EigenPair {
  int k = 0;
  double energy = 0.0;
  ScalarFunction wavefunction;
  bool normalizable = true;
};

ScalarFunction oscillator_potential(const OscillatorParams& p);
ScalarFunction coulomb_potential(const CoulombParams& p);

double oscillator_energy(const OscillatorParams& p, int k);
double coulomb_energy(const CoulombParams& p, int k);

// Normalized k-th eigenfunction. Requires b > 0, l > -3/2, k >= 0.
EigenPair oscillator_eigenpair(const OscillatorParams& p, int k);

// Coulomb-like eigenfunction. Square integrability holds only for
// (l > -1, q < 0, any k) or (l in (-3/2,-1), q > 0, k = 0); outside those
// ranges the closed form still defines a formal zero-residual solution,
// which callers may request by passing requireNormalizable = false.
EigenPair coulomb_eigenpair(const CoulombParams& p, int k,
                            bool requireNormalizable = true);

// Built-in pipelines. Identifiers follow the CLI tokens.
enum class ExampleId { Osc71, Coul72, Coul73, Coul74 };

struct ExampleParams {
  double l = -1.25;
  double b = 2.0;   // osc-7.1 only
  double q = -1.0;  // coul-7.x only
  int k = 1;        // coul-7.2 only
};

struct ExampleResult {
  ScalarFunction imagePotential;  // with the pipeline's energy split applied
  double imageEnergy = 0.0;       // energy of the produced eigenstate
  ScalarFunction eigenstate;      // as produced, not rescaled
  double normSquared = 0.0;
  double maxResidual = 0.0;
  std::vector<double> eigenstateZeros;
  Domain domain;
  std::string note;
};

// The pipeline's gauge function x / sqrt(A2 x^2 + A1 x + A0), with exact
// first and second derivatives attached.
GammaGauge example_gauge(ExampleId which, const ExampleParams& p);

// Assembles the pipeline inputs (base potential, the two seed
// eigenfunctions, the gauge), runs the linear-level transformation, and
// returns the image potential, its known eigenstate, the squared norm, and
// diagnostics. Parameters outside the pipeline's derivation range raise
// ParameterError naming the violated inequality.
ExampleResult run_example(ExampleId which, const ExampleParams& p,
                          double threshold = -1.0);

}  // namespace rforge
