#include "rforge/potentials.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rforge/specfun.hpp"
#include "rforge/verify.hpp"

namespace rforge {

namespace {

// Eigenfunction domains stop where the exponential factor's log-magnitude
// reaches this bound, keeping every closed-form evaluation inside ~1e+-250.
constexpr double kLn10 = 2.302585092994045684;
constexpr double kLogCap = 250.0 * kLn10;

void validate_oscillator(const OscillatorParams& p) {
  if (!(p.b > 0.0)) throw ParameterError("b must be positive");
  if (!(p.l > -1.5)) throw ParameterError("l must exceed -3/2");
}

void validate_coulomb(const CoulombParams& p) {
  if (!(p.q != 0.0)) throw ParameterError("q must be nonzero");
  if (!(p.l > -1.5)) throw ParameterError("l must exceed -3/2");
  if (p.shifted && std::abs(p.l + 1.0) < 1e-12) {
    throw ParameterError("the shifted variant needs l + 1 nonzero");
  }
}

void validate_degree(int k) {
  if (k < 0) throw ParameterError("k must be nonnegative");
}

}  // namespace

ScalarFunction oscillator_potential(const OscillatorParams& p) {
  validate_oscillator(p);
  const double l = p.l, b = p.b;
  const double shift = p.shifted ? b * (l + 1.5) : 0.0;
  return make_function(
      [l, b, shift](double x) {
        return b * b * x * x / 4.0 + l * (l + 1.0) / (x * x) - shift;
      },
      Domain(Interval(0.0, kInf)));
}

ScalarFunction coulomb_potential(const CoulombParams& p) {
  validate_coulomb(p);
  const double l = p.l, q = p.q;
  const double shift =
      p.shifted ? q * q / ((p.l + 1.0) * (p.l + 1.0)) : 0.0;
  return make_function(
      [l, q, shift](double x) {
        return 2.0 * q / x + l * (l + 1.0) / (x * x) + shift;
      },
      Domain(Interval(0.0, kInf)));
}

double oscillator_energy(const OscillatorParams& p, int k) {
  validate_oscillator(p);
  validate_degree(k);
  return p.shifted ? 2.0 * p.b * k : p.b * (2.0 * k + p.l + 1.5);
}

double coulomb_energy(const CoulombParams& p, int k) {
  validate_coulomb(p);
  validate_degree(k);
  const double kappa = k + p.l + 1.0;
  if (std::abs(kappa) < 1e-12) throw ParameterError("k + l + 1 must be nonzero");
  const double plain = -p.q * p.q / (kappa * kappa);
  return p.shifted ? p.q * p.q / ((p.l + 1.0) * (p.l + 1.0)) + plain : plain;
}

EigenPair oscillator_eigenpair(const OscillatorParams& p, int k) {
  validate_oscillator(p);
  validate_degree(k);
  const double l = p.l, b = p.b;
  const double norm =
      std::sqrt(gamma_fn(k + 1.0) / gamma_fn(k + l + 1.5)) *
      std::pow(std::pow(b, 2.0 * l + 3.0) / std::pow(2.0, 2.0 * l + 1.0),
               0.25);

  Domain dom{Interval(0.0, std::sqrt(4.0 * kLogCap / b))};
  auto value = [norm, l, b, k](double x) {
    return norm * std::pow(x, l + 1.0) * std::exp(-b * x * x / 4.0) *
           laguerre(k, l + 0.5, b * x * x / 2.0);
  };

  // zeta'' = (V - E) zeta; the variant shift cancels between V and E.
  const double vmeConst = b * (2.0 * k + l + 1.5);
  ScalarFunction second(
      [value, l, b, vmeConst](double x) {
        return (b * b * x * x / 4.0 + l * (l + 1.0) / (x * x) - vmeConst) *
               value(x);
      },
      dom);
  ScalarFunction first(
      [value, norm, l, b, k](double x) {
        double out = value(x) * ((l + 1.0) / x - b * x / 2.0);
        if (k >= 1) {
          out -= norm * std::pow(x, l + 1.0) * std::exp(-b * x * x / 4.0) *
                 b * x * laguerre(k - 1, l + 1.5, b * x * x / 2.0);
        }
        return out;
      },
      std::move(second), dom);

  return {k, oscillator_energy(p, k),
          ScalarFunction(value, std::move(first), dom), true};
}

EigenPair coulomb_eigenpair(const CoulombParams& p, int k,
                            bool requireNormalizable) {
  validate_coulomb(p);
  validate_degree(k);
  const double l = p.l, q = p.q;
  const double kappa = k + l + 1.0;
  if (std::abs(kappa) < 1e-12) throw ParameterError("k + l + 1 must be nonzero");
  const double gArg = 2.0 * l + 2.0 + k;
  if (gArg < 0.5 && std::abs(gArg - std::round(gArg)) < 1e-12) {
    throw ParameterError("2l + 2 + k must avoid the Gamma poles");
  }

  const bool normalizable = (l > -1.0 && q < 0.0) ||
                            (l > -1.5 && l < -1.0 && q > 0.0 && k == 0);
  if (requireNormalizable && !normalizable) {
    throw NotNormalizable("no square integrable state at these (l, q, k)");
  }

  const double norm = std::sqrt(gamma_fn(k + 1.0) / std::abs(gamma_fn(gArg))) *
                      std::pow(2.0, l + 1.0) * std::pow(std::abs(q), l + 1.5) /
                      std::pow(std::abs(kappa), l + 2.0);
  const double rate = q / kappa;

  Domain dom{Interval(0.0, kLogCap / std::abs(rate))};
  auto value = [norm, l, k, rate](double x) {
    return norm * std::pow(x, l + 1.0) * std::exp(rate * x) *
           laguerre(k, 2.0 * l + 1.0, -2.0 * rate * x);
  };

  const double vmeConst = rate * rate;  // q^2/kappa^2, variant independent
  ScalarFunction second(
      [value, l, q, vmeConst](double x) {
        return (2.0 * q / x + l * (l + 1.0) / (x * x) + vmeConst) * value(x);
      },
      dom);
  ScalarFunction first(
      [value, norm, l, k, rate](double x) {
        double out = value(x) * ((l + 1.0) / x + rate);
        if (k >= 1) {
          out += norm * std::pow(x, l + 1.0) * std::exp(rate * x) * 2.0 *
                 rate * laguerre(k - 1, 2.0 * l + 2.0, -2.0 * rate * x);
        }
        return out;
      },
      std::move(second), dom);

  return {k, coulomb_energy(p, k),
          ScalarFunction(value, std::move(first), dom), normalizable};
}

namespace {

struct QuadCoeffs {
  double a2 = 0.0, a1 = 0.0, a0 = 0.0;
};

void validate_example(ExampleId which, const ExampleParams& p) {
  switch (which) {
    case ExampleId::Osc71:
      if (!(p.l > -1.5 && p.l < -1.0)) {
        throw ParameterError("l must lie strictly between -3/2 and -1");
      }
      if (!(p.b > 0.0)) throw ParameterError("b must be positive");
      return;
    case ExampleId::Coul72:
      if (p.k < 1) throw ParameterError("k must be at least 1");
      if (!(p.l > p.k - 1.0)) throw ParameterError("l must exceed k - 1");
      if (!(p.q < 0.0)) throw ParameterError("q must be negative");
      return;
    case ExampleId::Coul73:
    case ExampleId::Coul74:
      if (!(p.l > -1.5 && p.l < -1.0)) {
        throw ParameterError("l must lie strictly between -3/2 and -1");
      }
      if (!(p.q < 0.0)) throw ParameterError("q must be negative");
      return;
  }
  throw ArgumentError("unknown example id");
}

QuadCoeffs gauge_coefficients(ExampleId which, const ExampleParams& p) {
  const double l = p.l, q = p.q;
  switch (which) {
    case ExampleId::Osc71:
      return {p.b, 0.0, -2.0 * (l + 1.0)};
    case ExampleId::Coul72:
      return {0.0, 0.0, p.k * (2.0 * l + 1.0 - p.k)};
    case ExampleId::Coul73:
      return {(2.0 * l + 3.0) * q * q /
                  ((l + 1.0) * (l + 1.0) * (l + 2.0) * (l + 2.0)),
              -4.0 * q, -2.0 * (l + 1.0)};
    case ExampleId::Coul74:
      return {(2.0 * l + 3.0) * q * q /
                  ((l + 1.0) * (l + 1.0) * (l + 2.0) * (l + 2.0)),
              0.0, -2.0 * (l + 1.0)};
  }
  throw ArgumentError("unknown example id");
}

struct PipelineInputs {
  ScalarFunction V;
  EigenPair seedW;
  EigenPair seedV;
  double eps = 0.0;
  double imageEnergy = 0.0;
  std::string note;
};

PipelineInputs assemble_pipeline(ExampleId which, const ExampleParams& p) {
  switch (which) {
    case ExampleId::Osc71: {
      OscillatorParams inner{p.l + 1.0, p.b, true};
      OscillatorParams outer{p.l, p.b, true};
      return {oscillator_potential(inner), oscillator_eigenpair(inner, 0),
              oscillator_eigenpair(outer, 0), 0.0, 0.0, ""};
    }
    case ExampleId::Coul72: {
      CoulombParams inner{p.l - p.k, p.q, false};
      CoulombParams outer{p.l, p.q, false};
      EigenPair seedW = coulomb_eigenpair(inner, p.k);
      const double eps = seedW.energy;
      return {coulomb_potential(inner), std::move(seedW),
              coulomb_eigenpair(outer, 0), eps, eps, ""};
    }
    case ExampleId::Coul73: {
      CoulombParams inner{p.l + 1.0, p.q, true};
      CoulombParams outer{p.l, -p.q, true};
      return {coulomb_potential(inner), coulomb_eigenpair(inner, 0),
              coulomb_eigenpair(outer, 0), 0.0, 0.0, ""};
    }
    case ExampleId::Coul74: {
      CoulombParams inner{p.l + 1.0, p.q, true};
      CoulombParams outer{p.l, p.q, true};
      return {coulomb_potential(inner), coulomb_eigenpair(inner, 0),
              coulomb_eigenpair(outer, 0, false), 0.0, 0.0,
              "second seed is a formal, non square integrable solution; the "
              "returned state is nevertheless square integrable and may be "
              "an additional bound level of the image potential"};
    }
  }
  throw ArgumentError("unknown example id");
}

}  // namespace

GammaGauge example_gauge(ExampleId which, const ExampleParams& p) {
  validate_example(which, p);
  const QuadCoeffs c = gauge_coefficients(which, p);
  Domain dom{Interval(0.0, kInf)};

  auto s = [c](double x) { return (c.a2 * x + c.a1) * x + c.a0; };
  auto sp = [c](double x) { return 2.0 * c.a2 * x + c.a1; };
  const double spp = 2.0 * c.a2;

  ScalarFunction second(
      [s, sp, spp](double x) {
        const double sv = s(x), r = std::sqrt(sv), d = sp(x);
        return -d / (sv * r) + 0.75 * x * d * d / (sv * sv * r) -
               0.5 * x * spp / (sv * r);
      },
      dom);
  ScalarFunction first(
      [s, sp](double x) {
        const double sv = s(x);
        return 1.0 / std::sqrt(sv) - 0.5 * x * sp(x) / (sv * std::sqrt(sv));
      },
      std::move(second), dom);
  return GammaGauge(ScalarFunction(
      [s](double x) { return x / std::sqrt(s(x)); }, std::move(first), dom));
}

ExampleResult run_example(ExampleId which, const ExampleParams& p,
                          double threshold) {
  validate_example(which, p);
  GammaGauge gauge = example_gauge(which, p);
  PipelineInputs in = assemble_pipeline(which, p);

  TransformReport rep =
      schrodinger_backlund(in.seedW.wavefunction, in.seedV.wavefunction,
                           gauge, in.V, in.eps, threshold);

  ExampleResult res{rep.newPotentialShift + in.imageEnergy,
                    in.imageEnergy,
                    rep.newSolution.restrictedTo(rep.domain),
                    0.0,
                    rep.maxResidual,
                    {},
                    rep.domain,
                    std::move(in.note)};
  res.normSquared = integrate(res.eigenstate * res.eigenstate);
  res.eigenstateZeros = find_zeros(res.eigenstate);
  return res;
}

}  // namespace rforge
