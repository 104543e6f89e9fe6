#include "rforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <vector>

#include "rforge/errors.hpp"

namespace rforge {
namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
// Nodes are strictly interior, so endpoint singularities are never sampled.
constexpr int kKronrodHalf = 8;

constexpr double kNodes[kKronrodHalf] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kKronrodW[kKronrodHalf] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.lo > b.lo;  // deterministic tie break
  }
};

Panel evaluate_panel(const ScalarFunction& f, double lo, double hi,
                     int depth) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);

  double fv[2 * kKronrodHalf - 1];
  const double fc = f(c);
  fv[kKronrodHalf - 1] = fc;
  for (int i = 0; i < kKronrodHalf - 1; ++i) {
    fv[i] = f(c - h * kNodes[i]);
    fv[2 * kKronrodHalf - 2 - i] = f(c + h * kNodes[i]);
  }

  double resk = kKronrodW[kKronrodHalf - 1] * fc;
  double resabs = std::abs(resk);
  for (int i = 0; i < kKronrodHalf - 1; ++i) {
    const double s = fv[i] + fv[2 * kKronrodHalf - 2 - i];
    resk += kKronrodW[i] * s;
    resabs += kKronrodW[i] * (std::abs(fv[i]) +
                              std::abs(fv[2 * kKronrodHalf - 2 - i]));
  }

  double resg = kGaussW[3] * fc;
  for (int j = 0; j < 3; ++j) {
    const int i = 2 * j + 1;  // Gauss nodes sit at the odd Kronrod indices
    resg += kGaussW[j] * (fv[i] + fv[2 * kKronrodHalf - 2 - i]);
  }

  const double reskh = 0.5 * resk;
  double resasc = kKronrodW[kKronrodHalf - 1] * std::abs(fc - reskh);
  for (int i = 0; i < kKronrodHalf - 1; ++i) {
    resasc += kKronrodW[i] * (std::abs(fv[i] - reskh) +
                              std::abs(fv[2 * kKronrodHalf - 2 - i] - reskh));
  }

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.depth = depth;
  p.value = resk * h;
  resabs *= h;
  resasc *= h;

  if (!std::isfinite(p.value)) {
    p.value = 0.0;
    p.err = std::numeric_limits<double>::infinity();
    return p;
  }

  double err = std::abs(resk - resg) * h;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);
  p.err = err;
  return p;
}

IntegralResult integrate_piece(const ScalarFunction& f, double lo, double hi,
                               const QuadratureSpec& spec, double tailBound) {
  // Seed breakpoints crowd the lower edge so integrable endpoint
  // singularities start from panels already graded toward them.
  static const double kSeed[] = {0.0,  1e-8, 1e-6, 1e-4, 1e-2,
                                 0.1,  0.25, 0.5,  0.75, 1.0};
  constexpr int kSeedCount = static_cast<int>(sizeof(kSeed) / sizeof(kSeed[0]));
  constexpr int kMaxPanels = 4000;

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  std::vector<Panel> frozen;  // panels at maxDepth, no longer splittable
  const double width = hi - lo;

  double total = 0.0;
  double totalErr = 0.0;
  int livePanels = 0;
  for (int i = 0; i + 1 < kSeedCount; ++i) {
    Panel p = evaluate_panel(f, lo + kSeed[i] * width, lo + kSeed[i + 1] * width, 0);
    total += p.value;
    totalErr += p.err;
    queue.push(p);
    ++livePanels;
  }

  auto tolerance = [&spec](double estimate) {
    return std::max(spec.absTol, spec.relTol * std::abs(estimate));
  };

  while (!queue.empty() && totalErr > tolerance(total) &&
         livePanels < kMaxPanels) {
    Panel worst = queue.top();
    if (worst.depth >= spec.maxDepth) break;
    queue.pop();
    --livePanels;
    total -= worst.value;
    totalErr -= worst.err;

    const double mid = 0.5 * (worst.lo + worst.hi);
    for (int half = 0; half < 2; ++half) {
      Panel child = evaluate_panel(f, half == 0 ? worst.lo : mid,
                                   half == 0 ? mid : worst.hi,
                                   worst.depth + 1);
      total += child.value;
      totalErr += child.err;
      if (child.depth >= spec.maxDepth) {
        frozen.push_back(child);
      } else {
        queue.push(child);
        ++livePanels;
      }
    }
  }

  // Deterministic final sum: gather every panel and add in positional order.
  std::vector<Panel> all = std::move(frozen);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  double value = 0.0;
  double errorBound = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    errorBound += p.err;
  }

  if (!(errorBound <= tolerance(value)) || !std::isfinite(value)) {
    throw ConvergenceError("quadrature failed to reach tolerance", value,
                           errorBound);
  }
  return IntegralResult{value, errorBound, tailBound};
}

}  // namespace

double default_residual_threshold() {
  if (const char* raw = std::getenv("RICCATI_FORGE_SEED_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end != raw && std::isfinite(v) && v > 0.0) return v;
  }
  return 1e-5;
}

IntegralResult integrate_detail(const ScalarFunction& f,
                                const QuadratureSpec& spec) {
  Domain range = intersect(f.domain(), Domain(spec.window));
  if (range.empty()) throw DomainError("integration range is empty");

  IntegralResult sum;
  for (const Interval& piece : range.intervals()) {
    double lo = piece.lo;
    double hi = piece.hi;
    double tail = 0.0;
    if (!piece.boundedAbove()) {
      hi = std::max(60.0, lo + 100.0);
      const double edge = std::abs(f(hi));
      tail = edge * std::max(1.0, hi);
    }
    IntegralResult part = integrate_piece(f, lo, hi, spec, tail);
    sum.value += part.value;
    sum.errorBound += part.errorBound;
    sum.tailBound += part.tailBound;
  }
  return sum;
}

double integrate(const ScalarFunction& f, const QuadratureSpec& spec) {
  return integrate_detail(f, spec).value;
}

double inner_product(const ScalarFunction& f, const ScalarFunction& g,
                     const QuadratureSpec& spec) {
  return integrate(f * g, spec);
}

ResidualSweep schrodinger_residual_sweep(const ScalarFunction& V, double E,
                                         const ScalarFunction& phi,
                                         int gridSize) {
  if (gridSize < 2) throw ArgumentError("residual sweep needs gridSize >= 2");

  Domain sweepDomain = intersect(phi.domain(), V.domain());
  if (sweepDomain.empty()) {
    throw DomainError("potential and wavefunction domains do not overlap");
  }
  const std::vector<double> grid = sample_domain(sweepDomain, gridSize);

  double maxPhi = 0.0;
  double maxVmE = 0.0;
  for (double x : grid) {
    maxPhi = std::max(maxPhi, std::abs(phi(x)));
    maxVmE = std::max(maxVmE, std::abs(V(x) - E));
  }
  if (maxPhi < 1e-150) {
    throw DegenerateInput("wavefunction vanishes over the sweep grid");
  }

  ResidualSweep sweep;
  sweep.gridSize = static_cast<int>(grid.size());
  for (double x : grid) {
    const double r = -second_derivative(phi, x) + (V(x) - E) * phi(x);
    const double a = std::abs(r);
    if (a > sweep.maxAbs) {
      sweep.maxAbs = a;
      sweep.worstX = x;
    }
  }
  sweep.maxRel = sweep.maxAbs / (maxPhi * (1.0 + maxVmE));
  return sweep;
}

}  // namespace rforge
