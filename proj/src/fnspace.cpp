#include "rforge/fnspace.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rforge {

namespace {

constexpr int kScanSamples = 1000;
constexpr double kSpanCap = 100.0;  // span cap for unbounded intervals

double bisect_root(const ScalarFunction::Eval& f, double a, double b, double fa,
                   double fb) {
  // fa and fb straddle zero (or one of them is exactly zero).
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (b - a <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)})) return m;
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

// Effective finite scan range for an interval under a window.
std::pair<double, double> effective_range(const Interval& iv, const Window& w) {
  double a = iv.lo;
  double b = iv.hi;
  if (!iv.boundedAbove()) {
    b = (a < w.hiCap) ? w.hiCap : a + kSpanCap;
  }
  // Keep strictly inside: lift a zero-ish lower edge to the window floor.
  double lift = std::min(w.loFloor, a + 1e-3 * (b - a));
  if (a < lift) a = lift;
  return {a, b};
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo)) throw DomainError("interval lower endpoint must be finite");
  if (std::isnan(hi)) throw DomainError("interval upper endpoint is NaN");
  if (!(lo < hi)) throw DomainError("interval requires lo < hi");
}

Domain::Domain(std::vector<Interval> ivs) : ivs_(std::move(ivs)) {
  std::sort(ivs_.begin(), ivs_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < ivs_.size(); ++i) {
    if (ivs_[i].lo < ivs_[i - 1].hi)
      throw DomainError("domain intervals must be disjoint");
  }
}

const Interval* Domain::find(double x) const {
  for (const auto& iv : ivs_)
    if (iv.contains(x)) return &iv;
  return nullptr;
}

Interval Domain::hull() const {
  if (ivs_.empty()) throw DomainError("hull of empty domain");
  return Interval(ivs_.front().lo, ivs_.back().hi);
}

Domain intersect(const Domain& a, const Domain& b) {
  std::vector<Interval> out;
  for (const auto& p : a.intervals()) {
    for (const auto& q : b.intervals()) {
      double lo = std::max(p.lo, q.lo);
      double hi = std::min(p.hi, q.hi);
      if (lo < hi) out.push_back(Interval(lo, hi));
    }
  }
  return Domain(std::move(out));
}

Domain excise(const Domain& d, const std::vector<double>& points, double guard) {
  std::vector<double> ps = points;
  std::sort(ps.begin(), ps.end());
  std::vector<Interval> out;
  for (const auto& iv : d.intervals()) {
    double lo = iv.lo;
    bool dead = false;
    for (double p : ps) {
      if (p + guard <= lo || p - guard >= iv.hi) continue;
      if (p - guard > lo) out.push_back(Interval(lo, p - guard));
      lo = p + guard;
      if (lo >= iv.hi) {
        dead = true;
        break;
      }
    }
    if (!dead && lo < iv.hi) out.push_back(Interval(lo, iv.hi));
  }
  return Domain(std::move(out));
}

ScalarFunction::ScalarFunction(Eval eval, Domain domain)
    : eval_(std::move(eval)), domain_(std::move(domain)) {
  if (domain_.empty()) throw DomainError("function needs a non-empty domain");
  if (!eval_) throw ArgumentError("function needs an evaluator");
}

ScalarFunction::ScalarFunction(Eval eval, ScalarFunction deriv, Domain domain)
    : eval_(std::move(eval)),
      deriv_(std::make_shared<const ScalarFunction>(std::move(deriv))),
      domain_(std::move(domain)) {
  if (domain_.empty()) throw DomainError("function needs a non-empty domain");
  if (!eval_) throw ArgumentError("function needs an evaluator");
}

double ScalarFunction::derivativeAt(double x) const {
  if (deriv_) return (*deriv_)(x);
  double h = std::max(1e-6, 1e-6 * std::fabs(x));
  const Interval* iv = domain_.find(x);
  if (iv) {
    double dl = x - iv->lo;
    double dr = iv->boundedAbove() ? iv->hi - x : kInf;
    if (dl > h && dr > h) {
      return (eval_(x + h) - eval_(x - h)) / (2.0 * h);
    }
    if (dr > dl) {
      // second-order forward stencil
      double h2 = std::min(h, dr / 2.5);
      return (-3.0 * eval_(x) + 4.0 * eval_(x + h2) - eval_(x + 2.0 * h2)) /
             (2.0 * h2);
    }
    double h2 = std::min(h, dl / 2.5);
    return (3.0 * eval_(x) - 4.0 * eval_(x - h2) + eval_(x - 2.0 * h2)) / (2.0 * h2);
  }
  return (eval_(x + h) - eval_(x - h)) / (2.0 * h);
}

ScalarFunction ScalarFunction::withDomain(Domain d) const {
  ScalarFunction out = *this;
  if (d.empty()) throw DomainError("empty domain");
  out.domain_ = std::move(d);
  return out;
}

ScalarFunction ScalarFunction::restrictedTo(const Domain& d) const {
  return withDomain(intersect(domain_, d));
}

ScalarFunction make_function(ScalarFunction::Eval eval, Domain domain) {
  return ScalarFunction(std::move(eval), std::move(domain));
}

ScalarFunction make_function(ScalarFunction::Eval eval, ScalarFunction::Eval deriv,
                             Domain domain) {
  ScalarFunction d(std::move(deriv), domain);
  return ScalarFunction(std::move(eval), std::move(d), std::move(domain));
}

ScalarFunction derivative(const ScalarFunction& f) {
  if (f.deriv_) return f.deriv_->withDomain(f.domain_);
  ScalarFunction g = f;  // keep the evaluator and domain alive by value
  return ScalarFunction([g](double x) { return g.derivativeAt(x); }, f.domain_);
}

double second_derivative(const ScalarFunction& f, double x) {
  double h = 1e-4 * std::max(1.0, std::fabs(x));
  const Interval* iv = f.domain().find(x);
  if (iv) {
    double dl = x - iv->lo;
    double dr = iv->boundedAbove() ? iv->hi - x : kInf;
    // Small clamp ratio: near a boundary the step must shrink much faster
    // than the distance, or the x^s-type singular prefactors of the half-line
    // eigenfunctions leave ~(h/x)^4-sized relative truncation error in the
    // stencil, which would swamp the residual gates.
    h = std::min(h, 0.015 * std::min(dl, dr));
    if (!(h > 0.0)) h = 1e-12;
  }
  double fm2 = f(x - 2.0 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h),
         fp2 = f(x + 2.0 * h);
  return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

std::vector<double> find_zeros(const ScalarFunction& f, const Window& w) {
  std::vector<double> roots;
  auto scan = [&](double a, double b, bool logspaced) {
    double prevx = 0.0, prevf = 0.0;
    bool have = false;
    double ratio = logspaced ? std::pow(b / a, 1.0 / kScanSamples) : 0.0;
    for (int i = 0; i <= kScanSamples; ++i) {
      double x = logspaced ? a * std::pow(ratio, static_cast<double>(i))
                           : a + (b - a) * i / kScanSamples;
      double fx = f(x);
      if (!std::isfinite(fx)) {
        have = false;
        continue;
      }
      if (have) {
        if (fx == 0.0 || (prevf < 0.0) != (fx < 0.0)) {
          roots.push_back(bisect_root([&f](double t) { return f(t); }, prevx, x,
                                      prevf, fx));
        }
      }
      prevx = x;
      prevf = fx;
      have = true;
    }
  };
  for (const auto& iv : f.domain().intervals()) {
    auto [a, b] = effective_range(iv, w);
    if (!(a < b)) continue;
    scan(a, b, false);
    if (a > 0.0 && b / a >= 100.0) scan(a, b, true);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || r - out.back() > 1e-9 * std::max(1.0, std::fabs(r)))
      out.push_back(r);
  }
  return out;
}

Domain restrict_to_sign_intervals(const ScalarFunction& f, const Window& w) {
  std::vector<double> roots = find_zeros(f, w);
  std::vector<Interval> out;
  for (const auto& iv : f.domain().intervals()) {
    double lo = iv.lo;
    for (double r : roots) {
      if (r <= lo || r >= iv.hi) continue;
      if (r - lo > 1e-10 * std::max(1.0, std::fabs(r))) out.push_back(Interval(lo, r));
      lo = r;
    }
    if (iv.hi - lo > 1e-10 * std::max(1.0, std::fabs(lo)))
      out.push_back(Interval(lo, iv.hi));
  }
  if (out.empty()) throw DomainError("function has no sign interval left");
  return Domain(std::move(out));
}

std::vector<double> sample_interval(const Interval& iv, int n, const Window& w) {
  if (n <= 0) throw ArgumentError("sample count must be positive");
  auto [a, b] = effective_range(iv, w);
  std::vector<double> xs;
  xs.reserve(n);
  bool logspaced = a > 0.0 && b / a >= 100.0;
  for (int i = 0; i < n; ++i) {
    double t = (i + 0.5) / n;
    xs.push_back(logspaced ? a * std::pow(b / a, t) : a + (b - a) * t);
  }
  return xs;
}

std::vector<double> sample_domain(const Domain& d, int n, const Window& w) {
  if (d.empty()) throw DomainError("cannot sample an empty domain");
  const auto& ivs = d.intervals();
  // Weight intervals by their effective spans.
  std::vector<double> spans;
  double total = 0.0;
  for (const auto& iv : ivs) {
    auto [a, b] = effective_range(iv, w);
    double s = std::max(b - a, 0.0);
    spans.push_back(s);
    total += s;
  }
  std::vector<double> xs;
  int minPer = std::max(2, n / (8 * static_cast<int>(ivs.size()) + 1));
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    int ni = total > 0.0
                 ? std::max(minPer, static_cast<int>(std::lround(n * spans[i] / total)))
                 : minPer;
    auto part = sample_interval(ivs[i], ni, w);
    xs.insert(xs.end(), part.begin(), part.end());
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

ScalarFunction constant(double c, Domain d) {
  ScalarFunction zero([](double) { return 0.0; }, d);
  return ScalarFunction([c](double) { return c; }, std::move(zero), std::move(d));
}

ScalarFunction identity_fn(Domain d) {
  return ScalarFunction([](double x) { return x; }, constant(1.0, d), d);
}

namespace {

ScalarFunction combine(const ScalarFunction& f, const ScalarFunction& g,
                       std::function<double(double, double)> op,
                       std::function<double(const ScalarFunction&,
                                            const ScalarFunction&, double)>
                           dop) {
  Domain d = intersect(f.domain(), g.domain());
  if (d.empty()) throw DomainError("combinator domains do not overlap");
  auto ev = [f, g, op](double x) { return op(f(x), g(x)); };
  auto dv = [f, g, dop](double x) { return dop(f, g, x); };
  return ScalarFunction(ev, ScalarFunction(dv, d), d);
}

}  // namespace

ScalarFunction operator+(const ScalarFunction& f, const ScalarFunction& g) {
  return combine(
      f, g, [](double a, double b) { return a + b; },
      [](const ScalarFunction& a, const ScalarFunction& b, double x) {
        return a.derivativeAt(x) + b.derivativeAt(x);
      });
}

ScalarFunction operator-(const ScalarFunction& f, const ScalarFunction& g) {
  return combine(
      f, g, [](double a, double b) { return a - b; },
      [](const ScalarFunction& a, const ScalarFunction& b, double x) {
        return a.derivativeAt(x) - b.derivativeAt(x);
      });
}

ScalarFunction operator*(const ScalarFunction& f, const ScalarFunction& g) {
  return combine(
      f, g, [](double a, double b) { return a * b; },
      [](const ScalarFunction& a, const ScalarFunction& b, double x) {
        return a.derivativeAt(x) * b(x) + a(x) * b.derivativeAt(x);
      });
}

ScalarFunction operator/(const ScalarFunction& f, const ScalarFunction& g) {
  return combine(
      f, g, [](double a, double b) { return a / b; },
      [](const ScalarFunction& a, const ScalarFunction& b, double x) {
        // Ratio form: (a'b - ab')/b^2 underflows once b^2 leaves the normal
        // range, which log-derivatives of decaying states hit well before b
        // itself does.
        double bx = b(x);
        return a.derivativeAt(x) / bx - (a(x) / bx) * (b.derivativeAt(x) / bx);
      });
}

ScalarFunction operator-(const ScalarFunction& f) {
  Domain d = f.domain();
  auto ev = [f](double x) { return -f(x); };
  auto dv = [f](double x) { return -f.derivativeAt(x); };
  return ScalarFunction(ev, ScalarFunction(dv, d), d);
}

ScalarFunction operator+(const ScalarFunction& f, double c) {
  Domain d = f.domain();
  auto ev = [f, c](double x) { return f(x) + c; };
  auto dv = [f](double x) { return f.derivativeAt(x); };
  return ScalarFunction(ev, ScalarFunction(dv, d), d);
}

ScalarFunction operator+(double c, const ScalarFunction& f) { return f + c; }

ScalarFunction operator-(const ScalarFunction& f, double c) { return f + (-c); }

ScalarFunction operator-(double c, const ScalarFunction& f) { return -(f - c); }

ScalarFunction operator*(const ScalarFunction& f, double c) {
  Domain d = f.domain();
  auto ev = [f, c](double x) { return f(x) * c; };
  auto dv = [f, c](double x) { return f.derivativeAt(x) * c; };
  return ScalarFunction(ev, ScalarFunction(dv, d), d);
}

ScalarFunction operator*(double c, const ScalarFunction& f) { return f * c; }

ScalarFunction operator/(const ScalarFunction& f, double c) { return f * (1.0 / c); }

ScalarFunction operator/(double c, const ScalarFunction& f) {
  Domain d = f.domain();
  auto ev = [f, c](double x) { return c / f(x); };
  auto dv = [f, c](double x) {
    double fx = f(x);
    return -c * f.derivativeAt(x) / (fx * fx);
  };
  return ScalarFunction(ev, ScalarFunction(dv, d), d);
}

}  // namespace rforge
