#include "minkcurves/bifurcation.hpp"

#include <algorithm>
#include <cmath>

#include "minkcurves/errors.hpp"

namespace minkcurves {

MongePatch FamilySpec::patch_at(double t) const {
  int deg = base.degree();
  for (const auto& p : perturbation) deg = std::max(deg, p.degree());
  Jet2 f = base.f().with_degree(deg);
  double tp = t;
  for (const auto& p : perturbation) {
    f += tp * p.with_degree(deg);
    tp *= t;
  }
  return MongePatch(base.form(), f);
}

double FamilySpec::t_at(int k) const {
  const double lo = std::min(t_min, t_max), hi = std::max(t_min, t_max);
  if (samples <= 1) return 0.5 * (lo + hi);
  const double n1 = samples - 1;
  return lo * ((n1 - k) / n1) + hi * (k / n1);
}

FamilyDerivatives FamilySpec::derivatives(double t) const {
  Jet2 d(2);
  double tp = 1.0;
  for (std::size_t k = 0; k < perturbation.size(); ++k) {
    d += (static_cast<double>(k + 1) * tp) * perturbation[k].with_degree(2);
    tp *= t;
  }
  FamilyDerivatives fd;
  fd.h_xt = d.xy(1, 0);
  fd.h_yt = d.xy(0, 1);
  fd.h_xxt = 2 * d.xy(2, 0);
  fd.h_xyt = d.xy(1, 1);
  fd.h_yyt = 2 * d.xy(0, 2);
  fd.t = t;
  return fd;
}

std::string CountMonitor::name() const {
  switch (type) {
    case Type::Intersections: return to_string(a) + "x" + to_string(b);
    case Type::Components: return "components:" + to_string(a);
    case Type::Umbilics: return "umbilics";
  }
  return "?";
}

std::vector<CountMonitor> default_monitors() {
  std::vector<CountMonitor> m;
  for (std::size_t i = 0; i < kAllFeatures.size(); ++i)
    for (std::size_t j = i + 1; j < kAllFeatures.size(); ++j)
      m.push_back(CountMonitor::intersections(kAllFeatures[i], kAllFeatures[j]));
  for (auto k : kAllFeatures) m.push_back(CountMonitor::components(k));
  m.push_back(CountMonitor::umbilics());
  return m;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::IntersectionCount: return "intersection-count";
    case EventKind::SingularityCount: return "singularity-count";
    case EventKind::ComponentCount: return "component-count";
  }
  return "?";
}

namespace {

// The two curvature-line coefficients kept as independent equations: the
// one multiplying the largest metric weight in E A - F B + G C = 0 is dropped.
std::array<FeatureField, 2> umbilic_pair(const FormBundle& b, const PointForms& at_base) {
  const auto abc = bde_jets(b);
  const double wa = std::abs(at_base.E), wb = std::abs(at_base.F), wc = std::abs(at_base.G);
  int drop = 2;
  if (wa > wc && wa >= wb) drop = 0;
  if (wb > wc && wb > wa) drop = 1;
  std::array<FeatureField, 2> out;
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != drop) out[static_cast<std::size_t>(k++)] = FeatureField(FeatureKind::LPL, abc[static_cast<std::size_t>(i)]);
  return out;
}

PointForms base_forms(const FormBundle& b) {
  PointForms pf;
  pf.E = b.E.constant_term();
  pf.F = b.F.constant_term();
  pf.G = b.G.constant_term();
  return pf;
}

int count_inside(const std::vector<IntersectionPoint>& pts, const Rect& r) {
  int c = 0;
  for (const auto& p : pts) c += r.contains(p.position) ? 1 : 0;
  return c;
}

}  // namespace

std::vector<Point2> umbilics_at(const MongePatch& patch, const Rect& domain, int grid) {
  const FormBundle b = fundamental_forms(patch);
  const auto pair = umbilic_pair(b, base_forms(b));
  std::vector<Point2> out;
  for (const auto& p : intersect(pair[0], pair[1], domain, grid))
    if (domain.contains(p.position)) out.push_back(p.position);
  return out;
}

int count_at(const FamilySpec& spec, double t, const CountMonitor& m) {
  const MongePatch patch = spec.patch_at(t);
  switch (m.type) {
    case CountMonitor::Type::Umbilics:
      return static_cast<int>(umbilics_at(patch, spec.domain, spec.grid).size());
    case CountMonitor::Type::Components: {
      const FeatureSet fs = feature_fields(patch);
      return trace(fs[m.a], spec.domain, spec.grid).component_count();
    }
    case CountMonitor::Type::Intersections: {
      const FeatureSet fs = feature_fields(patch);
      return count_inside(intersect(fs[m.a], fs[m.b], spec.domain, spec.grid), spec.domain);
    }
  }
  return -1;
}

std::vector<UmbilicSet> umbilic_tracker(const FamilySpec& spec) {
  const int n = std::max(1, spec.samples);
  std::vector<UmbilicSet> out(static_cast<std::size_t>(n));
  parallel_for(n, [&](int k) {
    const double t = spec.t_at(k);
    out[static_cast<std::size_t>(k)] = {t, umbilics_at(spec.patch_at(t), spec.domain, spec.grid)};
  }, 2);
  return out;
}

double umbilic_birth_predictor(const FamilySpec& spec) {
  const FormBundle b0 = fundamental_forms(spec.base);
  const PointForms pf = base_forms(b0);
  const auto s0 = umbilic_pair(b0, pf);
  const auto g0 = s0[0].gradient(0, 0), g1 = s0[1].gradient(0, 0);
  const double j00 = g0[0], j01 = g0[1], j10 = g1[0], j11 = g1[1];
  const double jn = std::sqrt(j00 * j00 + j01 * j01 + j10 * j10 + j11 * j11);
  if (std::abs(s0[0](0, 0)) > 1e-9 * std::max(1.0, jn) || std::abs(s0[1](0, 0)) > 1e-9 * std::max(1.0, jn))
    throw WrongScenario("umbilic_birth_predictor: base point is not an umbilic");
  if (jn == 0.0 || std::abs(j00 * j11 - j01 * j10) > 1e-7 * jn * jn)
    throw WrongScenario("umbilic_birth_predictor: coefficient pair does not have rank one");
  // Right and left kernel vectors of the Jacobian.
  std::array<double, 2> r = std::hypot(j00, j01) >= std::hypot(j10, j11) ? std::array<double, 2>{j01, -j00}
                                                                         : std::array<double, 2>{j11, -j10};
  std::array<double, 2> l = std::hypot(j00, j10) >= std::hypot(j01, j11) ? std::array<double, 2>{j10, -j00}
                                                                         : std::array<double, 2>{j11, -j01};
  const double h = 1e-4;
  const FormBundle bp = fundamental_forms(spec.patch_at(h)), bm = fundamental_forms(spec.patch_at(-h));
  const auto sp = umbilic_pair(bp, pf), sm = umbilic_pair(bm, pf);
  const double dt0 = (sp[0](0, 0) - sm[0](0, 0)) / (2 * h);
  const double dt1 = (sp[1](0, 0) - sm[1](0, 0)) / (2 * h);
  auto second = [&](const FeatureField& f) {
    const auto H = f.hessian(0, 0);
    return H[0] * r[0] * r[0] + 2 * H[1] * r[0] * r[1] + H[2] * r[1] * r[1];
  };
  return (l[0] * dt0 + l[1] * dt1) * (l[0] * second(s0[0]) + l[1] * second(s0[1]));
}

SweepResult sweep(const FamilySpec& spec, const SweepOptions& opt) {
  SweepResult res;
  const std::vector<CountMonitor> monitors = opt.monitors.empty() ? default_monitors() : opt.monitors;
  const int n = std::max(2, spec.samples);
  FamilySpec s = spec;
  s.samples = n;
  res.snapshots.resize(static_cast<std::size_t>(n));

  parallel_for(n, [&](int k) {
    SweepSnapshot& snap = res.snapshots[static_cast<std::size_t>(k)];
    snap.t = s.t_at(k);
    const MongePatch patch = s.patch_at(snap.t);
    FeatureSet fs;
    try {
      fs = feature_fields(patch);
    } catch (const std::exception& e) {
      snap.failures.push_back(std::string("fields: ") + e.what());
      for (const auto& m : monitors) snap.counts[m.name()] = -1;
      return;
    }
    if (opt.keep_curves) {
      for (auto kind : kAllFeatures) {
        try {
          snap.curves.push_back(trace(fs[kind], s.domain, s.grid));
        } catch (const std::exception& e) {
          snap.failures.push_back("trace " + to_string(kind) + ": " + e.what());
        }
      }
    }
    for (const auto& m : monitors) {
      int c = -1;
      try {
        switch (m.type) {
          case CountMonitor::Type::Intersections: {
            auto pts = intersect(fs[m.a], fs[m.b], s.domain, s.grid);
            c = count_inside(pts, s.domain);
            for (auto& p : pts)
              if (s.domain.contains(p.position)) snap.intersections.push_back(p);
            break;
          }
          case CountMonitor::Type::Components: {
            bool found = false;
            for (const auto& tc : snap.curves)
              if (tc.kind == m.a) {
                c = tc.component_count();
                found = true;
              }
            if (!found) c = trace(fs[m.a], s.domain, s.grid).component_count();
            break;
          }
          case CountMonitor::Type::Umbilics:
            snap.umbilics = umbilics_at(patch, s.domain, s.grid);
            c = static_cast<int>(snap.umbilics.size());
            break;
        }
      } catch (const std::exception& e) {
        snap.failures.push_back(m.name() + ": " + e.what());
      }
      snap.counts[m.name()] = c;
    }
  }, 2);

  for (const auto& snap : res.snapshots)
    for (const auto& f : snap.failures) res.log.push_back("t=" + std::to_string(snap.t) + " " + f);

  const double width = opt.resolution * (s.t_at(n - 1) - s.t_at(0));
  for (const auto& m : monitors) {
    const std::string name = m.name();
    const EventKind kind = m.type == CountMonitor::Type::Intersections ? EventKind::IntersectionCount
                           : m.type == CountMonitor::Type::Components  ? EventKind::ComponentCount
                                                                       : EventKind::SingularityCount;
    for (int k = 0; k + 1 < n; ++k) {
      int c_lo = res.snapshots[static_cast<std::size_t>(k)].counts[name];
      const int c_end = res.snapshots[static_cast<std::size_t>(k + 1)].counts[name];
      if (c_lo < 0 || c_end < 0) {
        if (c_lo != c_end) res.log.push_back(name + ": count unavailable near t=" + std::to_string(s.t_at(k)));
        continue;
      }
      double l = s.t_at(k);
      const double r_end = s.t_at(k + 1);
      // Several changes may share one sample interval; peel them off in order.
      while (c_lo != c_end) {
        double h = r_end;
        int c_h = c_end;
        bool closed = true;
        while (h - l > width) {
          const double mid = 0.5 * (l + h);
          int c_m = -1;
          try {
            c_m = count_at(s, mid, m);
          } catch (const std::exception& e) {
            res.log.push_back(name + ": bisection failed at t=" + std::to_string(mid) + ": " + e.what());
          }
          if (c_m < 0) {
            closed = false;
            break;
          }
          if (c_m != c_lo) {
            h = mid;
            c_h = c_m;
          } else {
            l = mid;
          }
        }
        if (!closed) {
          res.all_brackets_closed = false;
          break;
        }
        BifurcationEvent ev;
        ev.t_lo = l;
        ev.t_hi = h;
        ev.t = 0.5 * (l + h);
        ev.kind = kind;
        ev.monitor = name;
        ev.before = c_lo;
        ev.after = c_h;
        res.events.push_back(ev);
        l = h;
        c_lo = c_h;
      }
    }
  }
  std::sort(res.events.begin(), res.events.end(), [](const BifurcationEvent& a, const BifurcationEvent& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.monitor < b.monitor;
  });
  return res;
}

namespace {

struct Reduction {
  Jet2 u, v;
};

Reduction reduction_coordinates(const std::array<double, 2>& kernel, int degree) {
  Reduction r{Jet2(degree), Jet2(degree)};
  if (std::abs(kernel[1]) >= std::abs(kernel[0])) {
    r.u.set(1, 0, 1.0);
    r.u.set(1, 1, kernel[0]);
    r.v.set(1, 1, 1.0);
  } else {
    r.u.set(1, 1, 1.0);
    r.v.set(1, 0, 1.0);
    r.v.set(1, 1, kernel[1]);
  }
  return r;
}

// The field in reduction coordinates (X transverse, y along the kernel),
// and its reduced function g(y) = phi(X*(y), y) with d phi / dX (X*(y), y) = 0.
struct ReducedField {
  Reduction red;
  Jet2 phi;
  double x0 = 0.0;
  Series g;

  // Point of the original chart on the critical curve over kernel coordinate y.
  Point2 lift(double y) const {
    const Jet2 dphi = differentiate(phi, Var::X), dd = differentiate(dphi, Var::X);
    double X = x0;
    for (int it = 0; it < 50; ++it) {
      const double df = dd(X, y);
      if (df == 0.0) break;
      const double step = dphi(X, y) / df;
      X -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(X))) break;
    }
    return {red.u(X, y), red.v(X, y)};
  }
};

ReducedField reduce_field(const Jet2& field, const std::array<double, 2>& kernel, int order) {
  const int deg = std::max(field.degree(), order);
  ReducedField r{reduction_coordinates(kernel, deg), Jet2(deg), 0.0, {}};
  r.phi = compose(field.with_degree(deg), r.red.u, r.red.v);
  const Jet2 dphi = differentiate(r.phi, Var::X);
  const Jet2 dd = differentiate(dphi, Var::X);
  for (int it = 0; it < 30; ++it) {
    const double f = dphi(r.x0, 0.0), df = dd(r.x0, 0.0);
    if (df == 0.0) break;
    const double step = f / df;
    r.x0 -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r.x0))) break;
  }
  const Jet2 shifted = recenter(r.phi, r.x0, 0.0);
  Jet2 d = differentiate(shifted, Var::X);
  d.set(0, 0, 0.0);
  const Series g = ift_series(d, Var::X, order);
  r.g = restrict_to_graph(shifted, Var::X, g, order);
  return r;
}

// Sum of |terms| of the jet at p: the rounding scale of evaluating it there.
double evaluation_scale(const Jet2& j, Point2 p) {
  double s = 0.0;
  for (const auto& c : j.coefficients())
    s += std::abs(c.value) * std::pow(std::abs(p.x), c.s - c.i) * std::pow(std::abs(p.y), c.i);
  return s;
}

// Newton on the gradient; returns the point with the smallest gradient seen.
Point2 polish_critical_point(const FeatureField& f, Point2 p) {
  Point2 best = p;
  auto gnorm = [&](Point2 q) {
    const auto g = f.gradient(q.x, q.y);
    return std::hypot(g[0], g[1]);
  };
  double best_g = gnorm(p);
  for (int it = 0; it < 40 && best_g > 0.0; ++it) {
    const auto g = f.gradient(p.x, p.y);
    const auto h = f.hessian(p.x, p.y);
    const double det = h[0] * h[2] - h[1] * h[1];
    if (det == 0.0) break;
    p = {p.x - (h[2] * g[0] - h[1] * g[1]) / det, p.y - (h[0] * g[1] - h[1] * g[0]) / det};
    const double gn = gnorm(p);
    if (!(gn < best_g)) break;
    best = p;
    best_g = gn;
  }
  return best;
}

std::array<double, 3> depressed_quartic(const Series& e) {
  const double b3 = e[3] / e[4], b2 = e[2] / e[4], b1 = e[1] / e[4], b0 = e[0] / e[4];
  const double p = b2 - 3 * b3 * b3 / 8;
  const double q = b1 - b3 * b2 / 2 + b3 * b3 * b3 / 8;
  const double r = b0 - b3 * b1 / 4 + b3 * b3 * b2 / 16 - 3 * b3 * b3 * b3 * b3 / 256;
  return {p, q, r};
}

Series multiply_truncated(const Series& a, const Series& b, std::size_t n) {
  Series out(n + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// p(s(Y)) truncated at degree n; s has no constant term.
Series compose_truncated(const Series& p, const Series& s, std::size_t n) {
  Series out(n + 1, 0.0), pw(n + 1, 0.0);
  pw[0] = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j > 0) pw = multiply_truncated(pw, s, n);
    for (std::size_t k = 0; k <= n; ++k) out[k] += p[j] * pw[k];
  }
  return out;
}

double evaluate(const Series& p, double y) {
  double r = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) r = r * y + p[k];
  return r;
}

struct QuarticModel {
  double sign = 1.0;    // Q = sign * g
  Series quartic;       // Q(Y) = q0 + ... + q4 Y^4, q4 > 0
  Series substitution;  // y(Y), so that g(y(Y)) = Q(Y) through the series order
  std::array<double, 3> w{};
  double residual = 0.0;
  double rho = 0.0;
};

// Removes the terms above degree 4 by substitutions y = Y + c Y^(k-3),
// which the 4-determinacy of an A3 germ allows. Lower coefficients pick up
// the corrections that plain truncation would drop.
QuarticModel normalize_quartic(Series g) {
  const double sign = g[4] < 0 ? -1.0 : 1.0;
  for (auto& c : g) c *= sign;
  const Series original = g;
  const std::size_t n = g.size() - 1;
  double scale = 0.0;
  for (double c : g) scale = std::max(scale, std::abs(c));
  Series y(n + 1, 0.0);
  y[1] = 1.0;
  for (int pass = 0; pass < 50; ++pass) {
    for (std::size_t k = 5; k <= n; ++k) {
      const double c = -g[k] / (4 * g[4]);
      if (c == 0.0) continue;
      Series s(n + 1, 0.0);
      s[1] = 1.0;
      s[k - 3] += c;
      g = compose_truncated(g, s, n);
      y = compose_truncated(y, s, n);
    }
    double worst = 0.0;
    for (std::size_t k = 5; k <= n; ++k) worst = std::max(worst, std::abs(g[k]));
    if (worst <= 1e-15 * std::abs(g[4])) break;
  }
  QuarticModel m;
  m.sign = sign;
  m.quartic.assign(g.begin(), g.begin() + 5);
  // Coefficients at rounding level of the reduction are zero.
  for (std::size_t j = 0; j < 4; ++j)
    if (std::abs(m.quartic[j]) <= 1e-13 * scale) m.quartic[j] = 0.0;
  m.substitution = y;
  m.w = depressed_quartic(m.quartic);
  for (auto& c : m.w)
    if (std::abs(c) <= 1e-13 * scale / m.quartic[4]) c = 0.0;

  const double shift = std::abs(m.quartic[3] / (4 * m.quartic[4]));
  m.rho = 2 * std::max({std::sqrt(std::abs(m.w[0])), std::cbrt(std::abs(m.w[1])), std::pow(std::abs(m.w[2]), 0.25),
                        1e-3}) + shift;
  double worst = 0.0, size = 0.0;
  for (int i = -16; i <= 16; ++i) {
    const double Y = m.rho * i / 16.0;
    const double q = evaluate(m.quartic, Y);
    worst = std::max(worst, std::abs(evaluate(original, evaluate(y, Y)) - q));
    size = std::max(size, std::abs(q));
  }
  m.residual = size > 0 ? worst / size : 0.0;
  return m;
}

// Root pattern of the reduced function. The quartic model places the
// critical points; their values are read from the field at the lifted,
// polished points, where evaluation is accurate to the local term size.
std::vector<RealRoot> sample_root_pattern(const QuarticModel& m, const ReducedField& rf, const FeatureField& f,
                                          bool* confident) {
  const Series& q = m.quartic;
  const Series dq{q[1], 2 * q[2], 3 * q[3], 4 * q[4]};
  double bound = 0.0;
  for (std::size_t j = 0; j < 4; ++j) bound = std::max(bound, std::abs(q[j] / q[4]));
  bound = 2 * (1 + bound);
  double vscale = 0.0;
  for (int i = -16; i <= 16; ++i) vscale = std::max(vscale, std::abs(evaluate(q, m.rho * i / 16.0)));

  struct Node {
    double Y;
    double value;
    int touch;
  };
  std::vector<Node> nodes{{-bound, 1.0, 0}};
  bool ok = true;
  for (const auto& c : real_root_pattern(dq, -bound, bound, 1e-8)) {
    const Point2 p = polish_critical_point(f, rf.lift(evaluate(m.substitution, c.value)));
    double v = m.sign * f(p);
    const double tol = std::max(1e-8 * vscale, 1e3 * 2.2e-16 * evaluation_scale(f.jet(), p));
    int touch = 0;
    if (std::abs(v) <= tol) {
      touch = c.multiplicity + 1;
      v = 0.0;
    } else if (std::abs(v) <= 1e3 * tol) {
      ok = false;
    }
    nodes.push_back({c.value, v, touch});
  }
  nodes.push_back({bound, 1.0, 0});

  std::vector<RealRoot> roots;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Node& a = nodes[k];
    const Node& b = nodes[k + 1];
    if (a.touch || b.touch || (a.value > 0) == (b.value > 0)) continue;
    double lo = a.Y, hi = b.Y;
    const bool rising = b.value > a.value;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ((evaluate(q, mid) > 0) == rising ? hi : lo) = mid;
    }
    roots.push_back({0.5 * (lo + hi), 1});
  }
  for (const auto& n : nodes)
    if (n.touch) roots.push_back({n.Y, n.touch});
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  if (confident) *confident = ok;
  return roots;
}

}  // namespace

A3Path a3_deformation_path(const FamilySpec& spec, FeatureKind field, const A3PathOptions& opt) {
  A3Path path;
  const FeatureSet base_fs = feature_fields(spec.base);
  path.base = classify_singularity(base_fs[field], Point2{});
  if (path.base.label != SingularityLabel::A3Plus && path.base.label != SingularityLabel::A3Minus)
    throw WrongScenario("a3_deformation_path: base field has no A3 point at the origin");
  const auto kernel = path.base.kernel;
  const int order = std::max(6, opt.series_order);

  const int n = std::max(1, spec.samples);
  std::vector<A3PathSample> out(static_cast<std::size_t>(n));
  parallel_for(n, [&](int k) {
    A3PathSample& smp = out[static_cast<std::size_t>(k)];
    smp.t = spec.t_at(k);
    const FeatureField f = feature_fields(spec.patch_at(smp.t))[field];
    const ReducedField rf = reduce_field(f.jet(), kernel, order);
    const QuarticModel m = normalize_quartic(rf.g);
    smp.w = m.w;
    smp.residual = m.residual;
    smp.quartic_stratum = swallowtail_stratum(m.w[0], m.w[1], m.w[2]).stratum;
    bool ok = true;
    smp.point.u = m.w[0];
    smp.point.v = m.w[1];
    smp.point.w = m.w[2];
    smp.point.roots = sample_root_pattern(m, rf, f, &ok);
    smp.point.confident = ok;
    smp.point.stratum = stratum_from_roots(smp.point.roots);
  }, 2);
  for (const auto& smp : out)
    if (smp.residual > opt.max_residual)
      throw FitResidualTooLarge("a3_deformation_path: quartic model residual too large", smp.residual);
  path.samples = std::move(out);

  auto w_at = [&](double t) {
    return normalize_quartic(reduce_field(feature_fields(spec.patch_at(t))[field].jet(), kernel, order).g).w;
  };
  const double h = 1e-3 * std::max(std::abs(spec.t_max - spec.t_min) / 2, 1e-6);
  const auto wp = w_at(h), wm = w_at(-h);
  for (int i = 0; i < 3; ++i) path.tangent[static_cast<std::size_t>(i)] = (wp[i] - wm[i]) / (2 * h);
  return path;
}

}  // namespace minkcurves
