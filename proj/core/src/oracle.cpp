#include "minkcurves/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minkcurves/errors.hpp"

namespace minkcurves::oracle {

OracleReport OracleReport::make(std::string quantity, double main_value, double oracle_value) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.main_value = main_value;
  r.oracle_value = oracle_value;
  r.abs_discrepancy = std::abs(main_value - oracle_value);
  const double s = std::max(std::abs(main_value), std::abs(oracle_value));
  r.rel_discrepancy = s > 0 ? r.abs_discrepancy / s : 0.0;
  return r;
}

RawSurface::RawSurface(MongeForm form, std::vector<Term> terms, CrossConvention conv)
    : form_(form), terms_(std::move(terms)), conv_(conv) {}

RawSurface RawSurface::from_patch(const MongePatch& patch, CrossConvention conv) {
  std::vector<Term> terms;
  for (const auto& c : patch.f().coefficients())
    if (c.value != 0.0) terms.push_back({c.s - c.i, c.i, c.value});
  return RawSurface(patch.form(), std::move(terms), conv);
}

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

struct V3 {
  double a, b, c;
};

double mink(const V3& u, const V3& v) { return u.a * v.a + u.b * v.b - u.c * v.c; }

// Normal with <N, w> = det(u, v, w).
V3 normal(const V3& u, const V3& v) {
  return {u.b * v.c - u.c * v.b, u.c * v.a - u.a * v.c, u.b * v.a - u.a * v.b};
}

}  // namespace

std::array<double, 6> RawSurface::height(double x, double y) const {
  std::array<double, 6> h{};
  for (const auto& t : terms_) {
    const double c = t.c;
    h[0] += c * ipow(x, t.p) * ipow(y, t.q);
    if (t.p >= 1) h[1] += c * t.p * ipow(x, t.p - 1) * ipow(y, t.q);
    if (t.q >= 1) h[2] += c * t.q * ipow(x, t.p) * ipow(y, t.q - 1);
    if (t.p >= 2) h[3] += c * t.p * (t.p - 1) * ipow(x, t.p - 2) * ipow(y, t.q);
    if (t.p >= 1 && t.q >= 1) h[4] += c * t.p * t.q * ipow(x, t.p - 1) * ipow(y, t.q - 1);
    if (t.q >= 2) h[5] += c * t.q * (t.q - 1) * ipow(x, t.p) * ipow(y, t.q - 2);
  }
  return h;
}

std::array<double, 6> RawSurface::forms(double x, double y) const {
  const auto h = height(x, y);
  V3 xu, xv, xuu, xuv, xvv;
  if (form_ == MongeForm::TimelikeGraph) {
    xu = {1, h[1], 0};
    xv = {0, h[2], 1};
    xuu = {0, h[3], 0};
    xuv = {0, h[4], 0};
    xvv = {0, h[5], 0};
  } else {
    xu = {1, 0, h[1]};
    xv = {0, 1, h[2]};
    xuu = {0, 0, h[3]};
    xuv = {0, 0, h[4]};
    xvv = {0, 0, h[5]};
  }
  V3 n = normal(xu, xv);
  if (conv_ == CrossConvention::Flipped) n = {-n.a, -n.b, -n.c};
  return {mink(xu, xu), mink(xu, xv), mink(xv, xv), mink(n, xuu), mink(n, xuv), mink(n, xvv)};
}

double RawSurface::field(FeatureKind kind, double x, double y) const {
  const auto f = forms(x, y);
  const double E = f[0], F = f[1], G = f[2], l = f[3], m = f[4], n = f[5];
  switch (kind) {
    case FeatureKind::LD: return F * F - E * G;
    case FeatureKind::LPL: {
      const double a = G * m - F * n, b = G * l - E * n, c = F * l - E * m;
      return b * b - 4 * a * c;
    }
    case FeatureKind::PC: return l * n - m * m;
    case FeatureKind::MCNC: return l * G - 2 * m * F + n * E;
  }
  return 0.0;
}

Evaluator RawSurface::evaluator(FeatureKind kind) const {
  const RawSurface copy = *this;
  return [copy, kind](double x, double y) { return copy.field(kind, x, y); };
}

Derivatives fd_derivatives(const Evaluator& f, double x, double y, int order, double h, double h_hessian) {
  Derivatives d;
  d.value = f(x, y);
  auto grad = [&](double s) {
    return std::array<double, 2>{(f(x + s, y) - f(x - s, y)) / (2 * s), (f(x, y + s) - f(x, y - s)) / (2 * s)};
  };
  const auto g1 = grad(h), g2 = grad(h / 2);
  d.gradient = {(4 * g2[0] - g1[0]) / 3, (4 * g2[1] - g1[1]) / 3};
  if (order >= 2) {
    auto hess = [&](double s) {
      const double f0 = d.value;
      const double fxx = (f(x + s, y) - 2 * f0 + f(x - s, y)) / (s * s);
      const double fyy = (f(x, y + s) - 2 * f0 + f(x, y - s)) / (s * s);
      const double fxy = (f(x + s, y + s) - f(x + s, y - s) - f(x - s, y + s) + f(x - s, y - s)) / (4 * s * s);
      return std::array<double, 3>{fxx, fxy, fyy};
    };
    const auto h1 = hess(h_hessian), h2 = hess(h_hessian / 2);
    for (int k = 0; k < 3; ++k) d.hessian[static_cast<std::size_t>(k)] = (4 * h2[k] - h1[k]) / 3;
  }
  return d;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Compass search on |f| from (x, y) within a box of half-width `radius`.
Point2 refine_minimum(const Evaluator& f, double x, double y, double radius, double& value) {
  double step = radius / 2;
  value = std::abs(f(x, y));
  const double x0 = x, y0 = y;
  while (step > 1e-15 * (1.0 + radius)) {
    bool moved = false;
    const double dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : dirs) {
      const double nx = x + step * d[0], ny = y + step * d[1];
      if (std::abs(nx - x0) > radius || std::abs(ny - y0) > radius) continue;
      const double v = std::abs(f(nx, ny));
      if (v < value) {
        value = v;
        x = nx;
        y = ny;
        moved = true;
        break;
      }
    }
    if (!moved) step /= 2;
  }
  return {x, y};
}

}  // namespace

Census grid_zero_census(const Evaluator& f, const Rect& domain, int n, double tol) {
  Census c;
  const double hx = domain.width() / (n - 1), hy = domain.height() / (n - 1);
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j) * n + i]; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) at(i, j) = f(domain.xmin + i * hx, domain.ymin + j * hy);

  const int cells = n - 1;
  std::vector<char> crossed(static_cast<std::size_t>(cells) * cells, 0);
  auto cell = [&](int i, int j) { return j * cells + i; };
  for (int j = 0; j < cells; ++j)
    for (int i = 0; i < cells; ++i) {
      const double q[4] = {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
      bool pos = false, neg = false;
      for (double x : q) (x < 0 ? neg : pos) = true;
      crossed[static_cast<std::size_t>(cell(i, j))] = pos && neg;
    }
  UnionFind uf(cells * cells);
  for (int j = 0; j < cells; ++j)
    for (int i = 0; i < cells; ++i) {
      if (!crossed[static_cast<std::size_t>(cell(i, j))]) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= cells || jj >= cells) continue;
          if (crossed[static_cast<std::size_t>(cell(ii, jj))]) uf.unite(cell(i, j), cell(ii, jj));
        }
    }
  for (int k = 0; k < cells * cells; ++k)
    if (crossed[static_cast<std::size_t>(k)] && uf.find(k) == k) ++c.components;

  auto near_crossing = [&](int i, int j) {
    for (int dj = -1; dj <= 0; ++dj)
      for (int di = -1; di <= 0; ++di) {
        const int ii = i + di, jj = j + dj;
        if (ii >= 0 && jj >= 0 && ii < cells && jj < cells && crossed[static_cast<std::size_t>(cell(ii, jj))])
          return true;
      }
    return false;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double s = at(i, j) * at(i, j);
      bool strict_min = true;
      for (int dj = -1; dj <= 1 && strict_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          const double o = at(ii, jj) * at(ii, jj);
          if (o < s || (o == s && (dj < 0 || (dj == 0 && di < 0)))) {
            strict_min = false;
            break;
          }
        }
      if (!strict_min || near_crossing(i, j)) continue;
      double val = 0;
      const Point2 p = refine_minimum(f, domain.xmin + i * hx, domain.ymin + j * hy, std::max(hx, hy), val);
      if (val > tol || !domain.contains(p)) continue;
      const bool dup = std::any_of(c.isolated_points.begin(), c.isolated_points.end(), [&](const Point2& q) {
        return std::hypot(q.x - p.x, q.y - p.y) < 0.5 * std::min(hx, hy);
      });
      if (!dup) c.isolated_points.push_back(p);
    }
  c.isolated = static_cast<int>(c.isolated_points.size());
  return c;
}

Census intersection_census(const Evaluator& f, const Evaluator& g, const Rect& domain, int n, double tol) {
  auto mean_grad = [&](const Evaluator& e) {
    double s = 0;
    int k = 0;
    for (int j = 0; j < 9; ++j)
      for (int i = 0; i < 9; ++i) {
        const double x = domain.xmin + domain.width() * i / 8.0, y = domain.ymin + domain.height() * j / 8.0;
        const auto d = fd_derivatives(e, x, y, 1);
        s += std::hypot(d.gradient[0], d.gradient[1]);
        ++k;
      }
    return std::max(s / k, 1e-300);
  };
  const double sf = mean_grad(f), sg = mean_grad(g);
  const Evaluator h = [&](double x, double y) { return std::hypot(f(x, y) / sf, g(x, y) / sg); };

  // Seeds are grid minima of h; each is polished by Newton on (f, g) with a
  // finite-difference Jacobian, since compass search stalls in the narrow
  // valleys of shallow crossings.
  const double hx = domain.width() / (n - 1), hy = domain.height() / (n - 1);
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j) * n + i] = h(domain.xmin + i * hx, domain.ymin + j * hy);

  Census c;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      bool local_min = true;
      for (int dj = -1; dj <= 1 && local_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di, jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (at(ii, jj) < at(i, j)) {
            local_min = false;
            break;
          }
        }
      if (!local_min) continue;
      double x = domain.xmin + i * hx, y = domain.ymin + j * hy;
      for (int it = 0; it < 50; ++it) {
        const auto df = fd_derivatives(f, x, y, 1), dg = fd_derivatives(g, x, y, 1);
        const double det = df.gradient[0] * dg.gradient[1] - df.gradient[1] * dg.gradient[0];
        if (det == 0.0) break;
        const double dx = (df.value * dg.gradient[1] - dg.value * df.gradient[1]) / det;
        const double dy = (dg.value * df.gradient[0] - df.value * dg.gradient[0]) / det;
        x -= dx;
        y -= dy;
        if (std::hypot(dx, dy) < 1e-15 * (1 + std::hypot(x, y))) break;
        if (std::hypot(x - domain.xmin - i * hx, y - domain.ymin - j * hy) > 4 * std::max(hx, hy)) break;
      }
      const Point2 p{x, y};
      if (!domain.contains(p) || h(x, y) > tol) continue;
      if (std::hypot(x - domain.xmin - i * hx, y - domain.ymin - j * hy) > 4 * std::max(hx, hy)) continue;
      const bool dup = std::any_of(c.isolated_points.begin(), c.isolated_points.end(), [&](const Point2& q) {
        return std::hypot(q.x - p.x, q.y - p.y) < 0.5 * std::min(hx, hy);
      });
      if (!dup) c.isolated_points.push_back(p);
    }
  c.isolated = static_cast<int>(c.isolated_points.size());
  return c;
}

int numeric_contact(const TracedCurve& curve_a, const Evaluator& a, const Evaluator& b, Point2 p, double dmin,
                    double dmax, double* slope_out) {
  std::vector<double> lx, ly;
  double bscale = 0.0;
  for (const auto& pl : curve_a.polylines)
    for (const auto& v : pl.vertices) bscale = std::max(bscale, std::abs(b(v.x, v.y)));
  for (const auto& pl : curve_a.polylines)
    for (const auto& v : pl.vertices) {
      double x = v.x, y = v.y;
      for (int it = 0; it < 4; ++it) {
        const auto d = fd_derivatives(a, x, y, 1);
        const double n2 = d.gradient[0] * d.gradient[0] + d.gradient[1] * d.gradient[1];
        if (n2 == 0.0) break;
        x -= d.value * d.gradient[0] / n2;
        y -= d.value * d.gradient[1] / n2;
      }
      const double dist = std::hypot(x - p.x, y - p.y);
      if (dist < dmin || dist > dmax) continue;
      const double bv = std::abs(b(x, y));
      if (bv <= 1e-13 * std::max(1.0, bscale)) continue;
      lx.push_back(std::log(dist));
      ly.push_back(std::log(bv));
    }
  if (lx.size() < 6) throw InsufficientPolylineResolution("numeric_contact: too few vertices in range");
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (slope_out) *slope_out = slope;
  return static_cast<int>(std::lround(slope));
}

}  // namespace minkcurves::oracle
