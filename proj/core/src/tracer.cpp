#include "minkcurves/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace minkcurves {

namespace {
thread_local bool t_inside_worker = false;
}

void parallel_for(int n, const std::function<void(int)>& body, int min_items) {
  const int workers = std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 8));
  if (n < min_items || workers == 1 || t_inside_worker) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex m;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      t_inside_worker = true;
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::size_t TracedCurve::vertex_count() const {
  std::size_t n = 0;
  for (const auto& p : polylines) n += p.vertices.size();
  return n;
}

namespace {

struct Grid {
  int n;
  Rect d;
  double hx, hy;
  std::vector<double> v;

  Grid(const FeatureField& f, const Rect& dom, int nodes) : n(nodes), d(dom), v(static_cast<std::size_t>(nodes) * nodes) {
    hx = d.width() / (n - 1);
    hy = d.height() / (n - 1);
    parallel_for(n, [&](int j) {
      const double y = this->y(j);
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j) * n + i] = f(this->x(i), y);
    });
  }
  double x(int i) const { return i == n - 1 ? d.xmax : d.xmin + i * hx; }
  double y(int j) const { return j == n - 1 ? d.ymax : d.ymin + j * hy; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * n + i]; }
  static bool positive(double val) { return val >= 0.0; }
};

CurveVertex bisect_edge(const FeatureField& f, Point2 p0, double v0, Point2 p1, const TraceOptions& opt) {
  // Invariant: sign at p0 is v0's sign, the other end has the opposite sign.
  const bool s0 = Grid::positive(v0);
  Point2 lo = p0, hi = p1;
  Point2 best = p0;
  double best_val = std::abs(v0);
  for (int it = 0; it < opt.max_bisection; ++it) {
    const Point2 mid{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
    const double vm = f(mid);
    if (std::abs(vm) < best_val) {
      best_val = std::abs(vm);
      best = mid;
    }
    if (std::abs(vm) < opt.tolerance && it >= 1) break;
    if (Grid::positive(vm) == s0)
      lo = mid;
    else
      hi = mid;
  }
  const double vhi = std::abs(f(hi));
  if (vhi < best_val) {
    best_val = vhi;
    best = hi;
  }
  return {best.x, best.y, best_val};
}

}  // namespace

TracedCurve trace(const FeatureField& field, const Rect& domain, int n, const TraceOptions& opt) {
  if (n < 16) throw std::invalid_argument("trace: grid size must be at least 16");
  TracedCurve out;
  out.kind = field.kind();
  out.grid = n;
  out.domain = domain;
  const Grid g(field, domain, n);

  const int h_count = (n - 1) * n;
  const int total_edges = h_count + n * (n - 1);
  auto edge_ends = [&](int e, int& i0, int& j0, int& i1, int& j1) {
    if (e < h_count) {
      j0 = e / (n - 1);
      i0 = e % (n - 1);
      i1 = i0 + 1;
      j1 = j0;
    } else {
      const int r = e - h_count;
      j0 = r / n;
      i0 = r % n;
      i1 = i0;
      j1 = j0 + 1;
    }
  };

  std::vector<int> crossing_edges;
  for (int e = 0; e < total_edges; ++e) {
    int i0, j0, i1, j1;
    edge_ends(e, i0, j0, i1, j1);
    if (Grid::positive(g.at(i0, j0)) != Grid::positive(g.at(i1, j1))) crossing_edges.push_back(e);
  }
  std::vector<CurveVertex> verts(crossing_edges.size());
  parallel_for(static_cast<int>(crossing_edges.size()), [&](int k) {
    int i0, j0, i1, j1;
    edge_ends(crossing_edges[k], i0, j0, i1, j1);
    verts[k] = bisect_edge(field, {g.x(i0), g.y(j0)}, g.at(i0, j0), {g.x(i1), g.y(j1)}, opt);
  });
  std::vector<int> vertex_of(total_edges, -1);
  for (std::size_t k = 0; k < crossing_edges.size(); ++k) vertex_of[crossing_edges[k]] = static_cast<int>(k);

  auto hedge = [&](int i, int j) { return j * (n - 1) + i; };
  auto vedge = [&](int i, int j) { return h_count + j * n + i; };

  std::vector<std::array<int, 2>> segments;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      const int e[4] = {vertex_of[hedge(i, j)], vertex_of[vedge(i + 1, j)], vertex_of[hedge(i, j + 1)],
                        vertex_of[vedge(i, j)]};
      int cnt = 0;
      for (int k = 0; k < 4; ++k) cnt += e[k] >= 0;
      if (cnt == 2) {
        int a = -1, b = -1;
        for (int k = 0; k < 4; ++k)
          if (e[k] >= 0) (a < 0 ? a : b) = e[k];
        segments.push_back({a, b});
      } else if (cnt == 4) {
        const double center = field(0.5 * (g.x(i) + g.x(i + 1)), 0.5 * (g.y(j) + g.y(j + 1)));
        if (Grid::positive(center) == Grid::positive(g.at(i, j))) {
          // Corners 0 and 2 connect through the center; cut off corners 1 and 3.
          segments.push_back({e[0], e[1]});
          segments.push_back({e[2], e[3]});
        } else {
          segments.push_back({e[3], e[0]});
          segments.push_back({e[1], e[2]});
        }
      }
    }

  const int nv = static_cast<int>(verts.size());
  std::vector<std::vector<int>> adj(nv);
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    adj[segments[s][0]].push_back(s);
    adj[segments[s][1]].push_back(s);
  }
  std::vector<char> used(segments.size(), 0);
  auto walk = [&](int start) {
    Polyline pl;
    pl.vertices.push_back(verts[start]);
    int cur = start;
    while (true) {
      int next_seg = -1;
      for (int s : adj[cur])
        if (!used[s]) {
          next_seg = s;
          break;
        }
      if (next_seg < 0) break;
      used[next_seg] = 1;
      const int nxt = segments[next_seg][0] == cur ? segments[next_seg][1] : segments[next_seg][0];
      if (nxt == start) {
        pl.closed = true;
        break;
      }
      pl.vertices.push_back(verts[nxt]);
      cur = nxt;
    }
    return pl;
  };
  for (int v = 0; v < nv; ++v)
    if (adj[v].size() == 1 && !used[adj[v][0]]) out.polylines.push_back(walk(v));
  for (int v = 0; v < nv; ++v) {
    const bool open = std::any_of(adj[v].begin(), adj[v].end(), [&](int s) { return !used[s]; });
    if (open) out.polylines.push_back(walk(v));
  }

  // A zero sitting exactly on a node of a one-signed field shows up as a
  // collapsed loop; report it as an isolated point instead.
  std::vector<Polyline> kept;
  for (auto& pl : out.polylines) {
    double spread = 0.0;
    for (const auto& vx : pl.vertices)
      spread = std::max(spread, std::hypot(vx.x - pl.vertices[0].x, vx.y - pl.vertices[0].y));
    if (pl.closed && spread < 1e-9 * std::max(g.hx, 1.0))
      out.isolated.push_back(pl.vertices[0]);
    else
      kept.push_back(std::move(pl));
  }
  out.polylines = std::move(kept);

  if (opt.find_isolated) {
    for (const auto& z : isolated_zeros(field, domain, n, opt.tolerance)) {
      const bool dup = std::any_of(out.isolated.begin(), out.isolated.end(), [&](const CurveVertex& o) {
        return std::hypot(o.x - z.x, o.y - z.y) < 1e-6;
      });
      if (!dup) out.isolated.push_back(z);
    }
  }
  return out;
}

std::vector<CurveVertex> isolated_zeros(const FeatureField& field, const Rect& domain, int n, double tolerance) {
  const Grid g(field, domain, n);
  std::vector<CurveVertex> found;
  for (int j = 1; j + 1 < n; ++j)
    for (int i = 1; i + 1 < n; ++i) {
      const double c = std::abs(g.at(i, j));
      const bool sc = Grid::positive(g.at(i, j));
      bool is_min = true, strict = false, same_sign = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const double vn = g.at(i + di, j + dj);
          if (std::abs(vn) < c) {
            is_min = false;
            break;
          }
          if (std::abs(vn) > c) strict = true;
          if (Grid::positive(vn) != sc) same_sign = false;
        }
      if (!is_min || !strict || !same_sign) continue;
      // Newton on the gradient: the zero of an A1+ field is its critical point.
      double x = g.x(i), y = g.y(j);
      bool ok = true;
      for (int it = 0; it < 40; ++it) {
        const auto gr = field.gradient(x, y);
        const auto H = field.hessian(x, y);
        const double det = H[0] * H[2] - H[1] * H[1];
        if (std::abs(det) < 1e-300) {
          ok = false;
          break;
        }
        const double dx = -(H[2] * gr[0] - H[1] * gr[1]) / det;
        const double dy = -(-H[1] * gr[0] + H[0] * gr[1]) / det;
        x += dx;
        y += dy;
        if (std::hypot(dx, dy) < 1e-15) break;
      }
      if (!ok || std::abs(x - g.x(i)) > 2 * g.hx || std::abs(y - g.y(j)) > 2 * g.hy) continue;
      const auto H = field.hessian(x, y);
      const double hscale = std::max({1.0, std::abs(H[0]), std::abs(H[1]), std::abs(H[2])});
      const double val = std::abs(field(x, y));
      if (val > tolerance * hscale) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const CurveVertex& o) {
        return std::hypot(o.x - x, o.y - y) < 1e-6;
      });
      if (!dup) found.push_back({x, y, val});
    }
  return found;
}

namespace {

bool newton_pair(const FeatureField& a, const FeatureField& b, Point2& p, const Rect& box, const IntersectOptions& opt,
                 double& ra, double& rb) {
  // Past the tolerance keep stepping while the residual still shrinks:
  // near a tangential root the position error is the square root of the
  // residual, so stopping at the tolerance would leave it at 1e-5.
  bool converged = false;
  Point2 best = p;
  double best_r = INFINITY;
  for (int it = 0; it < opt.max_newton; ++it) {
    ra = a(p);
    rb = b(p);
    const double res = std::max(std::abs(ra), std::abs(rb));
    if (converged && !(res < 0.5 * best_r)) break;
    if (res < best_r) {
      best_r = res;
      best = p;
    }
    if (res == 0.0) break;
    if (res < opt.tolerance) converged = true;
    const auto ga = a.gradient(p.x, p.y);
    const auto gb = b.gradient(p.x, p.y);
    // Damped Gauss-Newton so tangential (double) roots still converge.
    const double j00 = ga[0] * ga[0] + gb[0] * gb[0];
    const double j01 = ga[0] * ga[1] + gb[0] * gb[1];
    const double j11 = ga[1] * ga[1] + gb[1] * gb[1];
    const double mu = 1e-14 * (j00 + j11) + 1e-300;
    const double r0 = -(ga[0] * ra + gb[0] * rb);
    const double r1 = -(ga[1] * ra + gb[1] * rb);
    const double det = (j00 + mu) * (j11 + mu) - j01 * j01;
    if (det == 0.0) break;
    const double dx = ((j11 + mu) * r0 - j01 * r1) / det;
    const double dy = (-j01 * r0 + (j00 + mu) * r1) / det;
    p.x += dx;
    p.y += dy;
    if (!box.contains(p)) break;
  }
  p = best;
  ra = a(p);
  rb = b(p);
  return std::abs(ra) < opt.tolerance && std::abs(rb) < opt.tolerance;
}

}  // namespace

std::vector<IntersectionPoint> intersect(const FeatureField& a, const FeatureField& b, const Rect& domain, int n,
                                         std::vector<std::string>* diagnostics, const IntersectOptions& opt) {
  const Grid ga(a, domain, n), gb(b, domain, n);
  std::vector<Point2> seeds;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      auto changes = [&](const Grid& g) {
        const bool s = Grid::positive(g.at(i, j));
        return Grid::positive(g.at(i + 1, j)) != s || Grid::positive(g.at(i, j + 1)) != s ||
               Grid::positive(g.at(i + 1, j + 1)) != s;
      };
      if (!changes(ga) || !changes(gb)) continue;
      const double x0 = ga.x(i), x1 = ga.x(i + 1), y0 = ga.y(j), y1 = ga.y(j + 1);
      seeds.push_back({0.5 * (x0 + x1), 0.5 * (y0 + y1)});
      seeds.push_back({x0, y0});
      seeds.push_back({x1, y0});
      seeds.push_back({x0, y1});
      seeds.push_back({x1, y1});
    }
  for (const auto& z : isolated_zeros(a, domain, n, opt.tolerance)) seeds.push_back({z.x, z.y});
  for (const auto& z : isolated_zeros(b, domain, n, opt.tolerance)) seeds.push_back({z.x, z.y});

  Rect box = domain;
  box.xmin -= ga.hx;
  box.xmax += ga.hx;
  box.ymin -= ga.hy;
  box.ymax += ga.hy;

  struct Result {
    bool ok = false;
    Point2 p;
    double ra = 0, rb = 0;
  };
  std::vector<Result> results(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), [&](int k) {
    Result r;
    r.p = seeds[k];
    r.ok = newton_pair(a, b, r.p, box, opt, r.ra, r.rb);
    results[k] = r;
  });

  std::vector<IntersectionPoint> out;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    if (!r.ok || !domain.contains(r.p)) {
      if (diagnostics && !r.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "newton diverged from seed (%.6g, %.6g) for %s/%s", seeds[k].x, seeds[k].y,
                      to_string(a.kind()).c_str(), to_string(b.kind()).c_str());
        diagnostics->push_back(buf);
      }
      continue;
    }
    // Newton converges only linearly onto a tangential root, so seeds
    // settle at slightly different points; two candidates within a cell
    // are the same root when both fields stay at tolerance between them.
    const double cell = std::hypot(ga.hx, ga.hy);
    auto joined = [&](const Point2& p, const Point2& q) {
      for (double s : {0.25, 0.5, 0.75}) {
        const double x = p.x + s * (q.x - p.x), y = p.y + s * (q.y - p.y);
        if (std::abs(a(x, y)) > 10 * opt.tolerance || std::abs(b(x, y)) > 10 * opt.tolerance) return false;
      }
      return true;
    };
    const bool dup = std::any_of(out.begin(), out.end(), [&](const IntersectionPoint& o) {
      const double d = std::hypot(o.position.x - r.p.x, o.position.y - r.p.y);
      return d < opt.merge_distance || (d < cell && joined(o.position, r.p));
    });
    if (dup) continue;
    IntersectionPoint ip;
    ip.position = r.p;
    ip.a = a.kind();
    ip.b = b.kind();
    ip.residual_a = std::abs(r.ra);
    ip.residual_b = std::abs(r.rb);
    const auto g1 = a.gradient(r.p.x, r.p.y);
    const auto g2 = b.gradient(r.p.x, r.p.y);
    const double n1 = std::hypot(g1[0], g1[1]), n2 = std::hypot(g2[0], g2[1]);
    ip.sin_angle = (n1 > 0 && n2 > 0) ? std::abs(g1[0] * g2[1] - g1[1] * g2[0]) / (n1 * n2) : 0.0;
    ip.transversal = ip.sin_angle > opt.transversal_threshold;
    out.push_back(ip);
  }
  std::sort(out.begin(), out.end(), [](const IntersectionPoint& p, const IntersectionPoint& q) {
    return p.position.x != q.position.x ? p.position.x < q.position.x : p.position.y < q.position.y;
  });
  return out;
}

std::string polylines_csv(const TracedCurve& curve) {
  std::ostringstream os;
  os << "curve_id,x,y,residual\n";
  char buf[128];
  int id = 0;
  for (const auto& pl : curve.polylines) {
    for (const auto& v : pl.vertices) {
      std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.3g\n", id, v.x, v.y, v.residual);
      os << buf;
    }
    ++id;
  }
  for (const auto& v : curve.isolated) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.3g\n", id++, v.x, v.y, v.residual);
    os << buf;
  }
  return os.str();
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string feature_color(FeatureKind k) {
  switch (k) {
    case FeatureKind::LD: return "black";
    case FeatureKind::LPL: return "red";
    case FeatureKind::PC: return "blue";
    case FeatureKind::MCNC: return "green";
  }
  return "gray";
}

std::string curves_svg(const std::vector<TracedCurve>& curves, const Rect& domain, const std::string& caption,
                       const SvgStyle& style) {
  const double W = style.size_px;
  auto sx = [&](double x) { return (x - domain.xmin) / domain.width() * W; };
  auto sy = [&](double y) { return W - (y - domain.ymin) / domain.height() * W; };
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                W, W + 30, W, W + 30);
  os << buf;
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << W << "\" fill=\"white\" stroke=\"#888\"/>\n";
  for (const auto& c : curves) {
    const auto over = style.colors.find(c.kind);
    const std::string col = over != style.colors.end() ? over->second : feature_color(c.kind);
    for (const auto& pl : c.polylines) {
      os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"" << style.stroke << "\" points=\"";
      for (const auto& v : pl.vertices) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(v.x), sy(v.y));
        os << buf;
      }
      if (pl.closed && !pl.vertices.empty()) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(pl.vertices[0].x), sy(pl.vertices[0].y));
        os << buf;
      }
      os << "\"/>\n";
    }
    for (const auto& v : c.isolated) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", sx(v.x), sy(v.y),
                    col.c_str());
      os << buf;
    }
  }
  os << "<text x=\"6\" y=\"" << W + 20 << "\" font-family=\"monospace\" font-size=\"13\">" << xml_escape(caption) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace minkcurves
