#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "minkcurves/bifurcation.hpp"

namespace minkcurves {

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::Open0Roots: return "open-0-roots";
    case Stratum::Open2Roots: return "open-2-roots";
    case Stratum::Open4Roots: return "open-4-roots";
    case Stratum::SheetNoExtraRoots: return "sheet-with-0-extra-roots";
    case Stratum::SheetTwoExtraRoots: return "sheet-with-2-extra-roots";
    case Stratum::CuspidalEdge: return "cuspidal-edge";
    case Stratum::SelfIntersection: return "self-intersection";
    case Stratum::Origin: return "origin";
  }
  return "?";
}

std::string numeral(Stratum s) {
  switch (s) {
    case Stratum::SheetNoExtraRoots: return "II";
    case Stratum::CuspidalEdge: return "III";
    case Stratum::SelfIntersection: return "IV";
    case Stratum::SheetTwoExtraRoots: return "VI";
    default: return "";
  }
}

std::array<double, 3> swallowtail_phi(double u, double y) {
  return {u, -4 * y * y * y - 2 * u * y, 3 * y * y * y * y + u * y * y};
}

namespace {

using Poly = std::vector<double>;

double eval(const Poly& p, double x) {
  double r = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

// Sum of |c_k x^k|: the rounding scale of an evaluation at x.
double local_scale(const Poly& p, double x) {
  double r = 0.0, xp = 1.0;
  for (double c : p) {
    r += std::abs(c) * xp;
    xp *= std::abs(x);
  }
  return r;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  return d;
}

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
  return p;
}

// Real eigenvalues of the companion matrix, Newton-polished.
std::vector<double> real_roots(const Poly& raw) {
  const Poly p = trim(raw);
  std::vector<double> out;
  if (p.size() < 2) return out;
  const int d = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  const Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  const Poly dp = derivative(p);
  for (int i = 0; i < d; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
    double x = z.real();
    for (int it = 0; it < 5; ++it) {
      const double fx = eval(p, x), dx = eval(dp, x);
      if (dx == 0.0) break;
      const double nx = x - fx / dx;
      if (std::abs(eval(p, nx)) >= std::abs(fx)) break;
      x = nx;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<RealRoot> real_root_pattern(const std::vector<double>& ascending, double lo, double hi,
                                        double cluster_tol, bool* confident) {
  bool ok = true;
  std::vector<RealRoot> roots;
  Poly p = trim(ascending);
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros] == 0.0) ++zeros;
  if (zeros == p.size()) {
    if (confident) *confident = false;
    return roots;
  }
  if (zeros > 0 && lo <= 0.0 && hi >= 0.0) roots.push_back({0.0, static_cast<int>(zeros)});
  const Poly q(p.begin() + static_cast<long>(zeros), p.end());
  if (q.size() < 2) {
    if (confident) *confident = ok;
    return roots;
  }
  const Poly q1 = derivative(q), q2 = derivative(q1), q3 = derivative(q2);

  // Candidate critical points: roots of q', plus roots of q'' where q'
  // nearly vanishes (a triple root splits the double root of q').
  struct Crit {
    double x;
    double slope;
  };
  std::vector<Crit> cand;
  for (double x : real_roots(q1))
    if (x > lo && x < hi) cand.push_back({x, std::abs(eval(q1, x))});
  const double sq_tol = std::sqrt(cluster_tol);
  for (double x : real_roots(q2))
    if (x > lo && x < hi && std::abs(eval(q1, x)) <= sq_tol * std::max(local_scale(q1, x), 1e-300))
      cand.push_back({x, std::abs(eval(q1, x))});
  std::sort(cand.begin(), cand.end(), [](const Crit& a, const Crit& b) { return a.x < b.x; });
  std::vector<Crit> crit;
  for (const auto& c : cand) {
    if (!crit.empty() && std::abs(c.x - crit.back().x) <= 1e-6 * (1.0 + std::abs(c.x))) {
      if (c.slope < crit.back().slope) crit.back() = c;
      continue;
    }
    crit.push_back(c);
  }

  struct Node {
    double x;
    double value;
    int touch;  // multiplicity when the value vanishes, else 0
  };
  std::vector<Node> nodes;
  nodes.push_back({lo, eval(q, lo), 0});
  for (const auto& c : crit) {
    const double v = eval(q, c.x);
    const double s0 = std::max(local_scale(q, c.x), 1e-300);
    int mult = 0;
    if (std::abs(v) <= cluster_tol * s0) {
      mult = 2;
      if (std::abs(eval(q2, c.x)) <= sq_tol * std::max(local_scale(q2, c.x), 1e-300)) {
        mult = 3;
        if (q3.size() > 0 && std::abs(eval(q3, c.x)) <= sq_tol * std::max(local_scale(q3, c.x), 1e-300)) mult = 4;
      }
    } else if (std::abs(v) <= 1e3 * cluster_tol * s0) {
      ok = false;
    }
    nodes.push_back({c.x, v, mult});
  }
  nodes.push_back({hi, eval(q, hi), 0});

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Node& a = nodes[k];
    const Node& b = nodes[k + 1];
    if (a.touch || b.touch) continue;
    if (a.value == 0.0 || b.value == 0.0 || (a.value > 0) == (b.value > 0)) continue;
    double l = a.x, h = b.x;
    const bool rising = b.value > a.value;
    for (int it = 0; it < 200 && h - l > 0; ++it) {
      const double m = 0.5 * (l + h);
      if (m <= l || m >= h) break;
      ((eval(q, m) > 0) == rising ? h : l) = m;
    }
    roots.push_back({0.5 * (l + h), 1});
  }
  for (const auto& n : nodes)
    if (n.touch) roots.push_back({n.x, n.touch});
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  if (confident) *confident = ok;
  return roots;
}

Stratum stratum_from_roots(const std::vector<RealRoot>& roots) {
  int simple = 0, doubles = 0, top = 1;
  for (const auto& r : roots) {
    top = std::max(top, r.multiplicity);
    if (r.multiplicity == 1) ++simple;
    if (r.multiplicity == 2) ++doubles;
  }
  if (top >= 4) return Stratum::Origin;
  if (top == 3) return Stratum::CuspidalEdge;
  if (doubles >= 2) return Stratum::SelfIntersection;
  if (doubles == 1) return simple == 0 ? Stratum::SheetNoExtraRoots : Stratum::SheetTwoExtraRoots;
  if (simple >= 4) return Stratum::Open4Roots;
  if (simple >= 2) return Stratum::Open2Roots;
  return Stratum::Open0Roots;
}

SwallowtailPoint swallowtail_stratum(double u, double v, double w, double cluster_tol) {
  SwallowtailPoint sp;
  sp.u = u;
  sp.v = v;
  sp.w = w;
  const double bound = 1.0 + std::max({std::abs(u), std::abs(v), std::abs(w)});
  bool ok = true;
  sp.roots = real_root_pattern({w, v, u, 0.0, 1.0}, -2 * bound, 2 * bound, cluster_tol, &ok);
  int count = 0;
  for (const auto& r : sp.roots) count += r.multiplicity;
  sp.confident = ok && count % 2 == 0;
  sp.stratum = stratum_from_roots(sp.roots);
  return sp;
}

}  // namespace minkcurves
