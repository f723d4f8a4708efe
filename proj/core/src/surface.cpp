#include "minkcurves/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minkcurves/errors.hpp"

namespace minkcurves {

std::string to_string(MongeForm f) {
  return f == MongeForm::TimelikeGraph ? "timelike_graph" : "lightcone_graph";
}

MongeForm parse_monge_form(const std::string& s) {
  if (s == "timelike_graph") return MongeForm::TimelikeGraph;
  if (s == "lightcone_graph") return MongeForm::LightconeGraph;
  throw std::invalid_argument("unknown Monge form: " + s);
}

std::string to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::LD: return "LD";
    case FeatureKind::LPL: return "LPL";
    case FeatureKind::PC: return "PC";
    case FeatureKind::MCNC: return "MCNC";
  }
  return "?";
}

FeatureKind parse_feature_kind(const std::string& s) {
  for (FeatureKind k : kAllFeatures)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown feature kind: " + s);
}

MongePatch::MongePatch(MongeForm form, Jet2 f) : form_(form), f_(std::move(f)) {
  if (f_.degree() < 2) f_ = f_.with_degree(2);
}

MongePatch MongePatch::validated(MongeForm form, Jet2 f, double tol) {
  MongePatch p(form, std::move(f));
  if (!p.normalized(tol)) {
    throw std::invalid_argument(form == MongeForm::TimelikeGraph
                                    ? "timelike_graph patch needs a00 = a10 = a11 = 0"
                                    : "lightcone_graph patch needs a00 = 0, a10 = 1, a11 = 0");
  }
  return p;
}

bool MongePatch::normalized(double tol) const {
  const double a10_target = form_ == MongeForm::TimelikeGraph ? 0.0 : 1.0;
  return std::abs(a(0, 0)) <= tol && std::abs(a(1, 0) - a10_target) <= tol && std::abs(a(1, 1)) <= tol;
}

std::array<Jet2, 3> MongePatch::embedding() const {
  const int k = f_.degree();
  const Jet2 x = Jet2::monomial(1, 0, 1.0, k);
  const Jet2 y = Jet2::monomial(0, 1, 1.0, k);
  if (form_ == MongeForm::TimelikeGraph) return {x, f_, y};
  return {x, y, f_};
}

namespace {

Jet2 jet_inner(const std::array<Jet2, 3>& u, const std::array<Jet2, 3>& v) {
  return (product_exact(u[0], v[0]) + product_exact(u[1], v[1]) - product_exact(u[2], v[2])).trimmed();
}

std::array<Jet2, 3> jet_cross(const std::array<Jet2, 3>& u, const std::array<Jet2, 3>& v) {
  return {(product_exact(u[1], v[2]) - product_exact(u[2], v[1])).trimmed(),
          (product_exact(u[2], v[0]) - product_exact(u[0], v[2])).trimmed(),
          (product_exact(u[1], v[0]) - product_exact(u[0], v[1])).trimmed()};
}

std::array<Jet2, 3> partial(const std::array<Jet2, 3>& X, Var v) {
  return {differentiate(X[0], v), differentiate(X[1], v), differentiate(X[2], v)};
}

Jet2 px(const Jet2& a, const Jet2& b) { return product_exact(a, b); }

}  // namespace

FormBundle fundamental_forms(const MongePatch& patch, CrossConvention conv) {
  const auto X = patch.embedding();
  const auto Xu = partial(X, Var::X);
  const auto Xv = partial(X, Var::Y);
  const auto Xuu = partial(Xu, Var::X);
  const auto Xuv = partial(Xu, Var::Y);
  const auto Xvv = partial(Xv, Var::Y);
  auto N = jet_cross(Xu, Xv);
  if (conv == CrossConvention::Flipped)
    for (auto& c : N) c = -c;
  FormBundle b;
  b.E = jet_inner(Xu, Xu);
  b.F = jet_inner(Xu, Xv);
  b.G = jet_inner(Xv, Xv);
  b.l = jet_inner(N, Xuu);
  b.m = jet_inner(N, Xuv);
  b.n = jet_inner(N, Xvv);
  return b;
}

Jet2 feature_jet(const FormBundle& b, FeatureKind kind) {
  switch (kind) {
    case FeatureKind::LD:
      return (px(b.F, b.F) - px(b.E, b.G)).trimmed();
    case FeatureKind::LPL: {
      const Jet2 A = (px(b.G, b.m) - px(b.F, b.n)).trimmed();
      const Jet2 B = (px(b.G, b.l) - px(b.E, b.n)).trimmed();
      const Jet2 C = (px(b.F, b.l) - px(b.E, b.m)).trimmed();
      return (px(B, B) - 4.0 * px(A, C)).trimmed();
    }
    case FeatureKind::PC:
      return (px(b.l, b.n) - px(b.m, b.m)).trimmed();
    case FeatureKind::MCNC:
      return (px(b.l, b.G) - 2.0 * px(b.m, b.F) + px(b.n, b.E)).trimmed();
  }
  return Jet2(0);
}

BdeTriple bde_from_forms(const PointForms& p) {
  return {p.G * p.m - p.F * p.n, p.G * p.l - p.E * p.n, p.F * p.l - p.E * p.m};
}

double field_value(FeatureKind kind, const PointForms& p) {
  switch (kind) {
    case FeatureKind::LD:
      return p.F * p.F - p.E * p.G;
    case FeatureKind::LPL: {
      const BdeTriple t = bde_from_forms(p);
      return t.B * t.B - 4.0 * t.A * t.C;
    }
    case FeatureKind::PC:
      return p.l * p.n - p.m * p.m;
    case FeatureKind::MCNC:
      return p.l * p.G - 2.0 * p.m * p.F + p.n * p.E;
  }
  return 0.0;
}

PointForms forms_at(const MongePatch& patch, double x, double y, CrossConvention conv) {
  const Jet2& f = patch.f();
  const Jet2 fx = differentiate(f, Var::X);
  const Jet2 fy = differentiate(f, Var::Y);
  const double vx = fx(x, y);
  const double vy = fy(x, y);
  const double vxx = differentiate(fx, Var::X)(x, y);
  const double vxy = differentiate(fx, Var::Y)(x, y);
  const double vyy = differentiate(fy, Var::Y)(x, y);
  Vec3M Xu, Xv, Xuu, Xuv, Xvv;
  if (patch.form() == MongeForm::TimelikeGraph) {
    Xu = {1.0, vx, 0.0};
    Xv = {0.0, vy, 1.0};
    Xuu = {0.0, vxx, 0.0};
    Xuv = {0.0, vxy, 0.0};
    Xvv = {0.0, vyy, 0.0};
  } else {
    Xu = {1.0, 0.0, vx};
    Xv = {0.0, 1.0, vy};
    Xuu = {0.0, 0.0, vxx};
    Xuv = {0.0, 0.0, vxy};
    Xvv = {0.0, 0.0, vyy};
  }
  const Vec3M N = convention_sign(conv) * cross(Xu, Xv);
  PointForms pf;
  pf.E = inner(Xu, Xu);
  pf.F = inner(Xu, Xv);
  pf.G = inner(Xv, Xv);
  pf.l = inner(N, Xuu);
  pf.m = inner(N, Xuv);
  pf.n = inner(N, Xvv);
  return pf;
}

FeatureField::FeatureField(FeatureKind kind, Jet2 jet) : FeatureField(kind, std::move(jet), nullptr, CrossConvention::Standard) {}

FeatureField::FeatureField(FeatureKind kind, Jet2 jet, std::shared_ptr<const MongePatch> source,
                           CrossConvention conv)
    : kind_(kind), jet_(std::move(jet)), source_(std::move(source)), conv_(conv) {
  dx_ = differentiate(jet_, Var::X);
  dy_ = differentiate(jet_, Var::Y);
  dxx_ = differentiate(dx_, Var::X);
  dxy_ = differentiate(dx_, Var::Y);
  dyy_ = differentiate(dy_, Var::Y);
}

std::array<double, 2> FeatureField::gradient(double x, double y) const { return {dx_(x, y), dy_(x, y)}; }

std::array<double, 3> FeatureField::hessian(double x, double y) const {
  return {dxx_(x, y), dxy_(x, y), dyy_(x, y)};
}

double FeatureField::direct(double x, double y) const {
  if (!source_) return jet_(x, y);
  return field_value(kind_, forms_at(*source_, x, y, conv_));
}

FeatureSet feature_fields(const FormBundle& bundle) {
  FeatureSet s;
  for (FeatureKind k : kAllFeatures) s.fields[static_cast<int>(k)] = FeatureField(k, feature_jet(bundle, k));
  return s;
}

FeatureSet feature_fields(const MongePatch& patch, CrossConvention conv) {
  const FormBundle b = fundamental_forms(patch, conv);
  auto src = std::make_shared<const MongePatch>(patch);
  FeatureSet s;
  for (FeatureKind k : kAllFeatures)
    s.fields[static_cast<int>(k)] = FeatureField(k, feature_jet(b, k), src, conv);
  return s;
}

BdeTriple bde_coefficients(const FormBundle& b, double x, double y) {
  PointForms p{b.E(x, y), b.F(x, y), b.G(x, y), b.l(x, y), b.m(x, y), b.n(x, y)};
  return bde_from_forms(p);
}

std::array<Jet2, 3> bde_jets(const FormBundle& b) {
  return {(px(b.G, b.m) - px(b.F, b.n)).trimmed(), (px(b.G, b.l) - px(b.E, b.n)).trimmed(),
          (px(b.F, b.l) - px(b.E, b.m)).trimmed()};
}

namespace {

Vec3M linear_part(const std::array<Jet2, 3>& D, Var v) {
  const int p = v == Var::X ? 1 : 0;
  return {D[0].xy(p, 1 - p), D[1].xy(p, 1 - p), D[2].xy(p, 1 - p)};
}

// Jet of <D, w> for a constant vector w.
Jet2 project(const std::array<Jet2, 3>& D, const Vec3M& w) {
  return D[0] * w.u0 + D[1] * w.u1 - D[2] * w.u2;
}

Vec3M normalized_minkowski(const Vec3M& v) {
  const double q = inner(v, v);
  return (1.0 / std::sqrt(std::abs(q))) * v;
}

// Series inverse of (s,t) -> (alpha, beta), both vanishing at 0 with an
// invertible linear part; returns jets s(X,Y), t(X,Y) at degree k.
std::array<Jet2, 2> invert_map(const Jet2& alpha, const Jet2& beta, int k) {
  const double m00 = alpha.xy(1, 0), m01 = alpha.xy(0, 1);
  const double m10 = beta.xy(1, 0), m11 = beta.xy(0, 1);
  const double det = m00 * m11 - m01 * m10;
  if (std::abs(det) < 1e-12) throw FrameDegeneracy("monge_taylor: projection is not a local chart");
  const double i00 = m11 / det, i01 = -m01 / det, i10 = -m10 / det, i11 = m00 / det;
  Jet2 alpha_nl = alpha;
  alpha_nl.set(1, 0, 0.0);
  alpha_nl.set(1, 1, 0.0);
  Jet2 beta_nl = beta;
  beta_nl.set(1, 0, 0.0);
  beta_nl.set(1, 1, 0.0);
  const Jet2 X = Jet2::monomial(1, 0, 1.0, k);
  const Jet2 Y = Jet2::monomial(0, 1, 1.0, k);
  Jet2 s = i00 * X + i01 * Y;
  Jet2 t = i10 * X + i11 * Y;
  // Each pass fixes one more degree.
  for (int pass = 1; pass < k; ++pass) {
    const Jet2 an = compose(alpha_nl, s, t);
    const Jet2 bn = compose(beta_nl, s, t);
    const Jet2 rx = X - an;
    const Jet2 ry = Y - bn;
    s = i00 * rx + i01 * ry;
    t = i10 * rx + i11 * ry;
  }
  return {s, t};
}

void snap(Jet2& f, int s, int i, double target, double tol) {
  if (std::abs(f.coeff(s, i) - target) <= tol) f.set(s, i, target);
}

}  // namespace

MongePatch monge_taylor(const MongePatch& patch, double qx, double qy, int degree) {
  const auto X = patch.embedding();
  std::array<Jet2, 3> D;
  for (int c = 0; c < 3; ++c) {
    D[c] = recenter(X[c], qx, qy);
    D[c].set(0, 0, 0.0);
  }
  const Vec3M Ts = linear_part(D, Var::X);
  const Vec3M Tt = linear_part(D, Var::Y);
  const double E = inner(Ts, Ts), F = inner(Ts, Tt), G = inner(Tt, Tt);
  const double delta = F * F - E * G;

  const Jet2 ld = feature_jet(fundamental_forms(patch), FeatureKind::LD);
  const double gx = differentiate(ld, Var::X)(qx, qy);
  const double gy = differentiate(ld, Var::Y)(qx, qy);
  const double tol = 1e-8 * std::max(1.0, std::hypot(gx, gy));

  const int k = std::max(degree, 2);
  if (delta > tol) {
    Vec3M N = cross(Ts, Tt);
    if (inner(N, N) <= 0.0) throw FrameDegeneracy("monge_taylor: tangent plane is not timelike");
    N = normalized_minkowski(N);
    // Spacelike unit vector of the plane closest to an ambient spacelike axis.
    Vec3M best{};
    double best_ratio = -1.0;
    for (const Vec3M& e : {Vec3M{1, 0, 0}, Vec3M{0, 1, 0}}) {
      const Vec3M u = e - inner(e, N) * N;
      const double en = euclidean_norm_sq(u);
      if (en == 0.0) continue;
      const double ratio = inner(u, u) / en;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = u;
      }
    }
    if (best_ratio <= 1e-8) throw FrameDegeneracy("monge_taylor: no spacelike tangent direction");
    const Vec3M T1 = normalized_minkowski(best);
    Vec3M T2 = normalized_minkowski(cross(N, T1));
    if (det3(T1, N, T2) < 0.0) T2 = -1.0 * T2;
    if (T2.u2 < 0.0) {
      T2 = -1.0 * T2;
      N = -1.0 * N;
    }
    const Jet2 y0 = project(D, T1);
    const Jet2 y1 = project(D, N);
    const Jet2 y2 = -project(D, T2);
    const auto inv = invert_map(y0, y2, k);
    Jet2 f = compose(y1.with_degree(std::max(y1.degree(), k)), inv[0], inv[1]).with_degree(k);
    f.set(0, 0, 0.0);
    snap(f, 1, 0, 0.0, 1e-8);
    snap(f, 1, 1, 0.0, 1e-8);
    return MongePatch(MongeForm::TimelikeGraph, f);
  }
  if (delta < -tol) throw FrameDegeneracy("monge_taylor: point lies in the Riemannian region");

  // Degenerate plane: kernel of the first fundamental form is the lightlike direction.
  const double tr = E + G;
  const double disc = std::sqrt(std::max(0.0, (E - G) * (E - G) / 4.0 + F * F));
  const double lam_small = tr / 2.0 - disc;
  const double lam_big = tr / 2.0 + disc;
  double du, dv;
  if (std::abs(F) > 1e-14) {
    du = F;
    dv = lam_small - E;
  } else if (std::abs(E) <= std::abs(G)) {
    du = 1.0;
    dv = 0.0;
  } else {
    du = 0.0;
    dv = 1.0;
  }
  const double dn = std::hypot(du, dv);
  du /= dn;
  dv /= dn;
  if (lam_big <= 0.0) throw FrameDegeneracy("monge_taylor: degenerate plane without spacelike direction");
  Vec3M L = du * Ts + dv * Tt;
  Vec3M S = normalized_minkowski((-dv) * Ts + du * Tt);
  const Vec3M e2{0, 0, 1};
  const Vec3M w = e2 - inner(e2, S) * S;
  const Vec3M E2 = normalized_minkowski(w.u2 >= 0.0 ? w : -1.0 * w);
  double c = -inner(L, E2);
  if (c < 0.0) {
    L = -1.0 * L;
    c = -c;
  }
  if (c == 0.0) throw FrameDegeneracy("monge_taylor: lightlike direction orthogonal to timelike axis");
  const Vec3M E0 = (1.0 / c) * L - E2;
  if (det3(E0, S, E2) < 0.0) S = -1.0 * S;
  const Jet2 y0 = project(D, E0);
  const Jet2 y1 = project(D, S);
  const Jet2 y2 = -project(D, E2);
  const auto inv = invert_map(y0, y1, k);
  Jet2 f = compose(y2.with_degree(std::max(y2.degree(), k)), inv[0], inv[1]).with_degree(k);
  f.set(0, 0, 0.0);
  snap(f, 1, 0, 1.0, 1e-6);
  snap(f, 1, 1, 0.0, 1e-6);
  return MongePatch(MongeForm::LightconeGraph, f);
}

}  // namespace minkcurves
