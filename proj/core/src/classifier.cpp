#include "minkcurves/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "minkcurves/errors.hpp"
#include "minkcurves/tracer.hpp"

namespace minkcurves {

namespace {

double sq(double v) { return v * v; }

int sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace

std::string to_string(Region r) {
  switch (r) {
    case Region::Riemannian: return "riemannian";
    case Region::Lorentzian: return "lorentzian";
    case Region::OnLD: return "on_ld";
  }
  return "?";
}

std::string to_string(UmbilicType u) {
  switch (u) {
    case UmbilicType::None: return "none";
    case UmbilicType::Spacelike: return "spacelike";
    case UmbilicType::Timelike: return "timelike";
    case UmbilicType::Lightlike: return "lightlike";
    case UmbilicType::FlatTimelike: return "flat_timelike";
  }
  return "?";
}

std::string to_string(SingularityLabel l) {
  switch (l) {
    case SingularityLabel::Regular: return "regular";
    case SingularityLabel::A1Plus: return "A1_plus";
    case SingularityLabel::A1Minus: return "A1_minus";
    case SingularityLabel::A3Plus: return "A3_plus";
    case SingularityLabel::A3Minus: return "A3_minus";
    case SingularityLabel::DegenerateUnresolved: return "degenerate_unresolved";
  }
  return "?";
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Generic: return "GENERIC";
    case Scenario::LplPcMcncTangency: return "LPL_PC_MCNC_TANGENCY";
    case Scenario::FlatTimelikeUmbilic: return "FLAT_TIMELIKE_UMBILIC";
    case Scenario::LplNonMorse: return "LPL_NON_MORSE";
    case Scenario::McncMorseSing: return "MCNC_MORSE_SING";
    case Scenario::PcMorseSing: return "PC_MORSE_SING";
    case Scenario::LdLplHighTangency: return "LD_LPL_HIGH_TANGENCY";
    case Scenario::LdPcTangency: return "LD_PC_TANGENCY";
    case Scenario::LightlikeUmbilic: return "LIGHTLIKE_UMBILIC";
    case Scenario::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

bool PointClass::member(FeatureKind k) const {
  switch (k) {
    case FeatureKind::LD: return region == Region::OnLD;
    case FeatureKind::LPL: return on_lpl;
    case FeatureKind::PC: return on_pc;
    case FeatureKind::MCNC: return on_mcnc;
  }
  return false;
}

PointClass classify_point(const MongePatch& patch, Point2 q, double tol, double validity_radius,
                          CrossConvention conv) {
  if (std::abs(q.x) > validity_radius || std::abs(q.y) > validity_radius)
    throw OutsideValidity("classify_point: point outside the validity radius");
  const FormBundle bundle = fundamental_forms(patch, conv);
  const FeatureSet fs = feature_fields(bundle);
  auto near_zero = [&](const FeatureField& f, double& value) {
    value = f(q);
    const auto g = f.gradient(q.x, q.y);
    return std::abs(value) < tol * std::max(1.0, std::hypot(g[0], g[1]));
  };
  PointClass pc;
  const bool on_ld = near_zero(fs[FeatureKind::LD], pc.delta);
  pc.region = on_ld ? Region::OnLD : (pc.delta > 0 ? Region::Lorentzian : Region::Riemannian);
  pc.on_lpl = near_zero(fs[FeatureKind::LPL], pc.delta_tilde);
  pc.on_pc = near_zero(fs[FeatureKind::PC], pc.K);
  pc.on_mcnc = near_zero(fs[FeatureKind::MCNC], pc.H);

  const auto abc = bde_jets(bundle);
  bool umbilic = true;
  for (const auto& j : abc) {
    const FeatureField f(FeatureKind::LPL, j);
    double v = 0;
    umbilic = umbilic && near_zero(f, v);
  }
  if (umbilic) {
    switch (pc.region) {
      case Region::Riemannian: pc.umbilic = UmbilicType::Spacelike; break;
      case Region::Lorentzian: pc.umbilic = pc.on_pc ? UmbilicType::FlatTimelike : UmbilicType::Timelike; break;
      case Region::OnLD: pc.umbilic = UmbilicType::Lightlike; break;
    }
  }
  return pc;
}

double SingularityReport::quartic_per_unit_y() const {
  if (std::abs(kernel[1]) >= std::abs(kernel[0])) return quartic_coefficient;
  return quartic_coefficient / std::pow(kernel[1], 4);
}

SingularityReport classify_singularity(const FeatureField& field, Point2 q) {
  return classify_singularity(field.jet(), q, field.kind());
}

SingularityReport classify_singularity(const Jet2& jet, Point2 q, FeatureKind kind) {
  SingularityReport r;
  r.kind = kind;
  r.point = q;
  Jet2 J = recenter(jet, q.x, q.y);
  if (J.degree() < 4) J = J.with_degree(4);
  r.gradient = {J.xy(1, 0), J.xy(0, 1)};
  const double hxx = 2 * J.xy(2, 0), hxy = J.xy(1, 1), hyy = 2 * J.xy(0, 2);
  r.hessian = {hxx, hxy, hyy};
  const double hn = std::sqrt(hxx * hxx + 2 * hxy * hxy + hyy * hyy);
  r.hessian_det = hxx * hyy - hxy * hxy;
  const double mean = 0.5 * (hxx + hyy), rad = std::hypot(0.5 * (hxx - hyy), hxy);
  r.eigenvalues = {mean - rad, mean + rad};

  if (std::hypot(r.gradient[0], r.gradient[1]) > 1e-8 * std::max(1.0, hn)) {
    r.label = SingularityLabel::Regular;
    return r;
  }
  double low_scale = 1.0;
  for (int s = 2; s <= 4; ++s)
    for (int i = 0; i <= s; ++i) low_scale = std::max(low_scale, std::abs(J.coeff(s, i)));
  if (hn <= 1e-12 * low_scale) {
    r.label = SingularityLabel::DegenerateUnresolved;
    return r;
  }
  const double eps = 1e-7 * hn * hn;
  if (r.hessian_det > eps) {
    r.label = SingularityLabel::A1Plus;
    return r;
  }
  if (r.hessian_det < -eps) {
    r.label = SingularityLabel::A1Minus;
    return r;
  }

  // Rank one: kernel eigenvector, then eliminate the transverse variable.
  const double lk = std::abs(r.eigenvalues[0]) <= std::abs(r.eigenvalues[1]) ? r.eigenvalues[0] : r.eigenvalues[1];
  std::array<double, 2> k1{hxy, lk - hxx}, k2{lk - hyy, hxy};
  auto kv = std::hypot(k1[0], k1[1]) >= std::hypot(k2[0], k2[1]) ? k1 : k2;
  const double big = std::abs(kv[0]) >= std::abs(kv[1]) ? kv[0] : kv[1];
  kv = {kv[0] / big, kv[1] / big};
  r.kernel = kv;

  const int d = J.degree();
  Jet2 u(d), v(d);
  if (std::abs(kv[1]) >= std::abs(kv[0])) {
    u.set(1, 0, 1.0);
    u.set(1, 1, kv[0]);
    v.set(1, 1, 1.0);
  } else {
    u.set(1, 1, 1.0);
    v.set(1, 0, 1.0);
    v.set(1, 1, kv[1]);
  }
  Jet2 J0 = J;
  J0.set(0, 0, 0.0);
  J0.set(1, 0, 0.0);
  J0.set(1, 1, 0.0);
  const Jet2 phi = compose(J0, u, v);
  const Jet2 dphi = differentiate(phi, Var::X);
  const Series g = ift_series(dphi, Var::X, 3);
  const Series e = restrict_to_graph(phi, Var::X, g, 4);
  r.square_coefficient = phi.xy(2, 0);
  r.cubic_coefficient = e[3];
  r.quartic_coefficient = e[4];
  const double thr = 1e-8 * low_scale;
  if (std::abs(e[3]) > thr || std::abs(e[4]) <= thr) {
    r.label = SingularityLabel::DegenerateUnresolved;
    return r;
  }
  r.label = e[4] * r.square_coefficient > 0 ? SingularityLabel::A3Plus : SingularityLabel::A3Minus;
  return r;
}

std::map<std::string, double> LambdaVector::named() const {
  std::map<std::string, double> out = aux;
  for (int i = 1; i <= 14; ++i)
    if (values[static_cast<std::size_t>(i)]) out["L" + std::to_string(i)] = *values[static_cast<std::size_t>(i)];
  return out;
}

LambdaVector lambda_invariants(const MongePatch& patch, const std::optional<FamilyDerivatives>& family) {
  if (patch.degree() < 3) throw InsufficientDegree("lambda_invariants: patch degree below 3");
  const bool quartic = patch.degree() >= 4;
  auto a = [&](int s, int i) { return patch.a(s, i); };
  LambdaVector L;
  const double a10 = a(1, 0), a11 = a(1, 1), a20 = a(2, 0), a21 = a(2, 1), a22 = a(2, 2);
  const double a30 = a(3, 0), a31 = a(3, 1), a32 = a(3, 2), a33 = a(3, 3);

  if (patch.form() == MongeForm::TimelikeGraph) {
    L.set(1, (a20 - a11 * a11 * a20 + a22 * a10 * a10 + a22) * (a32 * a31 - 9 * a33 * a30) +
                 (a11 * a11 * a21 - 2 * a11 * a22 * a10 - a21) * (a31 * a31 - 3 * a32 * a30) -
                 (a10 * a10 * a21 - 2 * a11 * a10 * a20 + a21) * (a32 * a32 - 3 * a33 * a31));
    L.set(3, -a31 * a31 + 3 * a30 * a32 + a32 * a32 - 3 * a31 * a33);
    L.set(4, -a31 * a31 * a32 * a32 + 4 * a30 * a32 * a32 * a32 + 4 * a31 * a31 * a31 * a33 -
                 18 * a30 * a31 * a32 * a33 + 27 * a30 * a30 * a33 * a33);
    L.set(5, sq(a31 - 3 * a33) + sq(a32 - 3 * a30));
    L.set(6, a31 * a31 - 3 * a30 * a32 - a31 * a32 + a32 * a32 + 9 * a30 * a33 - 3 * a31 * a33);
    L.set(7, a31 * a31 - 3 * a30 * a32 + a31 * a32 + a32 * a32 - 9 * a30 * a33 - 3 * a31 * a33);
    if (family) {
      const double hxx = family->h_xxt, hxz = family->h_xyt, hzz = family->h_yyt;
      L.set(8, -3 * a30 * a32 * hzz + 9 * a30 * a33 * hxz + a31 * a31 * hzz - a31 * a32 * hxz -
                   3 * a31 * a33 * hxx + a32 * a32 * hxx);
    }
    if (quartic) {
      const double a40 = a(4, 0), a41 = a(4, 1), a42 = a(4, 2), a43 = a(4, 3), a44 = a(4, 4);
      const double p = 4 * a20 * a20 * a20 - a20 * a21 * a21;
      L.set(10, -16 * (p - 6 * a40 + a42) * (p - a42 + 6 * a44) +
                    sq(8 * a20 * a20 * a21 - 2 * a21 * a21 * a21 - 6 * a41 + 6 * a43));
      L.set(11, p - 6 * a40 + a42);
    }
    L.aux["k20"] = 4 * (a31 * a31 - 3 * a30 * a32);
    L.aux["k21"] = 4 * (a31 * a32 - 9 * a30 * a33);
    L.aux["k22"] = 4 * (a32 * a32 - 3 * a31 * a33);
    L.aux["c1"] = 3 * a30 - 2 * a31 + a32;
    L.aux["d1"] = a31 - 2 * a32 + 3 * a33;
    L.aux["c2"] = 3 * a30 + 2 * a31 + a32;
    L.aux["d2"] = a31 + 2 * a32 + 3 * a33;
    L.aux["c3"] = 3 * a30 - a32;
    L.aux["d3"] = a31 - 3 * a33;
  } else {
    const double l13 = 6 * a22 * a22 * a30 + 3 * a30 * a32 - a31 * a31;
    L.set(13, l13);
    if (quartic && a21 != 0.0)
      L.set(12, (4 * a21 * a21 * a22 + 7 * a21 * a31 + 12 * a(4, 0)) / (a21 * a21 * a21));
    if (family) L.set(14, a30 * family->h_xt * l13 * family->t);
    if (a30 != 0.0) {
      L.aux["x_H2"] = 16 * a22 * l13 / (3 * a30);
      if (a22 != 0.0) L.aux["x_K2"] = 4 * l13 * (6 * a22 * a22 * a30 + l13) / (9 * a22 * a30 * a30);
    }
  }
  return L;
}

double lambda2_null(const NullChartJets& nc) {
  auto l = [&](int s, int i) { return nc.l.coeff(s, i); };
  auto m = [&](int s, int i) { return nc.m.coeff(s, i); };
  const double l10 = l(1, 0), l11 = l(1, 1);
  return l10 * l10 * l10 * m(2, 2) - l10 * l10 * l11 * m(2, 1) - l10 * l10 * l(2, 2) * m(1, 0) +
         l10 * l11 * l11 * m(2, 0) + l10 * l11 * l(2, 1) * m(1, 0) - l11 * l11 * l(2, 0) * m(1, 0);
}

double lambda9_null(const Jet2& l, const Jet2& n) {
  const double a10 = l.coeff(1, 0), a11 = l.coeff(1, 1), a20 = l.coeff(2, 0), a21 = l.coeff(2, 1),
               a22 = l.coeff(2, 2);
  const double b10 = n.coeff(1, 0), b20 = n.coeff(2, 0), b21 = n.coeff(2, 1), b22 = n.coeff(2, 2);
  return -a11 * a11 * a20 * b10 + a10 * a11 * a21 * b10 - a10 * a10 * a22 * b10 + a10 * a11 * a11 * b20 -
         a10 * a10 * a11 * b21 + a10 * a10 * a10 * b22;
}

double lpl_graph_c3(const Jet2& L) {
  auto l = [&](int s, int i) { return L.coeff(s, i); };
  const double l10 = l(1, 0), l11 = l(1, 1);
  const double l20 = l(2, 0), l21 = l(2, 1), l22 = l(2, 2);
  const double l30 = l(3, 0), l31 = l(3, 1), l32 = l(3, 2), l33 = l(3, 3);
  const double p2 = l10 * l10, p3 = p2 * l10, p4 = p3 * l10;
  const double q2 = l11 * l11, q3 = q2 * l11;
  return -p4 * l33 + p3 * l11 * l32 + p3 * l21 * l22 - p2 * q2 * l31 - 2 * p2 * l11 * l20 * l22 -
         p2 * l11 * l21 * l21 + l10 * q3 * l30 + 3 * l10 * q2 * l20 * l21 - 2 * q3 * l20 * l20;
}

double lpl_graph_c4(const Jet2& L) {
  auto l = [&](int s, int i) { return L.coeff(s, i); };
  const double l10 = l(1, 0), l11 = l(1, 1);
  const double l20 = l(2, 0), l21 = l(2, 1), l22 = l(2, 2);
  const double l30 = l(3, 0), l31 = l(3, 1), l32 = l(3, 2), l33 = l(3, 3);
  const double l40 = l(4, 0), l41 = l(4, 1), l42 = l(4, 2), l43 = l(4, 3), l44 = l(4, 4);
  const double p2 = l10 * l10, p3 = p2 * l10, p4 = p3 * l10, p5 = p4 * l10, p6 = p5 * l10;
  const double q2 = l11 * l11, q3 = q2 * l11, q4 = q3 * l11;
  return -p6 * l44 + p5 * l11 * l43 + p5 * l21 * l33 + p5 * l22 * l32 - p4 * q2 * l42 - 2 * p4 * l11 * l20 * l33 -
         2 * p4 * l11 * l21 * l32 - 2 * p4 * l11 * l22 * l31 - p4 * l20 * l22 * l22 - p4 * l21 * l21 * l22 +
         p3 * q3 * l41 + 3 * p3 * q2 * l20 * l32 + 3 * p3 * q2 * l21 * l31 + 3 * p3 * q2 * l22 * l30 +
         6 * p3 * l11 * l20 * l21 * l22 + p3 * l11 * l21 * l21 * l21 - p2 * q4 * l40 - 4 * p2 * q3 * l20 * l31 -
         4 * p2 * q3 * l21 * l30 - 6 * p2 * q2 * l20 * l20 * l22 - 6 * p2 * q2 * l20 * l21 * l21 +
         5 * l10 * q4 * l20 * l30 + 10 * l10 * q3 * l20 * l20 * l21 - 5 * q4 * l20 * l20 * l20;
}

FlatUmbilicGeometry flat_umbilic_geometry(const MongePatch& patch, CrossConvention conv) {
  if (patch.form() != MongeForm::TimelikeGraph || patch.degree() < 3)
    throw WrongScenario("flat_umbilic_geometry: needs a timelike chart of degree >= 3");
  for (int s = 0; s <= 2; ++s)
    for (int i = 0; i <= s; ++i)
      if (patch.a(s, i) != 0.0) throw WrongScenario("flat_umbilic_geometry: 2-jet does not vanish");
  const LambdaVector L = lambda_invariants(patch);
  FlatUmbilicGeometry g;
  g.c = {L.aux.at("c1"), L.aux.at("c2"), L.aux.at("c3")};
  g.d = {L.aux.at("d1"), L.aux.at("d2"), L.aux.at("d3")};
  g.k20 = L.aux.at("k20");
  g.k21 = L.aux.at("k21");
  g.k22 = L.aux.at("k22");
  const Jet2 K = feature_jet(fundamental_forms(patch, conv), FeatureKind::PC);
  g.k20_jet = -K.xy(2, 0);
  g.k21_jet = -K.xy(1, 1);
  g.k22_jet = -K.xy(0, 2);
  g.lambda6 = *L[6];
  g.lambda7 = *L[7];
  auto F = [&](double x, double z) { return g.k20 * x * x + g.k21 * x * z + g.k22 * z * z; };
  auto G = [&](double x, double z) { return (g.c[0] * x + g.d[0] * z) * (g.c[1] * x + g.d[1] * z); };
  g.F_v1 = F(0.5 * g.d[0], -0.5 * g.c[0]);
  g.F_v2 = F(0.5 * g.d[1], -0.5 * g.c[1]);
  g.F_v3 = F(g.d[2], -g.c[2]);
  g.G_v3 = G(g.d[2], -g.c[2]);
  return g;
}

namespace {

// Solved-graph coefficient c of {f = 0} written as xi = c y^2 + ..., with
// xi = 3 a30 x + a31 y.
double graph_curvature(const Jet2& f_xi) {
  Jet2 f = f_xi;
  f.set(0, 0, 0.0);
  const Series g = ift_series(f, Var::X, 2);
  return g[2];
}

}  // namespace

LightlikeUmbilicGeometry lightlike_umbilic_geometry(const MongePatch& patch, CrossConvention conv) {
  if (patch.form() != MongeForm::LightconeGraph || patch.degree() < 3)
    throw WrongScenario("lightlike_umbilic_geometry: needs a lightcone chart of degree >= 3");
  if (patch.a(2, 0) != 0.0 || patch.a(2, 1) != 0.0)
    throw WrongScenario("lightlike_umbilic_geometry: a20 and a21 must vanish");
  const double a22 = patch.a(2, 2), a30 = patch.a(3, 0), a31 = patch.a(3, 1), a32 = patch.a(3, 2);
  if (a30 == 0.0) throw WrongScenario("lightlike_umbilic_geometry: a30 must be nonzero");
  const double l13 = 6 * a22 * a22 * a30 + 3 * a30 * a32 - a31 * a31;
  const double s = 3 * a30 * a32 - a31 * a31;

  LightlikeUmbilicGeometry g;
  g.line_a = 3 * a30;
  g.line_b = a31;
  g.Q = 32 * l13 * l13 * l13 / (27 * a30 * a30 * a30);

  const FeatureSet fs = feature_fields(patch, conv);
  int deg = 0;
  for (const auto& f : fs.fields) deg = std::max(deg, f.jet().degree());
  Jet2 u(deg), v(deg);
  u.set(1, 0, 1.0 / (3 * a30));
  u.set(1, 1, -a31 / (3 * a30));
  v.set(1, 1, 1.0);
  auto in_xi = [&](FeatureKind k) { return compose(fs[k].jet().with_degree(deg), u, v); };

  g.c_pc = graph_curvature(in_xi(FeatureKind::PC));
  g.c_mcnc = graph_curvature(in_xi(FeatureKind::MCNC));
  const Jet2 D = in_xi(FeatureKind::LPL);
  const double q20 = D.xy(2, 0), q12 = D.xy(1, 2), q04 = D.xy(0, 4);
  g.lpl_mid = -q12 / (2 * q20);
  g.lpl_half_sq = g.lpl_mid * g.lpl_mid - q04 / q20;
  g.lpl_has_branches = g.lpl_half_sq > 0;
  const double factor = std::sqrt(g.Q / g.lpl_half_sq);
  g.x_K2 = 2 * (g.c_pc - g.lpl_mid) * factor;
  g.x_H2 = 2 * (g.c_mcnc - g.lpl_mid) * factor;

  const double dk = g.c_pc - g.lpl_mid, dh = g.c_mcnc - g.lpl_mid;
  g.pc_outside_branches = dk * dk > g.lpl_half_sq;
  g.mcnc_between_branches = dh * dh < g.lpl_half_sq;
  g.pc_mcnc_same_side = dk * dh > 0;
  g.pc_farther_than_mcnc = std::abs(g.x_K2) > std::abs(g.x_H2);
  g.predicted_pc_outside = s != 0.0;
  g.predicted_mcnc_between = s / a30 > 0;
  g.order_product = s * (18 * a22 * a22 * a30 + l13);
  return g;
}

namespace {

struct Tol {
  double amax = 1.0;
  double rel = 1e-9;
  double at(int degree) const { return rel * std::pow(amax, degree); }
  bool zero(double v, int degree) const { return std::abs(v) <= at(degree); }
};

// Signs of `probe` on traced vertices of `curve` inside the annulus
// [0.3 r, 0.9 r] around the origin; returns +1/-1 by majority, 0 if none.
int majority_sign(const TracedCurve& curve, const FeatureField& probe, double r) {
  int pos = 0, neg = 0;
  for (const auto& pl : curve.polylines)
    for (const auto& v : pl.vertices) {
      const double d = std::hypot(v.x, v.y);
      if (d < 0.3 * r || d > 0.9 * r) continue;
      const double p = probe(v.x, v.y);
      if (p > 0) ++pos;
      if (p < 0) ++neg;
    }
  if (pos == 0 && neg == 0) return 0;
  return pos >= neg ? 1 : -1;
}

bool has_annulus_vertices(const TracedCurve& curve, double r) {
  for (const auto& pl : curve.polylines)
    for (const auto& v : pl.vertices) {
      const double d = std::hypot(v.x, v.y);
      if (d >= 0.3 * r && d <= 0.9 * r) return true;
    }
  return false;
}

bool isolated_at_origin(const TracedCurve& curve, double r) {
  if (has_annulus_vertices(curve, r)) return false;
  for (const auto& z : curve.isolated)
    if (std::hypot(z.x, z.y) < 0.1 * r) return true;
  return false;
}

std::string note(const std::string& name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", name.c_str(), v);
  return buf;
}

void add_contact(ScenarioReport& rep, const FeatureSet& fs, FeatureKind a, FeatureKind b) {
  try {
    rep.contacts.push_back(contact_order(fs[a], fs[b], Point2{}));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("contact ") + to_string(a) + "/" + to_string(b) + ": " + e.what());
  }
}

}  // namespace

ScenarioReport detect_scenario(const MongePatch& patch, const ScenarioOptions& opt) {
  if (!patch.normalized(1e-9)) throw std::invalid_argument("detect_scenario: patch is not in normalized form");
  if (patch.degree() < 3) throw InsufficientDegree("detect_scenario: patch degree below 3");
  ScenarioReport rep;
  Tol tol;
  tol.rel = opt.rel_tol;
  for (int s = 2; s <= std::min(4, patch.degree()); ++s)
    for (int i = 0; i <= s; ++i) tol.amax = std::max(tol.amax, std::abs(patch.a(s, i)));
  rep.tolerances["rel_tol"] = opt.rel_tol;
  rep.tolerances["coefficient_scale"] = tol.amax;
  rep.tolerances["membership_tol"] = 1e-8;
  rep.tolerances["hessian_eps"] = 1e-7;
  rep.tolerances["config_radius"] = opt.config_radius;
  rep.tolerances["config_grid"] = opt.config_grid;

  const FeatureSet fs = feature_fields(patch, opt.conv);
  rep.origin = classify_point(patch, Point2{}, 1e-8, 0.5, opt.conv);
  rep.lambdas = lambda_invariants(patch);
  const LambdaVector& L = rep.lambdas;
  auto a = [&](int s, int i) { return patch.a(s, i); };
  const double a20 = a(2, 0), a21 = a(2, 1), a22 = a(2, 2);
  const double a30 = a(3, 0), a31 = a(3, 1), a32 = a(3, 2), a33 = a(3, 3);
  std::vector<std::string> degeneracies;
  auto require = [&](const std::string& name, std::optional<double> v, int degree) {
    if (v && tol.zero(*v, degree)) degeneracies.push_back(note(name, *v));
  };
  auto sing = [&](FeatureKind k) {
    rep.singularities.push_back(classify_singularity(fs[k], Point2{}));
    return rep.singularities.back().label;
  };
  const double r = opt.config_radius;
  const Rect box{-r, r, -r, r};
  auto local = [&](FeatureKind k) { return trace(fs[k], box, opt.config_grid); };

  if (patch.form() == MongeForm::TimelikeGraph) {
    const bool umbilic = tol.zero(a20 + a22, 1) && tol.zero(a21, 1);
    if (umbilic) {
      const bool flat = tol.zero(a20, 1);
      if (flat) rep.candidates.push_back(Scenario::FlatTimelikeUmbilic);
      if (tol.zero(*L[3], 2)) rep.candidates.push_back(Scenario::LplNonMorse);
      if (flat) {
        require("L3", L[3], 2);
        require("L4", L[4], 4);
        require("L5", L[5], 2);
        require("L6", L[6], 2);
        require("L7", L[7], 2);
      }
    } else {
      const bool triple = tol.zero(a22 - a20, 1) && tol.zero(a21 * a21 - 4 * a20 * a20, 2);
      if (triple && tol.zero(*L[1], 3)) rep.candidates.push_back(Scenario::LplPcMcncTangency);
      if (tol.zero(a22 - a20, 1) && tol.zero(a32 - 3 * a30, 1) && tol.zero(a31 - 3 * a33, 1)) {
        rep.candidates.push_back(Scenario::McncMorseSing);
        require("L10", L[10], 6);
      }
      const auto gk = fs[FeatureKind::PC].gradient(0, 0);
      if (tol.zero(fs[FeatureKind::PC](0, 0), 2) && tol.zero(std::hypot(gk[0], gk[1]), 3))
        rep.candidates.push_back(Scenario::PcMorseSing);
    }
  } else {
    const bool lpl = tol.zero(a20, 1);
    if (lpl && tol.zero(a21, 1)) {
      rep.candidates.push_back(Scenario::LightlikeUmbilic);
      require("L13", L[13], 3);
      require("a30", a30, 1);
      require("a22", a22, 1);
    } else {
      if (lpl && tol.zero(a21 * a21 + 3 * a30, 2)) {
        rep.candidates.push_back(Scenario::LdLplHighTangency);
        require("L12", L[12], 1);
      }
      const auto gd = fs[FeatureKind::LD].gradient(0, 0);
      const auto gk = fs[FeatureKind::PC].gradient(0, 0);
      if (tol.zero(fs[FeatureKind::PC](0, 0), 2) && tol.zero(gd[0] * gk[1] - gd[1] * gk[0], 4))
        rep.candidates.push_back(Scenario::LdPcTangency);
    }
  }

  rep.notes = degeneracies;
  if (rep.candidates.size() > 1 || !degeneracies.empty()) {
    rep.scenario = Scenario::Ambiguous;
    return rep;
  }
  rep.scenario = rep.candidates.empty() ? Scenario::Generic : rep.candidates.front();

  switch (rep.scenario) {
    case Scenario::Generic:
      if (patch.form() == MongeForm::TimelikeGraph) {
        if (rep.origin.umbilic != UmbilicType::None) {
          sing(FeatureKind::LPL);
        } else if (rep.origin.on_lpl && rep.origin.on_mcnc) {
          add_contact(rep, fs, FeatureKind::LPL, FeatureKind::PC);
          add_contact(rep, fs, FeatureKind::LPL, FeatureKind::MCNC);
        }
      } else if (rep.origin.on_lpl) {
        add_contact(rep, fs, FeatureKind::LD, FeatureKind::LPL);
        add_contact(rep, fs, FeatureKind::LD, FeatureKind::MCNC);
      }
      break;
    case Scenario::LplPcMcncTangency: {
      add_contact(rep, fs, FeatureKind::LPL, FeatureKind::PC);
      add_contact(rep, fs, FeatureKind::LPL, FeatureKind::MCNC);
      const FeatureField& lpl = fs[FeatureKind::LPL];
      const int side_mcnc = majority_sign(local(FeatureKind::MCNC), lpl, r);
      const int side_pc = majority_sign(local(FeatureKind::PC), lpl, r);
      if (side_mcnc != 0 && side_pc != 0) rep.configuration = side_mcnc == side_pc ? 1 : 2;
      try {
        const ContactOptions co;
        const double lead_m = contact_order(fs[FeatureKind::MCNC], lpl, Point2{}, co).leading_coefficient;
        const double lead_p = contact_order(fs[FeatureKind::PC], lpl, Point2{}, co).leading_coefficient;
        rep.predicted_configuration = sgn(lead_m) == sgn(lead_p) ? 1 : 2;
      } catch (const Error& e) {
        rep.notes.push_back(std::string("predicted configuration: ") + e.what());
      }
      break;
    }
    case Scenario::FlatTimelikeUmbilic: {
      sing(FeatureKind::LPL);
      sing(FeatureKind::PC);
      sing(FeatureKind::MCNC);
      const TracedCurve pc = local(FeatureKind::PC);
      if (isolated_at_origin(pc, r)) {
        rep.configuration = 1;
      } else {
        const FeatureField& K = fs[FeatureKind::PC];
        const int on_mcnc = majority_sign(local(FeatureKind::MCNC), K, r);
        const int on_lpl = majority_sign(local(FeatureKind::LPL), K, r);
        if (on_mcnc != 0 && on_lpl != 0) rep.configuration = on_mcnc == on_lpl ? 2 : 3;
      }
      rep.predicted_configuration = *L[4] < 0 ? 1 : (*L[6] * *L[7] > 0 ? 2 : 3);
      break;
    }
    case Scenario::LplNonMorse:
      sing(FeatureKind::LPL);
      break;
    case Scenario::McncMorseSing:
      sing(FeatureKind::MCNC);
      break;
    case Scenario::PcMorseSing:
      sing(FeatureKind::PC);
      break;
    case Scenario::LdLplHighTangency:
      add_contact(rep, fs, FeatureKind::LD, FeatureKind::LPL);
      add_contact(rep, fs, FeatureKind::LD, FeatureKind::MCNC);
      break;
    case Scenario::LdPcTangency:
      add_contact(rep, fs, FeatureKind::LD, FeatureKind::PC);
      break;
    case Scenario::LightlikeUmbilic: {
      const SingularityLabel ld_label = sing(FeatureKind::LD);
      const SingularityLabel lpl_label = sing(FeatureKind::LPL);
      (void)ld_label;
      (void)lpl_label;
      const TracedCurve ld = local(FeatureKind::LD);
      const TracedCurve lpl = local(FeatureKind::LPL);
      const bool ld_plus = isolated_at_origin(ld, r);
      const bool lpl_plus = isolated_at_origin(lpl, r);
      if (lpl_plus) {
        rep.configuration = ld_plus ? 1 : 2;
      } else {
        const FeatureField& dt = fs[FeatureKind::LPL];
        const int on_mcnc = majority_sign(local(FeatureKind::MCNC), dt, r);
        const double nn = std::hypot(3 * a30, a31);
        const double px = 0.5 * r * 3 * a30 / nn, py = 0.5 * r * a31 / nn;
        const int outside = sgn(dt(px, py) + dt(-px, -py));
        const bool between = on_mcnc != 0 && on_mcnc != outside;
        rep.configuration = 3 + (ld_plus ? 0 : 2) + (between ? 0 : 1);
      }
      const double l13 = *L[13];
      const bool p_ld_plus = l13 > 0;
      const bool p_lpl_plus = l13 / a30 < 0;
      const bool p_between = (3 * a30 * a32 - a31 * a31) / a30 > 0;
      rep.predicted_configuration =
          p_lpl_plus ? (p_ld_plus ? 1 : 2) : 3 + (p_ld_plus ? 0 : 2) + (p_between ? 0 : 1);
      break;
    }
    case Scenario::Ambiguous:
      break;
  }
  return rep;
}

}  // namespace minkcurves
