#include "minkcurves/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "minkcurves/errors.hpp"

namespace minkcurves {

Jet2::Jet2(int degree) : degree_(std::max(degree, 0)), c_(count_for_degree(degree_), 0.0) {}

Jet2 Jet2::constant(double c, int degree) {
  Jet2 j(degree);
  j.c_[0] = c;
  return j;
}

Jet2 Jet2::monomial(int p, int q, double c, int degree) {
  Jet2 j(degree);
  if (p + q <= degree) j.set(p + q, q, c);
  return j;
}

Jet2 Jet2::from_coefficients(int degree, const std::vector<Coefficient>& coeffs) {
  Jet2 j(degree);
  for (const auto& e : coeffs) {
    if (e.s < 0 || e.i < 0 || e.i > e.s) continue;
    if (e.s <= degree) j.add_to(e.s, e.i, e.value);
  }
  return j;
}

double Jet2::coeff(int s, int i) const {
  if (s < 0 || s > degree_ || i < 0 || i > s) return 0.0;
  return c_[index(s, i)];
}

void Jet2::set(int s, int i, double value) {
  if (s < 0 || s > degree_ || i < 0 || i > s) return;
  c_[index(s, i)] = value;
}

void Jet2::add_to(int s, int i, double value) {
  if (s < 0 || s > degree_ || i < 0 || i > s) return;
  c_[index(s, i)] += value;
}

double Jet2::operator()(double x, double y) const {
  // Horner in x for each fixed power of y: sum_q y^q * sum_p a x^p.
  double result = 0.0;
  double yq = 1.0;
  for (int q = 0; q <= degree_; ++q) {
    double inner = 0.0;
    for (int p = degree_ - q; p >= 0; --p) inner = inner * x + c_[index(p + q, q)];
    result += yq * inner;
    yq *= y;
  }
  return result;
}

double Jet2::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool Jet2::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

Jet2 Jet2::with_degree(int k) const {
  Jet2 out(k);
  const int top = std::min(k, degree_);
  std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(count_for_degree(top)),
            out.c_.begin());
  return out;
}

Jet2 Jet2::trimmed() const {
  int top = degree_;
  while (top > 0) {
    bool zero = true;
    for (int i = 0; i <= top; ++i) {
      if (c_[index(top, i)] != 0.0) {
        zero = false;
        break;
      }
    }
    if (!zero) break;
    --top;
  }
  return with_degree(top);
}

std::vector<Coefficient> Jet2::coefficients() const {
  std::vector<Coefficient> out;
  out.reserve(c_.size());
  for (int s = 0; s <= degree_; ++s)
    for (int i = 0; i <= s; ++i) out.push_back({s, i, c_[index(s, i)]});
  return out;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  if (o.degree_ > degree_) *this = with_degree(o.degree_);
  for (std::size_t n = 0; n < o.c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  if (o.degree_ > degree_) *this = with_degree(o.degree_);
  for (std::size_t n = 0; n < o.c_.size(); ++n) c_[n] -= o.c_[n];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  r *= -1.0;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r += b;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r -= b;
  return r;
}

Jet2 operator*(double s, const Jet2& a) {
  Jet2 r = a;
  r *= s;
  return r;
}

Jet2 operator*(const Jet2& a, double s) { return s * a; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return multiply(a, b, std::max(a.degree(), b.degree()));
}

Jet2 multiply(const Jet2& a, const Jet2& b, int degree) {
  Jet2 r(degree);
  const int da = std::min(a.degree(), degree);
  for (int s1 = 0; s1 <= da; ++s1) {
    const int db = std::min(b.degree(), degree - s1);
    for (int i1 = 0; i1 <= s1; ++i1) {
      const double ca = a.coeff(s1, i1);
      if (ca == 0.0) continue;
      for (int s2 = 0; s2 <= db; ++s2)
        for (int i2 = 0; i2 <= s2; ++i2) {
          const double cb = b.coeff(s2, i2);
          if (cb != 0.0) r.add_to(s1 + s2, i1 + i2, ca * cb);
        }
    }
  }
  return r;
}

Jet2 product_exact(const Jet2& a, const Jet2& b) {
  return multiply(a, b, a.degree() + b.degree());
}

Jet2 differentiate(const Jet2& a, Var var) {
  Jet2 r(std::max(a.degree() - 1, 0));
  for (int s = 1; s <= a.degree(); ++s)
    for (int i = 0; i <= s; ++i) {
      const int p = s - i;
      const int q = i;
      const double c = a.coeff(s, i);
      if (var == Var::X) {
        if (p > 0) r.add_to(s - 1, q, p * c);
      } else {
        if (q > 0) r.add_to(s - 1, q - 1, q * c);
      }
    }
  return r;
}

Jet2 compose(const Jet2& outer, const Jet2& u, const Jet2& v) {
  if (u.constant_term() != 0.0 || v.constant_term() != 0.0)
    throw NonzeroConstantTerm("compose: inner jets must vanish at the origin");
  const int k = std::max(u.degree(), v.degree());
  const Jet2 uk = u.with_degree(k);
  const Jet2 vk = v.with_degree(k);
  const int top = std::min(outer.degree(), k);
  // u^p and v^q vanish below degree p and q, so powers past k are not needed.
  std::vector<Jet2> upow{Jet2::constant(1.0, k)};
  std::vector<Jet2> vpow{Jet2::constant(1.0, k)};
  for (int p = 1; p <= top; ++p) {
    upow.push_back(upow.back() * uk);
    vpow.push_back(vpow.back() * vk);
  }
  Jet2 r(k);
  for (int s = 0; s <= top; ++s)
    for (int i = 0; i <= s; ++i) {
      const double c = outer.coeff(s, i);
      if (c == 0.0) continue;
      r += c * (upow[s - i] * vpow[i]);
    }
  return r;
}

Jet2 recenter(const Jet2& a, double px, double py) {
  // a(px + x, py + y) expanded with binomial coefficients.
  const int k = a.degree();
  std::vector<std::vector<double>> binom(k + 1, std::vector<double>(k + 1, 0.0));
  for (int n = 0; n <= k; ++n) {
    binom[n][0] = 1.0;
    for (int j = 1; j <= n; ++j) binom[n][j] = binom[n - 1][j - 1] + (j <= n - 1 ? binom[n - 1][j] : 0.0);
  }
  std::vector<double> xpow(k + 1, 1.0);
  std::vector<double> ypow(k + 1, 1.0);
  for (int n = 1; n <= k; ++n) {
    xpow[n] = xpow[n - 1] * px;
    ypow[n] = ypow[n - 1] * py;
  }
  Jet2 r(k);
  for (int s = 0; s <= k; ++s)
    for (int i = 0; i <= s; ++i) {
      const double c = a.coeff(s, i);
      if (c == 0.0) continue;
      const int p = s - i;
      const int q = i;
      for (int a1 = 0; a1 <= p; ++a1)
        for (int b1 = 0; b1 <= q; ++b1)
          r.add_to(a1 + b1, b1, c * binom[p][a1] * xpow[p - a1] * binom[q][b1] * ypow[q - b1]);
    }
  return r;
}

Series series_multiply(const Series& a, const Series& b, int order) {
  Series r(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

Series restrict_to_graph(const Jet2& b, Var solved, const Series& g, int order) {
  // Terms x^p y^q with the solved variable replaced by g(t) and the free one by t.
  Series r(order + 1, 0.0);
  Series gpow{1.0};
  gpow.resize(order + 1, 0.0);
  const int k = b.degree();
  for (int m = 0; m <= std::min(k, order); ++m) {
    // gpow holds g^m; contributes with every free-variable power up to order - m.
    for (int f = 0; f + m <= k && f <= order; ++f) {
      const double c = solved == Var::Y ? b.xy(f, m) : b.xy(m, f);
      if (c == 0.0) continue;
      for (int n = 0; n + f <= order; ++n) r[n + f] += c * gpow[n];
    }
    gpow = series_multiply(gpow, g, order);
  }
  return r;
}

Series ift_series(const Jet2& F, Var solve_for, int order) {
  const double fs = solve_for == Var::Y ? F.xy(0, 1) : F.xy(1, 0);
  const double scale = std::max(1.0, F.max_abs());
  if (std::abs(fs) <= 1e-12 * scale)
    throw DegenerateIFT("ift_series: partial derivative in the solved variable vanishes");
  if (std::abs(F.constant_term()) > 1e-12 * scale)
    throw Error("ift_series: the jet does not vanish at the origin");
  Series g(order + 1, 0.0);
  for (int j = 1; j <= order; ++j) {
    const Series r = restrict_to_graph(F, solve_for, g, j);
    g[j] = -r[j] / fs;
  }
  return g;
}

double quartic_discriminant_closed_form(double u, double v, double w) {
  const double u2 = u * u;
  const double v2 = v * v;
  return 256.0 * w * w * w - 128.0 * u2 * w * w + 16.0 * u2 * u2 * w + 144.0 * u * v2 * w -
         27.0 * v2 * v2 - 4.0 * u2 * u * v2;
}

ResultantPair resultant_quartic_cubic(double u, double v, double w) {
  const double P[5] = {1.0, 0.0, u, v, w};
  const double Q[4] = {4.0, 0.0, 2.0 * u, v};
  Eigen::Matrix<double, 7, 7> S = Eigen::Matrix<double, 7, 7>::Zero();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) S(r, r + c) = P[c];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) S(3 + r, r + c) = Q[c];
  ResultantPair out;
  out.closed_form = quartic_discriminant_closed_form(u, v, w);
  out.sylvester = S.determinant();
  return out;
}

}  // namespace minkcurves
