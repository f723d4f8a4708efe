#pragma once

#include <cstddef>
#include <vector>

namespace minkcurves {

enum class Var { X, Y };

// One entry a_{si} of a jet: the coefficient of x^{s-i} y^i.
struct Coefficient {
  int s = 0;
  int i = 0;
  double value = 0.0;
};

// Truncated bivariate polynomial sum_{s<=k} sum_{i<=s} a_{si} x^{s-i} y^i,
// stored densely in triangular order.
class Jet2 {
 public:
  Jet2() : Jet2(0) {}
  explicit Jet2(int degree);

  static Jet2 constant(double c, int degree);
  // c * x^p * y^q; dropped if p+q exceeds the degree.
  static Jet2 monomial(int p, int q, double c, int degree);
  static Jet2 from_coefficients(int degree, const std::vector<Coefficient>& coeffs);

  static std::size_t index(int s, int i) {
    return static_cast<std::size_t>(s) * (s + 1) / 2 + i;
  }
  static std::size_t count_for_degree(int k) {
    return static_cast<std::size_t>(k + 1) * (k + 2) / 2;
  }

  int degree() const { return degree_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<double>& data() const { return c_; }

  // a_{si}; zero outside the stored range.
  double coeff(int s, int i) const;
  void set(int s, int i, double value);
  void add_to(int s, int i, double value);
  // Coefficient of x^p y^q.
  double xy(int p, int q) const { return coeff(p + q, q); }

  double operator()(double x, double y) const;
  double constant_term() const { return c_[0]; }
  double max_abs() const;
  bool is_zero() const;

  // Zero-pads or truncates to degree k.
  Jet2 with_degree(int k) const;
  // Drops trailing all-zero degrees.
  Jet2 trimmed() const;
  std::vector<Coefficient> coefficients() const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double s);
  Jet2 operator-() const;

 private:
  int degree_;
  std::vector<double> c_;
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator*(const Jet2& a, double s);
// Truncated product at max(deg a, deg b).
Jet2 operator*(const Jet2& a, const Jet2& b);

Jet2 multiply(const Jet2& a, const Jet2& b, int degree);
// Product kept at degree deg a + deg b, so nothing is lost.
Jet2 product_exact(const Jet2& a, const Jet2& b);

Jet2 differentiate(const Jet2& a, Var var);

// outer(u(x,y), v(x,y)) truncated at max(deg u, deg v).
// Throws NonzeroConstantTerm if u or v has a constant term.
Jet2 compose(const Jet2& outer, const Jet2& u, const Jet2& v);

// Exact Taylor shift: the same polynomial expanded about (px, py).
Jet2 recenter(const Jet2& a, double px, double py);

// Univariate power series c[0] + c[1] t + ...
using Series = std::vector<double>;

// Coefficients g[0..order] (g[0] = 0) of the series solving F = 0 for the
// chosen variable as a function of the other one.
// Throws DegenerateIFT when the partial in the solved variable vanishes.
Series ift_series(const Jet2& F, Var solve_for, int order);

// b restricted to the graph {solved = g(other)}, as a series in the free
// variable through the given order.
Series restrict_to_graph(const Jet2& b, Var solved, const Series& g, int order);

Series series_multiply(const Series& a, const Series& b, int order);

struct ResultantPair {
  double closed_form = 0.0;
  double sylvester = 0.0;
};

// Resultant of y^4 + u y^2 + v y + w and 4 y^3 + 2 u y + v, both through the
// expanded polynomial and through the 7x7 Sylvester determinant.
ResultantPair resultant_quartic_cubic(double u, double v, double w);
double quartic_discriminant_closed_form(double u, double v, double w);

}  // namespace minkcurves
