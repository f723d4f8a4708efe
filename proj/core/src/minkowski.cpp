#include "minkcurves/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include "minkcurves/errors.hpp"

namespace minkcurves {

Vec3M operator+(const Vec3M& a, const Vec3M& b) { return {a.u0 + b.u0, a.u1 + b.u1, a.u2 + b.u2}; }
Vec3M operator-(const Vec3M& a, const Vec3M& b) { return {a.u0 - b.u0, a.u1 - b.u1, a.u2 - b.u2}; }
Vec3M operator*(double s, const Vec3M& a) { return {s * a.u0, s * a.u1, s * a.u2}; }

std::string to_string(CausalType t) {
  switch (t) {
    case CausalType::Spacelike: return "spacelike";
    case CausalType::Lightlike: return "lightlike";
    case CausalType::Timelike: return "timelike";
  }
  return "unknown";
}

double inner(const Vec3M& u, const Vec3M& v) { return u.u0 * v.u0 + u.u1 * v.u1 - u.u2 * v.u2; }

Vec3M cross(const Vec3M& u, const Vec3M& v) {
  return {u.u1 * v.u2 - u.u2 * v.u1, u.u2 * v.u0 - u.u0 * v.u2, u.u1 * v.u0 - u.u0 * v.u1};
}

double det3(const Vec3M& a, const Vec3M& b, const Vec3M& c) {
  return a.u0 * (b.u1 * c.u2 - b.u2 * c.u1) - a.u1 * (b.u0 * c.u2 - b.u2 * c.u0) +
         a.u2 * (b.u0 * c.u1 - b.u1 * c.u0);
}

double euclidean_norm_sq(const Vec3M& u) { return u.u0 * u.u0 + u.u1 * u.u1 + u.u2 * u.u2; }

CausalType causal_type(const Vec3M& u) {
  const double e = euclidean_norm_sq(u);
  if (e == 0.0) throw ZeroVector("causal_type: zero vector");
  const double q = inner(u, u);
  if (std::abs(q) < 1e-10 * std::max(1.0, e)) return CausalType::Lightlike;
  return q > 0.0 ? CausalType::Spacelike : CausalType::Timelike;
}

}  // namespace minkcurves
