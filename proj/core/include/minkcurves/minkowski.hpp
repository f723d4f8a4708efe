#pragma once

#include <array>
#include <string>

namespace minkcurves {

// Vector of R^3_1 with components (u0, u1, u2); u2 is the timelike axis.
struct Vec3M {
  double u0 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;

  double operator[](int k) const { return k == 0 ? u0 : (k == 1 ? u1 : u2); }
};

Vec3M operator+(const Vec3M& a, const Vec3M& b);
Vec3M operator-(const Vec3M& a, const Vec3M& b);
Vec3M operator*(double s, const Vec3M& a);

enum class CausalType { Spacelike, Lightlike, Timelike };

std::string to_string(CausalType t);

// u0 v0 + u1 v1 - u2 v2
double inner(const Vec3M& u, const Vec3M& v);

// Pseudo cross product: the unique p with inner(p, w) = det(u, v, w) for all w.
Vec3M cross(const Vec3M& u, const Vec3M& v);

double det3(const Vec3M& a, const Vec3M& b, const Vec3M& c);
double euclidean_norm_sq(const Vec3M& u);

// Lightlike when |<u,u>| < 1e-10 * max(1, |u|^2). Throws ZeroVector for u = 0.
CausalType causal_type(const Vec3M& u);

// Sign applied to the pseudo cross product when building the normal.
// Standard keeps inner(u x v, w) = det(u, v, w); Flipped negates it, which
// negates l, m, n and therefore the mean-curvature field only.
enum class CrossConvention { Standard, Flipped };

inline double convention_sign(CrossConvention c) { return c == CrossConvention::Standard ? 1.0 : -1.0; }

}  // namespace minkcurves
