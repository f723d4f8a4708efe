#pragma once

#include <cmath>
#include <initializer_list>
#include <random>
#include <tuple>

#include "minkcurves/surface.hpp"

namespace mctest {

using namespace minkcurves;

// Jet from (power of x, power of y, value) triples.
inline Jet2 jet_xy(int degree, std::initializer_list<std::tuple<int, int, double>> terms) {
  Jet2 j(degree);
  for (const auto& [p, q, c] : terms) j.add_to(p + q, q, c);
  return j;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// |value| in [lo, hi] with a random sign.
inline double away_from_zero(std::mt19937_64& rng, double lo, double hi) {
  const double v = uniform(rng, lo, hi);
  return std::bernoulli_distribution(0.5)(rng) ? v : -v;
}

inline Jet2 random_jet(std::mt19937_64& rng, int degree, double amp = 1.0) {
  Jet2 j(degree);
  for (int s = 0; s <= degree; ++s)
    for (int i = 0; i <= s; ++i) j.set(s, i, uniform(rng, -amp, amp));
  return j;
}

// Normalized Monge patch with random coefficients from degree 2 upward.
inline MongePatch random_patch(std::mt19937_64& rng, MongeForm form, int degree, double amp = 1.0) {
  Jet2 f(degree);
  if (form == MongeForm::LightconeGraph) f.set(1, 0, 1.0);
  for (int s = 2; s <= degree; ++s)
    for (int i = 0; i <= s; ++i) f.set(s, i, uniform(rng, -amp, amp));
  return MongePatch(form, f);
}

// Lightcone patch at a lightlike umbilic with the leading quantities kept
// away from zero.
inline MongePatch random_lightlike_umbilic(std::mt19937_64& rng, int degree) {
  for (;;) {
    MongePatch p = random_patch(rng, MongeForm::LightconeGraph, degree);
    Jet2 f = p.f();
    f.set(2, 0, 0.0);
    f.set(2, 1, 0.0);
    f.set(2, 2, away_from_zero(rng, 0.3, 1.0));
    f.set(3, 0, away_from_zero(rng, 0.3, 1.0));
    const double a22 = f.coeff(2, 2), a30 = f.coeff(3, 0), a31 = f.coeff(3, 1), a32 = f.coeff(3, 2);
    const double l13 = 6 * a22 * a22 * a30 + 3 * a30 * a32 - a31 * a31;
    const double s = 3 * a30 * a32 - a31 * a31;
    if (std::abs(l13) < 0.2 || std::abs(s) < 0.1 || std::abs(18 * a22 * a22 * a30 + l13) < 0.1) continue;
    return MongePatch(MongeForm::LightconeGraph, f);
  }
}

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace mctest
