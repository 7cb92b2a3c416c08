#pragma once

#include <random>

#include "dybe/ratfield.hpp"
#include "dybe/scalars.hpp"

namespace dybe::testing {

inline RatQ lam() { return RatQ::variable(Var::lambda); }
inline RatQ lam_plus(long c) { return lam() + RatQ(c); }

/// Rational with numerator in [-range, range] and denominator in [1, den_max].
inline Rat random_rat(std::mt19937& g, long range = 20, long den_max = 9) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rat(num(g), den(g));
}

inline Poly<Rat> random_poly(std::mt19937& g, int degree, Var v = Var::lambda) {
  std::vector<Rat> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_rat(g, 6, 4));
  if (c.back().is_zero()) c.back() = Rat(1);
  return Poly<Rat>(std::move(c), v);
}

inline RatQ random_ratfunc(std::mt19937& g, int max_degree = 3, Var v = Var::lambda) {
  std::uniform_int_distribution<int> d(0, max_degree);
  return RatQ(random_poly(g, d(g), v), random_poly(g, d(g), v));
}

/// A rational avoiding the poles of every listed function.
template <class... Fs>
Rat regular_point(std::mt19937& g, const Fs&... fs) {
  for (;;) {
    Rat x = random_rat(g, 30, 7);
    if ((!fs.den()(x).is_zero() && ...)) return x;
  }
}

} // namespace dybe::testing
