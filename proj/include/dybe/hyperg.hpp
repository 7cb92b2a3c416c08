#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/scalars.hpp"

namespace dybe {

/// pFq[upper; lower; z] with at least one literal nonpositive-integer upper
/// parameter, so the series is a finite sum.
template <Field F>
struct HypSeries {
  std::vector<F> upper;
  std::vector<F> lower;
  F z{1L};
};

template <Field F>
HypSeries<F> hyp(std::vector<F> upper, std::vector<F> lower, F z = F(1L)) {
  return {std::move(upper), std::move(lower), std::move(z)};
}

/// Index of the last term: the smallest -p over upper parameters p that are
/// literal nonpositive integers. Symbolic parameters never count.
template <Field F>
long termination_order(const HypSeries<F>& s) {
  std::optional<long> best;
  for (const auto& p : s.upper) {
    auto v = as_integer(p);
    if (v && *v <= 0 && (!best || -*v < *best)) best = -*v;
  }
  if (!best) throw error("series does not terminate: no nonpositive integer upper parameter");
  return *best;
}

/// Exact value of a terminating series, accumulated by term ratios.
template <Field F>
F eval_terminating(const HypSeries<F>& s) {
  const long N = termination_order(s);
  F term(1L);
  F sum(1L);
  for (long k = 0; k < N; ++k) {
    F num(1L);
    for (const auto& a : s.upper) num = num * (a + F(k));
    F den(k + 1);
    for (const auto& b : s.lower) {
      F bk = b + F(k);
      if (bk.is_zero()) throw lower_parameter_collision();
      den = den * bk;
    }
    term = term * num * s.z / den;
    sum = sum + term;
  }
  return sum;
}

/// Coefficients t_0..t_{K-1} of the formal series sum_k t_k z^k, without
/// requiring termination. Used to cross-check closed forms term by term.
template <Field F>
std::vector<F> series_coefficients(const std::vector<F>& upper, const std::vector<F>& lower, int count) {
  std::vector<F> out;
  F t(1L);
  for (int k = 0; k < count; ++k) {
    out.push_back(t);
    F num(1L);
    for (const auto& a : upper) num = num * (a + F(long{k}));
    F den(long{k} + 1);
    for (const auto& b : lower) {
      F bk = b + F(long{k});
      if (bk.is_zero()) throw lower_parameter_collision();
      den = den * bk;
    }
    t = t * num / den;
  }
  return out;
}

/// 2F1(-n, b; c; 1) = (c-b)_n / (c)_n.
template <Field F>
F chu_vandermonde(long n, const F& b, const F& c) {
  F den = pochhammer(c, n);
  if (den.is_zero()) throw zero_denominator();
  return pochhammer(c - b, n) / den;
}

template <Field F>
struct WhippleResult {
  F prefactor;
  HypSeries<F> series;
};

/// Whipple's transformation of a terminating balanced 4F3(1). The input must
/// list its upper parameters as (-n, a, b, c) and lower as (d, e, f) with
/// a + b + c - n + 1 = d + e + f. Returns the prefactor
/// (e-a)_n (f-a)_n / ((e)_n (f)_n) and the series
/// 4F3(-n, a, d-b, d-c; d, 1+a-e-n, 1+a-f-n; 1).
template <Field F>
WhippleResult<F> whipple_transform(const HypSeries<F>& s) {
  if (s.upper.size() != 4 || s.lower.size() != 3)
    throw std::invalid_argument("whipple_transform expects a 4F3");
  if (!(s.z == F(1L))) throw std::invalid_argument("whipple_transform expects argument 1");
  auto mn = as_integer(s.upper[0]);
  if (!mn || *mn > 0) throw std::invalid_argument("first upper parameter must be a nonpositive integer");
  const long n = -*mn;
  const F& a = s.upper[1];
  const F& b = s.upper[2];
  const F& c = s.upper[3];
  const F& d = s.lower[0];
  const F& e = s.lower[1];
  const F& f = s.lower[2];
  if (!(a + b + c - F(n) + F(1L) == d + e + f)) throw balance_violation();

  F den = pochhammer(e, n) * pochhammer(f, n);
  if (den.is_zero()) throw lower_parameter_collision();
  F pre = pochhammer(e - a, n) * pochhammer(f - a, n) / den;
  HypSeries<F> out{{s.upper[0], a, d - b, d - c},
                   {d, F(1L) + a - e - F(n), F(1L) + a - f - F(n)},
                   F(1L)};
  return {std::move(pre), std::move(out)};
}

} // namespace dybe
