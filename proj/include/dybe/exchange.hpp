#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/fusion.hpp"
#include "dybe/hyperg.hpp"
#include "dybe/matrix.hpp"
#include "dybe/scalars.hpp"

// Exchange matrix R_{delta,gamma}(lambda) = J_{delta,gamma}^{-1} J_{gamma,delta}^{21}
// on V_delta (x) V_gamma. Blocks use second-factor indexing:
//
//   R (v^delta_{-delta+2s-2n} (x) v^gamma_{-gamma+2n}) = sum_m C_{m,n} v^delta_{-delta+2s-2m} (x) v^gamma_{-gamma+2m}
//
// for m, n in max(0, s-delta)..min(gamma, s).

namespace dybe::exchange {

namespace detail {

inline void check_block_index(int m, int n, int s, int gamma, int delta) {
  auto [lo, hi] = block_range(delta, gamma, s, BlockIndex::second_factor);
  if (m < lo || m > hi || n < lo || n > hi) throw std::invalid_argument("exchange index outside block range");
}

template <Field F>
F eval_generic(const HypSeries<F>& s) {
  try {
    return eval_terminating(s);
  } catch (const lower_parameter_collision&) {
    throw non_generic_lambda();
  }
}

} // namespace detail

/// C_{m,n} as the single sum over k of B^{lambda-gamma,gamma-s}_{s-m,s-k} A^{lambda-delta,delta-s}_{k,n}.
template <Field F>
F exchange_C(int m, int n, int s, const F& lambda, int gamma, int delta) {
  detail::check_block_index(m, n, s, gamma, delta);
  F sum(0L);
  for (int k = std::max(0, s - delta); k <= std::min(m, n); ++k)
    sum = sum + fusion::fusion_B(s - m, s - k, lambda, gamma, s) * fusion::fusion_A(k, n, lambda, delta, s);
  return sum;
}

/// The balanced 4F3 appearing in C_{m,n} for s <= delta.
template <Field F>
HypSeries<F> series_small_s(int m, int n, int s, const F& lambda, int gamma, int delta) {
  return hyp<F>({F(long{-m}), -lambda + F(long{-gamma + m - 1}), F(long{-n}), lambda + F(long{delta - 2 * s + n + 1})},
                {F(long{-s}), F(long{-gamma}), F(long{delta - s + 1})});
}

/// The balanced 4F3 appearing in C_{m,n} for s >= delta.
template <Field F>
HypSeries<F> series_large_s(int m, int n, int s, const F& lambda, int gamma, int delta) {
  return hyp<F>({F(long{-m + s - delta}), -lambda + F(long{-gamma - delta + s + m - 1}), F(long{-n + s - delta}),
                 lambda + F(long{-s + n + 1})},
                {F(long{-delta}), F(long{-gamma - delta + s}), F(long{s - delta + 1})});
}

/// Closed form of C_{m,n} for s <= delta and m, n <= min(gamma, s).
template <Field F>
F exchange_C_small_s(int m, int n, int s, const F& lambda, int gamma, int delta) {
  if (s > delta) throw std::invalid_argument("closed form requires s <= delta");
  detail::check_block_index(m, n, s, gamma, delta);
  F num = F(sign_power(m)) * pochhammer(F(long{-s}), m) * pochhammer(F(long{-gamma}), m) *
          pochhammer(F(long{delta - s + 1}), n);
  F den = from_rat<F>(factorial(m)) * pochhammer(-lambda + F(long{-gamma + m - 1}), m) *
          pochhammer(-lambda + F(long{-delta + 2 * s - 2 * n}), n);
  if (den.is_zero()) throw non_generic_lambda();
  return num / den * detail::eval_generic(series_small_s(m, n, s, lambda, gamma, delta));
}

/// Closed form of C_{m,n} for s >= delta and s-delta <= m, n <= min(gamma, s).
template <Field F>
F exchange_C_large_s(int m, int n, int s, const F& lambda, int gamma, int delta) {
  if (s < delta) throw std::invalid_argument("closed form requires s >= delta");
  detail::check_block_index(m, n, s, gamma, delta);
  const int p = m + delta - s;
  const int q = n + delta - s;
  F num = F(sign_power(n + delta - s)) * pochhammer(F(long{-delta}), p) * pochhammer(F(long{s - gamma - delta}), p) *
          from_rat<F>(factorial(n));
  F den = pochhammer(lambda + F(long{gamma - 2 * m + 2}), p) * pochhammer(lambda + F(long{-s + n + 1}), q) *
          from_rat<F>(factorial(p) * factorial(s - delta));
  if (den.is_zero()) throw non_generic_lambda();
  return num / den * detail::eval_generic(series_large_s(m, n, s, lambda, gamma, delta));
}

/// C_{m,n} through whichever closed form applies.
template <Field F>
F exchange_C_closed(int m, int n, int s, const F& lambda, int gamma, int delta) {
  return s <= delta ? exchange_C_small_s(m, n, s, lambda, gamma, delta)
                    : exchange_C_large_s(m, n, s, lambda, gamma, delta);
}

/// R_{delta,gamma}(lambda) = J_{delta,gamma}^{-1} . P J_{gamma,delta} P.
template <Field F>
WeightedMatrix<F> assemble_R(int delta, int gamma, const F& lambda) {
  auto j_inv = fusion::assemble_J_inv(delta, gamma, lambda).with_kind(BlockIndex::second_factor);
  auto j21 = fusion::assemble_J(gamma, delta, lambda).flipped();
  return j_inv * j21;
}

/// Exchange matrix whose block entries are C_{m,n} from the single sum.
template <Field F>
WeightedMatrix<F> assemble_R_from_sum(int delta, int gamma, const F& lambda) {
  WeightedMatrix<F> out(delta, gamma, BlockIndex::second_factor);
  for (int s = 0; s <= delta + gamma; ++s) {
    auto& blk = out.block(s);
    for (int m = blk.lo; m <= blk.hi; ++m)
      for (int n = blk.lo; n <= blk.hi; ++n) blk.at(m, n) = exchange_C(m, n, s, lambda, gamma, delta);
  }
  return out;
}

/// R_{delta,gamma}(lambda)^{-1}, with entries C^{lambda,delta,gamma,s}_{s-m,s-n}.
template <Field F>
WeightedMatrix<F> assemble_R_inv(int delta, int gamma, const F& lambda) {
  WeightedMatrix<F> out(delta, gamma, BlockIndex::second_factor);
  for (int s = 0; s <= delta + gamma; ++s) {
    auto& blk = out.block(s);
    for (int m = blk.lo; m <= blk.hi; ++m)
      for (int n = blk.lo; n <= blk.hi; ++n) blk.at(m, n) = exchange_C_closed(s - m, s - n, s, lambda, delta, gamma);
  }
  return out;
}

/// Racah polynomial R_m(x(x+g+d+1); a, b, g, d) as the terminating
/// 4F3(-m, m+a+b+1, -x, x+g+d+1; a+1, b+d+1, g+1; 1).
template <Field F>
F racah_eval(int m, int x, const F& alpha, const F& beta, const F& gamma_p, const F& delta_p) {
  auto s = hyp<F>({F(long{-m}), F(long{m + 1}) + alpha + beta, F(long{-x}), F(long{x + 1}) + gamma_p + delta_p},
                  {alpha + F(1L), beta + delta_p + F(1L), gamma_p + F(1L)});
  return eval_terminating(s);
}

/// Racah parameters (alpha, beta, gamma', delta') matching the small-s series.
template <Field F>
std::vector<F> racah_parameters(const F& lambda, int gamma, int delta, int s) {
  return {F(long{-gamma - 1}), -lambda - F(1L), F(long{-s - 1}), lambda + F(long{delta - s + 1})};
}

/// Sum over x of C^{lambda,gamma,delta,s}_{m,x} C^{lambda,delta,gamma,s}_{s-x,s-n}
/// equals [m = n] for all m, n in 0..s (requires s <= min(gamma, delta)).
template <Field F>
bool biorthogonality_check(int gamma, int delta, int s, const F& lambda) {
  if (s > std::min(gamma, delta)) throw std::invalid_argument("biorthogonality needs s <= min(gamma, delta)");
  for (int m = 0; m <= s; ++m)
    for (int n = 0; n <= s; ++n) {
      F sum(0L);
      for (int x = std::max(0, s - delta); x <= std::min(gamma, s); ++x)
        sum = sum + exchange_C_closed(m, x, s, lambda, gamma, delta) *
                        exchange_C_closed(s - x, s - n, s, lambda, delta, gamma);
      if (!(sum == F(m == n ? 1L : 0L))) return false;
    }
  return true;
}

/// Result of rewriting the 4F3 of the inverse exchange coefficients into the
/// small-s series with m and n interchanged by two Whipple transformations.
template <Field F>
struct WhippleChain {
  HypSeries<F> start;
  F prefactor;          ///< product of the two Whipple prefactors
  HypSeries<F> result;  ///< parameters after both transformations
  F expected_prefactor; ///< closed product of Pochhammer ratios
  HypSeries<F> expected_series;
};

template <Field F>
WhippleChain<F> whipple_chain(int m, int n, int s, const F& lambda, int gamma, int delta) {
  auto start = hyp<F>({F(long{n - s}), lambda + F(long{gamma - s - n + 1}), F(long{m - s}),
                       -lambda + F(long{-delta + s - m - 1})},
                      {F(long{-s}), F(long{-delta}), F(long{gamma - s + 1})});
  auto first = whipple_transform(start);
  // Reorder to (-m, ., n-s, .) so that -m leads the second transformation.
  const auto& u = first.series.upper;
  auto middle = hyp<F>({u[2], u[3], u[0], u[1]}, first.series.lower);
  auto second = whipple_transform(middle);

  F ep_num = pochhammer(-lambda + F(long{-gamma - delta + s + n - 1}), s - n) * pochhammer(-lambda + F(long{n}), s - n) *
             pochhammer(F(long{gamma - m + 1}), m) * pochhammer(F(long{-delta + s - m}), m);
  F ep_den = pochhammer(F(long{-delta}), s - n) * pochhammer(F(long{gamma - s + 1}), s - n) *
             pochhammer(lambda + F(long{gamma + delta - 2 * s + 2}), m) * pochhammer(lambda + F(long{-s + 1}), m);
  if (ep_den.is_zero()) throw non_generic_lambda();
  return {start, first.prefactor * second.prefactor, second.series, ep_num / ep_den,
          series_small_s(n, m, s, lambda, gamma, delta)};
}

/// Parameter lists agree up to order.
template <Field F>
bool same_parameters(std::vector<F> a, std::vector<F> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

/// The two-step Whipple rewrite reproduces the displayed prefactor and series,
/// and preserves the value.
template <Field F>
bool whipple_chain_check(int m, int n, int s, const F& lambda, int gamma, int delta) {
  auto c = whipple_chain(m, n, s, lambda, gamma, delta);
  return c.prefactor == c.expected_prefactor && same_parameters(c.result.upper, c.expected_series.upper) &&
         same_parameters(c.result.lower, c.expected_series.lower) &&
         detail::eval_generic(c.start) == c.prefactor * detail::eval_generic(c.result);
}

} // namespace dybe::exchange
