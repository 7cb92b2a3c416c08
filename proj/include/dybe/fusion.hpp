#pragma once

#include "dybe/errors.hpp"
#include "dybe/intertwine.hpp"
#include "dybe/matrix.hpp"
#include "dybe/scalars.hpp"

// Fusion matrix J_{delta,gamma}(lambda) on V_delta (x) V_gamma and its inverse.
// In block s (first-factor indexing),
//
//   J (v^delta_{-delta+2n} (x) v^gamma_{-gamma+2s-2n}) = sum_m A_{m,n} v^delta_{-delta+2m} (x) ...
//
// with A, B upper triangular and unipotent.

namespace dybe::fusion {

namespace detail {

template <Field F>
F checked_ratio(const F& num, const F& den) {
  if (den.is_zero()) throw non_generic_lambda();
  return num / den;
}

} // namespace detail

/// A^{a,b}_{m,n} with a = lambda - gamma, b = gamma - s.
template <Field F>
F fusion_A_params(int m, int n, const F& a, const F& b) {
  if (m > n) return F(0L);
  const int d = n - m;
  F num = F(sign_power(d)) * from_rat<F>(factorial(n)) * pochhammer(-b - F(long{n}), d);
  F den = from_rat<F>(factorial(d) * factorial(m)) * pochhammer(-a - F(2L) * b - F(long{2 * n}), d);
  return detail::checked_ratio(num, den);
}

/// B^{a,b}_{m,n} with a = lambda - gamma, b = gamma - s.
template <Field F>
F fusion_B_params(int m, int n, const F& a, const F& b) {
  if (m > n) return F(0L);
  const int d = n - m;
  F num = from_rat<F>(factorial(n)) * pochhammer(-b - F(long{n}), d);
  F den = from_rat<F>(factorial(d) * factorial(m)) * pochhammer(-a - F(2L) * b - F(long{m + n + 1}), d);
  return detail::checked_ratio(num, den);
}

/// (-1)^{n-m} n! (-gamma+s-n)_{n-m} / ((n-m)! m! (-lambda-gamma+2s-2n)_{n-m}).
template <Field F>
F fusion_A(int m, int n, const F& lambda, int gamma, int s) {
  if (m > n) return F(0L);
  const int d = n - m;
  F num = F(sign_power(d)) * from_rat<F>(factorial(n)) * pochhammer(F(long{-gamma + s - n}), d);
  F den = from_rat<F>(factorial(d) * factorial(m)) * pochhammer(-lambda + F(long{-gamma + 2 * s - 2 * n}), d);
  return detail::checked_ratio(num, den);
}

/// n! (-gamma+s-n)_{n-m} / ((n-m)! m! (-lambda-gamma+2s-m-n-1)_{n-m}).
template <Field F>
F fusion_B(int m, int n, const F& lambda, int gamma, int s) {
  if (m > n) return F(0L);
  const int d = n - m;
  F num = from_rat<F>(factorial(n)) * pochhammer(F(long{-gamma + s - n}), d);
  F den = from_rat<F>(factorial(d) * factorial(m)) * pochhammer(-lambda + F(long{-gamma + 2 * s - m - n - 1}), d);
  return detail::checked_ratio(num, den);
}

namespace detail {

template <Field F, class Entry>
WeightedMatrix<F> assemble(int delta, int gamma, Entry&& entry) {
  WeightedMatrix<F> out(delta, gamma, BlockIndex::first_factor);
  for (int s = 0; s <= delta + gamma; ++s) {
    auto& blk = out.block(s);
    for (int m = blk.lo; m <= blk.hi; ++m)
      for (int n = m; n <= blk.hi; ++n) blk.at(m, n) = entry(m, n, s);
  }
  return out;
}

} // namespace detail

template <Field F>
WeightedMatrix<F> assemble_J(int delta, int gamma, const F& lambda) {
  return detail::assemble<F>(delta, gamma, [&](int m, int n, int s) { return fusion_A(m, n, lambda, gamma, s); });
}

template <Field F>
WeightedMatrix<F> assemble_J_inv(int delta, int gamma, const F& lambda) {
  return detail::assemble<F>(delta, gamma, [&](int m, int n, int s) { return fusion_B(m, n, lambda, gamma, s); });
}

/// J_{delta,gamma}(lambda) read off from the composition of two intertwiners:
/// the x_lambda-component of (Phi^w (x) 1) Phi^v(x_lambda) is J(w (x) v).
/// Uses the Leibniz-expansion coefficients, not the closed forms.
template <Field F>
WeightedMatrix<F> fusion_from_intertwiners(int delta, int gamma, const F& lambda) {
  WeightedMatrix<F> out(delta, gamma, BlockIndex::first_factor);
  for (int l = 0; l <= delta; ++l)
    for (int k = 0; k <= gamma; ++k) {
      const F mu = lambda + F(long{gamma - 2 * k});
      auto outer = intertwine::oracle_column(0, lambda, gamma, k);
      auto& blk = out.block(l + k);
      for (int r = 0; r <= l && k + r <= gamma; ++r) {
        auto c_outer = outer.find(r);
        if (c_outer == outer.end()) continue;
        auto inner = intertwine::oracle_column(r, mu, delta, l);
        auto c_inner = inner.find(0);
        if (c_inner == inner.end()) continue;
        blk.at(l - r, l) = c_outer->second * c_inner->second;
      }
    }
  return out;
}

} // namespace dybe::fusion
