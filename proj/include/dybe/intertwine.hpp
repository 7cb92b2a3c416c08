#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/hyperg.hpp"
#include "dybe/scalars.hpp"
#include "dybe/sl2.hpp"

// Coefficients c_{m,n} of the intertwiner Phi: M_lambda -> M_{lambda+gamma-2k} (x) V_gamma
// attached to v = v^gamma_{-gamma+2k}:
//
//   Phi(f^n x_lambda) = sum_m c_{m,n} (f^m x_{lambda+gamma-2k}) (x) v^gamma_{-gamma+2(k+m-n)},
//
// for max(0, n-k) <= m <= n+gamma-k. Entries outside that range are zero.

namespace dybe::intertwine {

namespace detail {

template <Field F>
F checked_div(const F& num, const F& den) {
  if (den.is_zero()) throw non_generic_lambda();
  return num / den;
}

inline void check_indices(int gamma, int k, int n) {
  if (gamma < 0 || k < 0 || k > gamma) throw std::invalid_argument("need 0 <= k <= gamma");
  if (n < 0) throw std::invalid_argument("need n >= 0");
}

template <Field F>
F eval_or_non_generic(const HypSeries<F>& s) {
  try {
    return eval_terminating(s);
  } catch (const lower_parameter_collision&) {
    throw non_generic_lambda();
  }
}

} // namespace detail

inline bool in_range(int m, int n, int gamma, int k) {
  return m >= std::max(0, n - k) && m <= n + gamma - k;
}

/// Closed form valid for max(0, n-k) <= m <= n (a 3F2 at 1).
template <Field F>
F coeff_m_le_n(int m, int n, const F& lambda, int gamma, int k) {
  detail::check_indices(gamma, k, n);
  if (m > n || !in_range(m, n, gamma, k)) throw std::invalid_argument("index outside m <= n regime");
  Rat pre = factorial(n) * factorial(k) / (factorial(m) * factorial(n - m) * factorial(k + m - n));
  auto s = hyp<F>({F(long{-m}), F(long{-gamma + k}), F(long{k + 1})},
                  {-lambda - F(long{gamma - 2 * k}), F(long{n - m + 1})});
  return from_rat<F>(pre) * detail::eval_or_non_generic(s);
}

/// Closed form valid for n <= m <= n+gamma-k.
template <Field F>
F coeff_m_ge_n(int m, int n, const F& lambda, int gamma, int k) {
  detail::check_indices(gamma, k, n);
  if (m < n || !in_range(m, n, gamma, k)) throw std::invalid_argument("index outside m >= n regime");
  const int d = m - n;
  const F lower = -lambda - F(long{gamma - 2 * k});
  F pre = detail::checked_div(F(sign_power(d)) * pochhammer(F(long{-gamma + k}), d),
                              from_rat<F>(factorial(d)) * pochhammer(lower, d));
  auto s = hyp<F>({F(long{-n}), F(long{-gamma + k + d}), F(long{k + d + 1})},
                  {lower + F(long{d}), F(long{d + 1})});
  return pre * detail::eval_or_non_generic(s);
}

/// c_{m,n} by the hypergeometric closed forms; zero outside the index range.
template <Field F>
F coeff_closed(int m, int n, const F& lambda, int gamma, int k) {
  detail::check_indices(gamma, k, n);
  if (!in_range(m, n, gamma, k)) return F(0L);
  return m <= n ? coeff_m_le_n(m, n, lambda, gamma, k) : coeff_m_ge_n(m, n, lambda, gamma, k);
}

template <Field F>
struct SpecialCoeffs {
  std::vector<F> row;    ///< c_{m,0}, m = 0..gamma-k
  std::vector<F> column; ///< c_{0,n}, n = 0..k
};

template <Field F>
SpecialCoeffs<F> coeff_specials(const F& lambda, int gamma, int k) {
  detail::check_indices(gamma, k, 0);
  SpecialCoeffs<F> out;
  const F lower = -lambda - F(long{gamma - 2 * k});
  for (int m = 0; m <= gamma - k; ++m)
    out.row.push_back(detail::checked_div(F(sign_power(m)) * pochhammer(F(long{-gamma + k}), m),
                                          from_rat<F>(factorial(m)) * pochhammer(lower, m)));
  for (int n = 0; n <= k; ++n) out.column.push_back(from_rat<F>(factorial(k) / factorial(k - n)));
  return out;
}

/// Leading coefficients a_i of Phi(x_lambda) = sum_i a_i f^i x (x) e^i v, from
/// the e-annihilation recurrence a_i = a_{i-1} / (i (i - lambda + beta - 1)).
template <Field F>
std::vector<F> highest_vector_coefficients(const F& lambda, int gamma, int k) {
  const long beta = sl2::weight(gamma, k);
  std::vector<F> a{F(1L)};
  for (int i = 1; i <= gamma - k; ++i)
    a.push_back(detail::checked_div(a.back(), F(long{i}) * (F(long{i - 1} + beta) - lambda)));
  return a;
}

/// Column n of the coefficient table, obtained by literally expanding
/// f^n . Phi(x_lambda) with the Leibniz rule on M (x) V_gamma. Independent of
/// the hypergeometric closed forms.
template <Field F>
std::map<int, F> oracle_column(int n, const F& lambda, int gamma, int k) {
  detail::check_indices(gamma, k, n);
  auto a = highest_vector_coefficients(lambda, gamma, k);
  sl2::IrrepElement<F> v(sl2::IrrepVector<F>{gamma, k, F(1L)});

  std::map<std::pair<int, int>, F> acc; // (Verma index, irrep index) -> coefficient
  for (int i = 0; i <= gamma - k; ++i) {
    auto ei_v = sl2::act_power(sl2::Generator::e, i, v);
    for (int j = 0; j <= n; ++j) {
      F bin = from_rat<F>(binomial(n, j));
      auto image = sl2::act_power(sl2::Generator::f, n - j, ei_v);
      for (const auto& [kv, c] : image.terms()) {
        auto [it, inserted] = acc.try_emplace({i + j, kv}, a[static_cast<std::size_t>(i)] * bin * c);
        if (!inserted) it->second = it->second + a[static_cast<std::size_t>(i)] * bin * c;
      }
    }
  }
  std::map<int, F> column;
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    auto [m, kv] = key;
    if (kv != k + m - n) throw std::logic_error("weight bookkeeping violated in intertwiner expansion");
    column.emplace(m, c);
  }
  return column;
}

template <Field F>
F coeff_oracle(int m, int n, const F& lambda, int gamma, int k) {
  auto col = oracle_column(n, lambda, gamma, k);
  auto it = col.find(m);
  return it == col.end() ? F(0L) : it->second;
}

template <Field F>
struct IntertwinerCoeffs {
  int gamma = 0;
  int k = 0;
  int max_n = 0;
  F lambda;
  std::map<std::pair<int, int>, F> table; ///< (m, n) -> c_{m,n}

  F at(int m, int n) const {
    auto it = table.find({m, n});
    return it == table.end() ? F(0L) : it->second;
  }
};

enum class Method { closed_form, oracle };

/// All in-range c_{m,n} for n = 0..max_n.
template <Field F>
IntertwinerCoeffs<F> build_table(const F& lambda, int gamma, int k, int max_n,
                                 Method method = Method::closed_form) {
  IntertwinerCoeffs<F> out{gamma, k, max_n, lambda, {}};
  for (int n = 0; n <= max_n; ++n) {
    std::map<int, F> col;
    if (method == Method::oracle) col = oracle_column(n, lambda, gamma, k);
    for (int m = std::max(0, n - k); m <= n + gamma - k; ++m) {
      if (method == Method::oracle) {
        auto it = col.find(m);
        out.table.emplace(std::make_pair(m, n), it == col.end() ? F(0L) : it->second);
      } else {
        out.table.emplace(std::make_pair(m, n), coeff_closed(m, n, lambda, gamma, k));
      }
    }
  }
  return out;
}

/// Checks e . Phi(x_lambda) = 0 using column n = 0 of the table:
/// e (f^m x_mu (x) v) = m (mu - m + 1) f^{m-1} x_mu (x) v + f^m x_mu (x) e v.
template <Field F>
bool e_annihilates(const IntertwinerCoeffs<F>& t) {
  const F mu = t.lambda + F(long{t.gamma - 2 * t.k});
  std::map<std::pair<int, int>, F> acc;
  auto add = [&](int m, int kv, const F& c) {
    auto [it, inserted] = acc.try_emplace({m, kv}, c);
    if (!inserted) it->second = it->second + c;
  };
  for (int m = 0; m <= t.gamma - t.k; ++m) {
    F c = t.at(m, 0);
    int kv = t.k + m;
    if (m > 0) add(m - 1, kv, c * F(long{m}) * (mu - F(long{m - 1})));
    if (kv < t.gamma) add(m, kv + 1, c * F(long{t.gamma - kv}));
  }
  return std::all_of(acc.begin(), acc.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

} // namespace dybe::intertwine
