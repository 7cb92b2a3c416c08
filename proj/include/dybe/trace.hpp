#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dybe/exchange.hpp"
#include "dybe/hyperg.hpp"
#include "dybe/intertwine.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/universal.hpp"

// Weighted trace functions for V_gamma, gamma even, as elements of Q(mu)(u)
// with u = e^{lambda/2}. The factor e^{+-lambda mu/2} is kept out of the body:
//
//   Psi_gamma(lambda, mu) = e^{ lambda mu / 2} * body,
//   F_gamma(lambda, mu)   = e^{-lambda mu / 2} * body.

namespace dybe::trace {

struct TraceElement {
  int gamma = 0;
  int prefactor_sign = 1; ///< sign in e^{sign * lambda mu / 2}
  RatQQ body;
};

inline RatQ mu() { return RatQ::variable(Var::mu); }
inline RatQQ u() { return RatQQ::variable(Var::u); }
inline RatQQ lift(const RatQ& c) { return RatQQ(c); }
inline RatQQ lift(long c) { return RatQQ(RatQ(c)); }
inline RatQQ u_power(int n) { return power_of_variable<RatQ>(Var::u, n); }

inline int half(int gamma) {
  if (gamma < 0 || gamma % 2 != 0) throw std::invalid_argument("gamma must be even and nonnegative");
  return gamma / 2;
}

/// (1 - u^2)^{-1}, the argument of the closed forms.
inline RatQQ z_argument() { return (lift(1) - u() * u()).inverse(); }

/// Substitutes mu -> a mu + b inside the coefficients.
inline RatQQ substitute_mu(const RatQQ& f, long a, long b) {
  return map_coefficients(f, [&](const RatQ& c) { return c.compose_affine(Rat(a), Rat(b)); });
}

/// Body of Psi: (1 - u^{-2})^{-1} 2F1(-g, g+1; -mu; (1 - u^2)^{-1}).
inline TraceElement psi(int gamma) {
  const int g = half(gamma);
  auto s = hyp<RatQQ>({lift(-g), lift(g + 1)}, {lift(-mu())}, z_argument());
  return {gamma, 1, (lift(1) - u_power(-2)).inverse() * eval_terminating(s)};
}

/// Psi body from the u^{-2} expansion: (1 - u^{-2})^{-g-1} 2F1(-g, -mu-g-1; -mu; u^{-2}).
inline RatQQ psi_body_second_form(int gamma) {
  const int g = half(gamma);
  auto s = hyp<RatQQ>({lift(-g), lift(-mu() - RatQ(g + 1))}, {lift(-mu())}, u_power(-2));
  return int_power(lift(1) - u_power(-2), -g - 1) * eval_terminating(s);
}

/// (-1)^g (mu+1)_g / (-mu+1)_g.
inline RatQ f_prefactor(int gamma) {
  const int g = half(gamma);
  return RatQ(sign_power(g)) * pochhammer(mu() + RatQ(1), g) / pochhammer(-mu() + RatQ(1), g);
}

/// Body of F: prefactor times 2F1(-g, g+1; mu+1; (1 - u^2)^{-1}).
inline TraceElement weighted_F(int gamma) {
  const int g = half(gamma);
  auto s = hyp<RatQQ>({lift(-g), lift(g + 1)}, {lift(mu() + RatQ(1))}, z_argument());
  return {gamma, -1, lift(f_prefactor(gamma)) * eval_terminating(s)};
}

/// F body from the u^{-2} expansion: prefactor (1 - u^{-2})^{-g} 2F1(-g, mu-g; mu+1; u^{-2}).
inline RatQQ weighted_F_second_form(int gamma) {
  const int g = half(gamma);
  auto s = hyp<RatQQ>({lift(-g), lift(mu() - RatQ(g))}, {lift(mu() + RatQ(1))}, u_power(-2));
  return lift(f_prefactor(gamma)) * int_power(lift(1) - u_power(-2), -g) * eval_terminating(s);
}

/// Weyl denominator u - u^{-1}.
inline RatQQ weyl_denominator() { return u() - u_power(-1); }

/// F from Psi: Q^{-1}(-mu-1) Psi(lambda, -mu-1) delta(lambda), with the
/// e^{lambda(-mu-1)/2} = e^{-lambda mu/2} u^{-1} bookkeeping.
inline TraceElement weighted_F_pipeline(int gamma) {
  const int g = half(gamma);
  RatQ q = universal::q_operator_eigenvalue(gamma, g, -mu() - RatQ(1));
  RatQQ psi_reflected = substitute_mu(psi(gamma).body, -1, -1);
  return {gamma, -1, lift(q.inverse()) * u_power(-1) * psi_reflected * weyl_denominator()};
}

/// Coefficients of u^0, u^{-2}, ..., u^{-2(count-1)} in the expansion of a body
/// at u = infinity; odd powers must vanish.
inline std::vector<RatQ> even_coefficients_at_infinity(const RatQQ& body, int count) {
  auto t = expand_at_infinity(body, 2 * count + 1);
  if (t.top > 0) throw std::logic_error("body grows at infinity");
  std::vector<RatQ> out;
  for (int n = 0; n < count; ++n) {
    if (!t.coeff(-2 * n - 1).is_zero()) throw std::logic_error("odd power in expansion");
    out.push_back(t.coeff(-2 * n));
  }
  return out;
}

/// Psi body expanded at u = infinity agrees with sum_n c_{n,n}^{mu,gamma,gamma/2} u^{-2n}.
inline bool psi_series_check(int gamma, int terms) {
  const int g = half(gamma);
  auto coeffs = even_coefficients_at_infinity(psi(gamma).body, terms);
  for (int n = 0; n < terms; ++n)
    if (!(coeffs[static_cast<std::size_t>(n)] == intertwine::coeff_closed(n, n, mu(), gamma, g))) return false;
  return true;
}

/// Coefficients of w^0..w^{count-1} in (1 - w)^e sum_k t_k w^k for integer e >= 0.
inline std::vector<RatQ> times_binomial(const std::vector<RatQ>& t, int e, int count) {
  std::vector<RatQ> out;
  for (int j = 0; j < count; ++j) {
    RatQ acc;
    for (int i = 0; i <= std::min(j, e); ++i)
      acc = acc + RatQ(sign_power(i)) * RatQ(binomial(e, i)) * t[static_cast<std::size_t>(j - i)];
    out.push_back(acc);
  }
  return out;
}

/// Compares the bodies against the non-terminating series in u^{-2}:
/// Psi body = (1 - w)^g 2F1(g - mu, g + 1; -mu; w),
/// F body = prefactor (1 - w)^{g+1} 2F1(g + mu + 1, g + 1; mu + 1; w), w = u^{-2}.
inline bool second_forms_match_series(int gamma, int terms) {
  const int g = half(gamma);
  auto psi_t = series_coefficients<RatQ>({RatQ(g) - mu(), RatQ(g + 1)}, {-mu()}, terms);
  auto psi_expected = times_binomial(psi_t, g, terms);
  auto f_t = series_coefficients<RatQ>({mu() + RatQ(g + 1), RatQ(g + 1)}, {mu() + RatQ(1)}, terms);
  auto f_expected = times_binomial(f_t, g + 1, terms);
  auto psi_got = even_coefficients_at_infinity(psi_body_second_form(gamma), terms);
  auto f_got = even_coefficients_at_infinity(weighted_F_second_form(gamma), terms);
  RatQ p = f_prefactor(gamma);
  for (int j = 0; j < terms; ++j) {
    if (!(psi_got[static_cast<std::size_t>(j)] == psi_expected[static_cast<std::size_t>(j)])) return false;
    if (!(f_got[static_cast<std::size_t>(j)] == p * f_expected[static_cast<std::size_t>(j)])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Characters and the dual Macdonald-Ruijsenaars operator.

/// Laurent polynomial in u.
struct Laurent {
  std::map<int, Rat> c;

  void add(int e, const Rat& x) {
    auto [it, inserted] = c.try_emplace(e, x);
    if (!inserted) it->second += x;
    if (it->second.is_zero()) c.erase(it);
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, xa] : a.c)
      for (const auto& [eb, xb] : b.c) out.add(ea + eb, xa * xb);
    return out;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c == b.c; }

  RatQQ to_ratfunc() const {
    RatQQ out;
    for (const auto& [e, x] : c) out = out + lift(RatQ(x)) * u_power(e);
    return out;
  }
};

struct Character {
  int delta = 0;
  Laurent laurent;
};

/// chi_delta(u) = sum_{k=0}^{delta} u^{-delta+2k}.
inline Character character(int delta) {
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  Character ch{delta, {}};
  for (int k = 0; k <= delta; ++k) ch.laurent.add(-delta + 2 * k, Rat(1));
  return ch;
}

inline bool is_palindromic(const Character& ch) {
  for (const auto& [e, x] : ch.laurent.c) {
    auto it = ch.laurent.c.find(-e);
    if (it == ch.laurent.c.end() || !(it->second == x)) return false;
  }
  return true;
}

/// chi_delta (u - u^{-1}) = u^{delta+1} - u^{-delta-1}.
inline bool weyl_quotient_check(int delta) {
  Laurent weyl;
  weyl.add(1, Rat(1));
  weyl.add(-1, Rat(-1));
  Laurent expected;
  expected.add(delta + 1, Rat(1));
  expected.add(-delta - 1, Rat(-1));
  return character(delta).laurent * weyl == expected;
}

struct ShiftTerm {
  int shift = 0; ///< nu
  RatQ coefficient;
};

struct MRDifferenceOperator {
  int delta = 0;
  int gamma = 0;
  std::vector<ShiftTerm> terms; ///< ordered by s = gamma/2 .. gamma/2 + delta
};

enum class CoefficientSource { single_sum, closed_form };

/// sum_{s=g}^{g+delta} C^{-mu-1,gamma,delta,s}_{g,g} T_{-delta-gamma+2s}.
inline MRDifferenceOperator mr_operator(int delta, int gamma, CoefficientSource src = CoefficientSource::single_sum) {
  const int g = half(gamma);
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  MRDifferenceOperator op{delta, gamma, {}};
  const RatQ lambda = -mu() - RatQ(1);
  for (int s = g; s <= g + delta; ++s) {
    RatQ c = src == CoefficientSource::single_sum ? exchange::exchange_C(g, g, s, lambda, gamma, delta)
                                                  : exchange::exchange_C_closed(g, g, s, lambda, gamma, delta);
    op.terms.push_back({-delta - gamma + 2 * s, std::move(c)});
  }
  return op;
}

/// The operator applied to an F body: T_nu multiplies by u^{-nu} and shifts mu.
inline RatQQ apply(const MRDifferenceOperator& op, const RatQQ& f_body) {
  RatQQ out;
  for (const auto& t : op.terms)
    out = out + lift(t.coefficient) * u_power(-t.shift) * substitute_mu(f_body, 1, t.shift);
  return out;
}

/// D F = chi_delta F exactly in Q(mu)(u).
inline bool mr_check(int delta, int gamma) {
  auto f = weighted_F(gamma).body;
  return apply(mr_operator(delta, gamma), f) == character(delta).laurent.to_ratfunc() * f;
}

// ---------------------------------------------------------------------------
// Contiguous relation in c for terminating 2F1(-n, b; c; z), over Q(c)(z).

struct ContiguousTerms {
  RatQQ lower;  ///< c(c-1)(z-1) F(c-1)
  RatQQ middle; ///< c(c-1-(2c-a-b-1)z) F(c)
  RatQQ upper;  ///< (c-a)(c-b) z F(c+1)
};

/// The three terms with a = -n for given c and z.
inline ContiguousTerms contiguous_terms(int n, const RatQ& b, const RatQ& c, const RatQQ& z) {
  const RatQ a(long{-n});
  auto F = [&](const RatQ& cc) { return eval_terminating(hyp<RatQQ>({lift(a), lift(b)}, {lift(cc)}, z)); };
  RatQQ cq = lift(c);
  ContiguousTerms t;
  t.lower = cq * (cq - lift(1)) * (z - lift(1)) * F(c - RatQ(1));
  t.middle = cq * (cq - lift(1) - lift(RatQ(2) * c - a - b - RatQ(1)) * z) * F(c);
  t.upper = lift((c - a) * (c - b)) * z * F(c + RatQ(1));
  return t;
}

inline RatQ c_var() { return RatQ::variable(Var::c); }
inline RatQQ z_var() { return RatQQ::variable(Var::z); }

inline RatQQ contiguous_residual(int n, const Rat& b) {
  auto t = contiguous_terms(n, RatQ(b), c_var(), z_var());
  return t.lower + t.middle + t.upper;
}

/// The relation with the last term lacking its factor z.
inline RatQQ contiguous_residual_without_z(int n, const Rat& b) {
  auto t = contiguous_terms(n, RatQ(b), c_var(), z_var());
  return t.lower + t.middle + t.upper / z_var();
}

/// Exact check for a given rational b.
inline bool contiguous_check(int n, const Rat& b) { return contiguous_residual(n, b).is_zero(); }

/// Check for symbolic b: the residual is a polynomial in b of degree at most
/// n + 1, so vanishing at n + 2 distinct values proves it vanishes identically.
inline bool contiguous_check_symbolic_b(int n) {
  for (int i = 0; i < n + 2; ++i)
    if (!contiguous_check(n, Rat(2 * i + 1, 3))) return false;
  return true;
}

/// For delta = 1, the three terms of D F = chi_1 F match the contiguous terms
/// one by one under c = mu+1, a = -g, b = g+1, z = (1-u^2)^{-1}, up to the
/// common factor P(mu)(1-u^2)/(u c(c-1)).
inline bool mr_contiguous_link(int gamma) {
  const int g = half(gamma);
  auto op = mr_operator(1, gamma);
  auto f = weighted_F(gamma).body;
  RatQQ t_plus, t_minus;
  for (const auto& t : op.terms) {
    RatQQ term = lift(t.coefficient) * u_power(-t.shift) * substitute_mu(f, 1, t.shift);
    (t.shift == 1 ? t_plus : t_minus) = term;
  }
  RatQQ t_zero = -(u() + u_power(-1)) * f;

  const RatQ c = mu() + RatQ(1);
  auto ct = contiguous_terms(g, RatQ(g + 1), c, z_argument());
  RatQQ k = lift(f_prefactor(gamma)) * (lift(1) - u() * u()) / (u() * lift(c * (c - RatQ(1))));
  return t_plus == k * ct.upper && t_minus == k * ct.lower && t_zero == k * ct.middle;
}

/// The delta = 1 coefficients in closed form: 1 at shift +1 and
/// (mu-g-1)(mu+g)/((mu-1)mu) at shift -1.
inline std::vector<ShiftTerm> mr_delta_one_expected(int gamma) {
  const int g = half(gamma);
  RatQ m = mu();
  return {{-1, (m - RatQ(g + 1)) * (m + RatQ(g)) / ((m - RatQ(1)) * m)}, {1, RatQ(1)}};
}

} // namespace dybe::trace
