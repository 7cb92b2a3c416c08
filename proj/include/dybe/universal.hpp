#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/matrix.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/scalars.hpp"
#include "dybe/sl2.hpp"

// Truncated universal elements of U(sl2) (x) U(sl2) and U(sl2) with
// coefficients in Q(lambda)(h): h is the outer variable, lambda the inner one.
//
//   fusion type:   sum_n f^n (x) g_n(h) e^n
//   diagonal type: sum_n e^n g_n(h) f^n

namespace dybe::universal {

enum class Kind { fusion, diagonal };

struct TruncatedUniversal {
  Kind kind = Kind::fusion;
  std::vector<RatQQ> terms; ///< g_0 .. g_N

  int order() const { return static_cast<int>(terms.size()) - 1; }
};

inline RatQQ h_var() { return RatQQ::variable(Var::h); }
inline RatQQ lambda_const() { return RatQQ(RatQ::variable(Var::lambda)); }
inline RatQQ constant(long c) { return RatQQ(RatQ(c)); }

/// g_n = (-1)^n / (n! (lambda - h + n + 1)_n).
inline TruncatedUniversal universal_J(int order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  TruncatedUniversal out{Kind::fusion, {}};
  const RatQQ x = lambda_const() - h_var();
  for (int n = 0; n <= order; ++n)
    out.terms.push_back(constant(sign_power(n)) /
                        (RatQQ(RatQ(factorial(n))) * pochhammer(x + constant(n + 1), n)));
  return out;
}

/// g_n = 1 / (n! (lambda - h + 2)_n).
inline TruncatedUniversal universal_J_inv(int order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  TruncatedUniversal out{Kind::fusion, {}};
  const RatQQ x = lambda_const() - h_var();
  for (int n = 0; n <= order; ++n)
    out.terms.push_back(constant(1) / (RatQQ(RatQ(factorial(n))) * pochhammer(x + constant(2), n)));
  return out;
}

/// phi(h) -> phi(h + c).
inline RatQQ shift_h(const RatQQ& phi, long c) { return shift(phi, RatQ(c)); }

/// Product of two fusion-type elements, truncated at the smaller order. Uses
/// e^k phi(h) = phi(h - 2k) e^k to collect f^n (x) (...) e^n.
inline TruncatedUniversal multiply(const TruncatedUniversal& a, const TruncatedUniversal& b) {
  if (a.kind != Kind::fusion || b.kind != Kind::fusion) throw std::invalid_argument("multiply expects fusion-type elements");
  const int order = std::min(a.order(), b.order());
  TruncatedUniversal out{Kind::fusion, {}};
  for (int n = 0; n <= order; ++n) {
    RatQQ sum;
    for (int k = 0; k <= n; ++k)
      sum = sum + a.terms[static_cast<std::size_t>(k)] * shift_h(b.terms[static_cast<std::size_t>(n - k)], -2L * k);
    out.terms.push_back(std::move(sum));
  }
  return out;
}

inline bool is_unit(const TruncatedUniversal& u) {
  if (u.terms.empty() || !(u.terms[0] == constant(1))) return false;
  for (std::size_t n = 1; n < u.terms.size(); ++n)
    if (!u.terms[n].is_zero()) return false;
  return true;
}

/// J J^{-1} = 1 (x) 1 = J^{-1} J through the given order.
inline bool universal_product_check(int order) {
  auto j = universal_J(order);
  auto ji = universal_J_inv(order);
  return is_unit(multiply(j, ji)) && is_unit(multiply(ji, j));
}

/// Matrix of a fusion-type element on V_delta (x) V_gamma, first-factor indexing.
/// h in g_n is the weight of e^n v^gamma.
inline WeightedMatrix<RatQ> apply_universal(const TruncatedUniversal& u, int delta, int gamma) {
  if (u.kind != Kind::fusion) throw std::invalid_argument("apply_universal expects a fusion-type element");
  if (u.order() < std::min(delta, gamma)) throw truncation_error();
  WeightedMatrix<RatQ> out(delta, gamma, BlockIndex::first_factor);
  for (int a = 0; a <= delta; ++a)
    for (int b = 0; b <= gamma; ++b) {
      auto& blk = out.block(a + b);
      for (int n = 0; n <= std::min(a, gamma - b); ++n) {
        RatQ fn = RatQ(factorial(a) / factorial(a - n));
        RatQ en = RatQ(sign_power(n)) * pochhammer(RatQ(long{-gamma + b}), n);
        RatQ g = eval(u.terms[static_cast<std::size_t>(n)], RatQ(long{sl2::weight(gamma, b + n)}));
        blk.at(a - n, a) = blk.at(a - n, a) + fn * en * g;
      }
    }
  return out;
}

/// Specialization at a rational lambda.
inline WeightedMatrix<Rat> apply_universal(const TruncatedUniversal& u, int delta, int gamma, const Rat& lambda) {
  auto sym = apply_universal(u, delta, gamma);
  WeightedMatrix<Rat> out(delta, gamma, BlockIndex::first_factor);
  for (const auto& [s, blk] : sym.blocks())
    for (int i = blk.lo; i <= blk.hi; ++i)
      for (int j = blk.lo; j <= blk.hi; ++j) {
        try {
          out.block(s).at(i, j) = eval(blk.at(i, j), lambda);
        } catch (const evaluation_at_pole&) {
          throw non_generic_lambda();
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// Words in e, f and functions of h, used to push the fusion element through
// m o P o (1 (x) S^{-1}).

struct Letter {
  enum class Type { e, f, phi } type;
  int power = 1;    ///< for e, f
  RatQQ phi;        ///< for phi
};

struct Word {
  RatQQ scalar = constant(1);
  std::vector<Letter> letters;
};

/// S^{-1} reverses the word, negates e and f, and sends phi(h) to phi(-h).
inline Word antipode_inverse(const Word& w) {
  Word out{w.scalar, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Letter l = *it;
    if (l.type == Letter::Type::phi) {
      l.phi = l.phi.compose_affine(RatQ(-1L), RatQ(0L));
    } else if (l.power % 2 != 0) {
      out.scalar = -out.scalar;
    }
    out.letters.push_back(std::move(l));
  }
  return out;
}

inline Word concatenate(const Word& a, const Word& b) {
  Word out{a.scalar * b.scalar, a.letters};
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

/// Normal form e^a phi(h) f^b of a word in which no f precedes an e.
struct NormalTerm {
  int e_power = 0;
  RatQQ phi = constant(1);
  int f_power = 0;
};

inline NormalTerm normal_order(const Word& w) {
  NormalTerm out;
  out.phi = w.scalar;
  bool seen_f = false;
  // phi(h) e^p = e^p phi(h + 2p); f^p phi(h) = phi(h + 2p) f^p.
  for (const auto& l : w.letters) {
    switch (l.type) {
    case Letter::Type::e:
      if (seen_f) throw std::invalid_argument("word needs the e-f commutator");
      out.phi = shift_h(out.phi, 2L * l.power);
      out.e_power += l.power;
      break;
    case Letter::Type::phi:
      out.phi = out.phi * shift_h(l.phi, 2L * out.f_power);
      break;
    case Letter::Type::f:
      seen_f = true;
      out.f_power += l.power;
      break;
    }
  }
  return out;
}

/// (m o P o (1 (x) S^{-1})) applied term by term to a fusion-type element.
inline TruncatedUniversal q_from_fusion(const TruncatedUniversal& j) {
  if (j.kind != Kind::fusion) throw std::invalid_argument("expects a fusion-type element");
  TruncatedUniversal out{Kind::diagonal, {}};
  for (int n = 0; n <= j.order(); ++n) {
    Word left{constant(1), {{Letter::Type::f, n, {}}}};
    Word right{constant(1), {{Letter::Type::phi, 1, j.terms[static_cast<std::size_t>(n)]}, {Letter::Type::e, n, {}}}};
    if (n == 0) {
      left.letters.clear();
      right.letters.pop_back();
    }
    auto nt = normal_order(concatenate(antipode_inverse(right), left));
    if (nt.e_power != n || nt.f_power != n) throw std::logic_error("unexpected normal form");
    out.terms.push_back(nt.phi);
  }
  return out;
}

/// g_n = 1 / (n! (lambda + h + n + 1)_n).
inline TruncatedUniversal universal_Q(int order) {
  TruncatedUniversal out{Kind::diagonal, {}};
  const RatQQ x = lambda_const() + h_var();
  for (int n = 0; n <= order; ++n)
    out.terms.push_back(constant(1) / (RatQQ(RatQ(factorial(n))) * pochhammer(x + constant(n + 1), n)));
  return out;
}

/// Eigenvalue of Q(lambda) on v^gamma_{-gamma+2k}: (-lambda-k-1)_k / (-lambda+gamma-2k)_k.
template <Field F>
F q_operator_eigenvalue(int gamma, int k, const F& lambda) {
  sl2::IrrepElement<F>::check(gamma, k);
  F den = pochhammer(-lambda + F(long{gamma - 2 * k}), k);
  if (den.is_zero()) throw non_generic_lambda();
  return pochhammer(-lambda - F(long{k + 1}), k) / den;
}

/// The same eigenvalue by applying sum_n e^n g_n(h) f^n to the basis vector.
inline RatQ q_operator_eigenvalue_sum(int gamma, int k, const TruncatedUniversal& q) {
  if (q.kind != Kind::diagonal) throw std::invalid_argument("expects a diagonal-type element");
  if (q.order() < k) throw truncation_error();
  sl2::IrrepElement<RatQ> v(sl2::IrrepVector<RatQ>{gamma, k, RatQ(1L)});
  sl2::IrrepElement<RatQ> acc(gamma);
  for (int n = 0; n <= k; ++n) {
    auto fv = sl2::act_power(sl2::Generator::f, n, v);
    RatQ g = eval(q.terms[static_cast<std::size_t>(n)], RatQ(long{sl2::weight(gamma, k - n)}));
    acc = acc + sl2::act_power(sl2::Generator::e, n, fv.scaled(g));
  }
  for (const auto& [kk, c] : acc.terms())
    if (kk != k) throw std::logic_error("Q is not diagonal");
  return acc.coeff(k);
}

} // namespace dybe::universal
