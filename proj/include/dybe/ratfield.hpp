#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/scalars.hpp"

namespace dybe {

/// Names of the indeterminates that occur in the library. `none` marks a
/// constant that is compatible with every variable.
enum class Var : std::uint8_t { none, lambda, mu, u, h, z, c, b };

inline std::string_view var_name(Var v) {
  switch (v) {
  case Var::lambda: return "lambda";
  case Var::mu: return "mu";
  case Var::u: return "u";
  case Var::h: return "h";
  case Var::z: return "z";
  case Var::c: return "c";
  case Var::b: return "b";
  case Var::none: break;
  }
  return "";
}

template <class K>
class Poly;
template <class K>
class RatFunc;

template <class T>
struct tower_depth : std::integral_constant<int, 0> {};
template <class K>
struct tower_depth<RatFunc<K>> : std::integral_constant<int, 1 + tower_depth<K>::value> {};
template <class T>
inline constexpr int tower_depth_v = tower_depth<T>::value;

/// True when RatFunc<K> is a legal type: towers stop at Q(x)(y).
template <class K>
inline constexpr bool valid_coefficient_v = tower_depth_v<K> <= 1;

namespace detail {

inline Var join_vars(Var a, Var b) {
  if (a == Var::none) return b;
  if (b == Var::none || a == b) return a;
  throw variable_mismatch(std::string(var_name(a)) + " vs " + std::string(var_name(b)));
}

} // namespace detail

/// Dense univariate polynomial, lowest degree first. The zero polynomial
/// has an empty coefficient list.
template <class K>
class Poly {
  static_assert(valid_coefficient_v<K>, "rational-function towers are limited to two levels");

public:
  using coeff_type = K;

  Poly() = default;
  explicit Poly(K c, Var v = Var::none) : c_{std::move(c)}, var_(v) { trim(); }
  Poly(std::vector<K> coeffs, Var v) : c_(std::move(coeffs)), var_(v) { trim(); }

  static Poly variable(Var v) { return Poly({K(0L), K(1L)}, v); }
  static Poly monomial(K c, int degree, Var v) {
    std::vector<K> cs(static_cast<std::size_t>(degree) + 1, K(0L));
    cs.back() = std::move(c);
    return Poly(std::move(cs), v);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Var var() const { return var_; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : K(0L);
  }
  const K& lead() const { return c_.back(); }

  Poly monic() const {
    if (is_zero()) return *this;
    K inv = K(1L) / lead();
    return scaled(inv);
  }
  Poly scaled(const K& s) const {
    if (s.is_zero()) return Poly();
    std::vector<K> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x * s);
    return Poly(std::move(out), var_);
  }

  /// Horner evaluation.
  K operator()(const K& x) const {
    K r(0L);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Substitutes x -> a*x + b.
  Poly compose_affine(const K& a, const K& b) const {
    Poly lin({b, a}, var_);
    Poly r;
    r.var_ = var_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(*it, var_);
    r.var_ = var_;
    return r;
  }

  Poly operator-() const {
    std::vector<K> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(-x);
    return Poly(std::move(out), var_);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Var v = detail::join_vars(a.var_, b.var_);
    std::vector<K> out(std::max(a.c_.size(), b.c_.size()), K(0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] + b.c_[i];
    return Poly(std::move(out), v);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Var v = detail::join_vars(a.var_, b.var_);
    if (a.is_zero() || b.is_zero()) return Poly(std::vector<K>{}, v);
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, K(0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out), v);
  }

  /// Euclidean division; throws zero_denominator for a zero divisor.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw zero_denominator();
    Var v = detail::join_vars(a.var_, b.var_);
    if (a.degree() < b.degree()) return {Poly(std::vector<K>{}, v), Poly(a.c_, v)};
    std::vector<K> rem = a.c_;
    std::vector<K> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), K(0L));
    K inv = K(1L) / b.lead();
    for (int d = a.degree(); d >= b.degree(); --d) {
      const K& top = rem[static_cast<std::size_t>(d)];
      if (top.is_zero()) continue;
      K f = top * inv;
      int shift = d - b.degree();
      for (int j = 0; j <= b.degree(); ++j)
        rem[static_cast<std::size_t>(shift + j)] =
            rem[static_cast<std::size_t>(shift + j)] - f * b.c_[static_cast<std::size_t>(j)];
      rem[static_cast<std::size_t>(d)] = K(0L);
      q[static_cast<std::size_t>(shift)] = std::move(f);
    }
    return {Poly(std::move(q), v), Poly(std::move(rem), v)};
  }

  /// Quotient of a division known to be exact.
  friend Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    if (a.degree() > 0 && a.var_ != b.var_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  Poly with_var(Var v) const { return Poly(c_, v); }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
  Var var_ = Var::none;
};

/// Monic greatest common divisor (zero only when both inputs are zero).
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly<K>(K(1L), detail::join_vars(a.var(), b.var()));
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    auto r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Reduced quotient of two polynomials with a monic denominator.
template <class K>
class RatFunc {
  static_assert(valid_coefficient_v<K>, "rational-function towers are limited to two levels");

public:
  using coeff_type = K;

  RatFunc() : num_(), den_(K(1L)) {}
  RatFunc(long n) : num_(K(n)), den_(K(1L)) {} // NOLINT(google-explicit-constructor)
  RatFunc(const K& c) : num_(c), den_(K(1L)) {} // NOLINT(google-explicit-constructor)
  explicit RatFunc(Poly<K> p) : num_(std::move(p)), den_(K(1L)) {}
  RatFunc(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RatFunc variable(Var v) { return RatFunc(Poly<K>::variable(v)); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  Var var() const { return detail::join_vars(num_.var(), den_.var()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function.
  K constant() const { return num_.coeff(0) / den_.coeff(0); }

  RatFunc operator-() const { return RatFunc(-num_, den_, already_reduced{}); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    Poly<K> g = gcd(a.den_, b.den_);
    if (g.degree() == 0) return make_monic(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly<K> bd = exact_div(b.den_, g);
    Poly<K> n = a.num_ * bd + b.num_ * exact_div(a.den_, g);
    if (n.is_zero()) return RatFunc();
    Poly<K> h = gcd(n, g);
    return make_monic(exact_div(n, h), exact_div(a.den_, h) * bd);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) {
      detail::join_vars(a.var(), b.var());
      return RatFunc();
    }
    // Cross-cancellation keeps the product reduced without a final gcd.
    Poly<K> g1 = gcd(a.num_, b.den_);
    Poly<K> g2 = gcd(b.num_, a.den_);
    Poly<K> n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    Poly<K> d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    return make_monic(std::move(n), std::move(d));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw zero_denominator();
    return a * b.inverse();
  }
  RatFunc inverse() const {
    if (is_zero()) throw zero_denominator();
    return make_monic(den_, num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  /// Structural equality; valid because the representation is canonical.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Substitutes x -> a*x + b (a != 0). Coprimality survives, so only the
  /// leading coefficient of the denominator needs fixing.
  RatFunc compose_affine(const K& a, const K& b) const {
    if (a.is_zero()) throw error("affine substitution with zero slope");
    return make_monic(num_.compose_affine(a, b), den_.compose_affine(a, b));
  }

  /// Value at x0; throws evaluation_at_pole if the denominator vanishes.
  K operator()(const K& x0) const {
    K d = den_(x0);
    if (d.is_zero()) throw evaluation_at_pole();
    return num_(x0) / d;
  }

private:
  struct already_reduced {};
  RatFunc(Poly<K> n, Poly<K> d, already_reduced) : num_(std::move(n)), den_(std::move(d)) {}

  static RatFunc make_monic(Poly<K> n, Poly<K> d) {
    if (d.is_zero()) throw zero_denominator();
    Var v = detail::join_vars(n.var(), d.var());
    if (n.is_zero()) return RatFunc(Poly<K>(std::vector<K>{}, v), Poly<K>(K(1L), v), already_reduced{});
    K inv = K(1L) / d.lead();
    return RatFunc(n.scaled(inv).with_var(v), d.scaled(inv).with_var(v), already_reduced{});
  }

  void normalize() {
    if (den_.is_zero()) throw zero_denominator();
    Var v = detail::join_vars(num_.var(), den_.var());
    if (num_.is_zero()) {
      num_ = Poly<K>(std::vector<K>{}, v);
      den_ = Poly<K>(K(1L), v);
      return;
    }
    Poly<K> g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    *this = make_monic(num_.with_var(v), den_.with_var(v));
  }

  Poly<K> num_;
  Poly<K> den_;
};

/// Q(x): the first level of the tower.
using RatQ = RatFunc<Rat>;
/// Q(x)(y): the second level, e.g. Q(mu)(u) or Q(lambda)(h).
using RatQQ = RatFunc<RatQ>;

template <class K>
RatFunc<K> shift(const RatFunc<K>& f, const K& c) {
  return f.compose_affine(K(1L), c);
}

template <class K>
K eval(const RatFunc<K>& f, const K& x0) {
  return f(x0);
}

/// Applies `fn` to every coefficient of numerator and denominator and
/// re-reduces. Used for substitutions in the inner variable of a tower.
template <class K, class Fn>
RatFunc<K> map_coefficients(const RatFunc<K>& f, Fn&& fn) {
  auto map_poly = [&](const Poly<K>& p) {
    std::vector<K> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(fn(c));
    return Poly<K>(std::move(out), p.var());
  };
  return RatFunc<K>(map_poly(f.num()), map_poly(f.den()));
}

/// x^n as a rational function (negative n allowed).
template <class K>
RatFunc<K> power_of_variable(Var v, int n) {
  auto p = Poly<K>::monomial(K(1L), n < 0 ? -n : n, v);
  return n < 0 ? RatFunc<K>(Poly<K>(K(1L), v), p) : RatFunc<K>(p);
}

template <class F>
F int_power(const F& x, int n) {
  F r(1L);
  F base = n < 0 ? F(1L) / x : x;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) r = r * base;
  return r;
}

/// Expansion of f around x = infinity: f = sum_i coeff[i] * x^(top - i).
template <class K>
struct LaurentTail {
  int top = 0;
  std::vector<K> c;

  /// Coefficient of x^e; exponents below the computed window throw.
  K coeff(int e) const {
    if (e > top) return K(0L);
    int i = top - e;
    if (i >= static_cast<int>(c.size())) throw error("exponent outside expansion window");
    return c[static_cast<std::size_t>(i)];
  }
};

template <class K>
LaurentTail<K> expand_at_infinity(const RatFunc<K>& f, int terms) {
  LaurentTail<K> out;
  if (f.is_zero()) {
    out.c.assign(static_cast<std::size_t>(terms), K(0L));
    return out;
  }
  const auto& n = f.num();
  const auto& d = f.den();
  out.top = n.degree() - d.degree();
  // In t = 1/x: f = x^top * N(t)/D(t) with reversed coefficient lists.
  auto rev = [](const Poly<K>& p, int i) { return p.coeff(p.degree() - i); };
  K d0_inv = K(1L) / d.lead();
  for (int i = 0; i < terms; ++i) {
    K acc = rev(n, i);
    for (int j = 1; j <= std::min(i, d.degree()); ++j)
      acc = acc - rev(d, j) * out.c[static_cast<std::size_t>(i - j)];
    out.c.push_back(acc * d0_inv);
  }
  return out;
}

inline std::optional<long> as_integer(const RatQ& f) {
  if (!f.is_constant()) return std::nullopt;
  return as_integer(f.constant());
}
inline std::optional<long> as_integer(const RatQQ& f) {
  if (!f.is_constant()) return std::nullopt;
  return as_integer(f.constant());
}

// ---------------------------------------------------------------------------
// Rendering: "(<num>)/(<den>)", terms by decreasing degree.

namespace detail {

inline bool display_negative(const Rat& r) { return r.sign() < 0; }
template <class K>
bool display_negative(const RatFunc<K>& f) {
  return f.is_constant() && display_negative(f.constant());
}

} // namespace detail

template <class K>
std::string to_string(const RatFunc<K>& f);

namespace detail {

inline std::string coeff_string(const Rat& r) { return r.to_string(); }
template <class K>
std::string coeff_string(const RatFunc<K>& f) {
  if (f.is_constant()) return coeff_string(f.constant());
  return "(" + to_string(f) + ")";
}
inline bool coeff_is_one(const Rat& r) { return r.is_one(); }
template <class K>
bool coeff_is_one(const RatFunc<K>& f) {
  return f == RatFunc<K>(1L);
}

} // namespace detail

template <class K>
std::string to_string(const Poly<K>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  std::string x(var_name(p.var()));
  if (x.empty()) x = "x";
  bool first = true;
  for (int d = p.degree(); d >= 0; --d) {
    K c = p.coeff(d);
    if (c.is_zero()) continue;
    bool neg = detail::display_negative(c);
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = d == 0 ? "" : (d == 1 ? x : x + "^" + std::to_string(d));
    if (d == 0) {
      out += detail::coeff_string(c);
    } else if (detail::coeff_is_one(c)) {
      out += mono;
    } else {
      out += detail::coeff_string(c) + "*" + mono;
    }
  }
  return out;
}

template <class K>
std::string to_string(const RatFunc<K>& f) {
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

template <class K>
std::ostream& operator<<(std::ostream& os, const RatFunc<K>& f) {
  return os << to_string(f);
}

// ---------------------------------------------------------------------------
// Parsing of the rendered form (inverse of to_string).

namespace detail {

template <class K>
class Parser {
public:
  Parser(std::string_view s, std::vector<Var> vars) : s_(s), vars_(std::move(vars)) {}

  Poly<K> poly_at_end() {
    auto p = poly();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }
  RatFunc<K> ratfunc_at_end() {
    auto f = ratfunc();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

  Poly<K> poly() {
    skip_ws();
    bool neg = consume('-');
    Poly<K> acc = term(neg);
    for (;;) {
      skip_ws();
      if (consume('+')) {
        acc = acc + term(false);
      } else if (pos_ < s_.size() && s_[pos_] == '-') {
        ++pos_;
        acc = acc + term(true);
      } else {
        break;
      }
    }
    return acc;
  }

  RatFunc<K> ratfunc() {
    expect('(');
    auto n = poly();
    expect(')');
    expect('/');
    expect('(');
    auto d = poly();
    expect(')');
    return RatFunc<K>(n, d);
  }

private:
  Var var() const { return vars_.front(); }

  Poly<K> term(bool neg) {
    skip_ws();
    K c(1L);
    bool have_coeff = false;
    if (!at_var()) {
      c = coefficient();
      have_coeff = true;
      skip_ws();
      if (!consume('*')) return Poly<K>(neg ? -c : c, var());
      skip_ws();
    }
    if (!at_var()) fail(have_coeff ? "expected variable after '*'" : "expected term");
    pos_ += var_name(var()).size();
    int deg = 1;
    if (consume('^')) deg = static_cast<int>(integer());
    return Poly<K>::monomial(neg ? -c : c, deg, var());
  }

  bool at_var() const {
    auto name = var_name(var());
    return !name.empty() && s_.substr(pos_, name.size()) == name;
  }

  K coefficient() {
    if constexpr (std::is_same_v<K, Rat>) {
      std::size_t start = pos_;
      integer();
      if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        integer();
      }
      return Rat::parse(s_.substr(start, pos_ - start));
    } else {
      using Inner = typename K::coeff_type;
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        Parser<Inner> inner(s_.substr(pos_), {vars_.begin() + 1, vars_.end()});
        auto f = inner.ratfunc();
        pos_ += inner.pos_;
        expect(')');
        return K(f);
      }
      Parser<Inner> inner(s_.substr(pos_), {vars_.begin() + 1, vars_.end()});
      auto c = inner.coefficient();
      pos_ += inner.pos_;
      return K(c);
    }
  }

  long integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  bool consume(char ch) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!consume(ch)) fail(std::string("expected '") + ch + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw error("parse error at " + std::to_string(pos_) + ": " + what + " in '" + std::string(s_) + "'");
  }

  template <class>
  friend class Parser;

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<Var> vars_;
};

} // namespace detail

/// Parses a polynomial rendered by to_string. `vars` lists the outer
/// variable first, then the inner one for towers.
template <class K>
Poly<K> parse_poly(std::string_view s, std::vector<Var> vars) {
  return detail::Parser<K>(s, std::move(vars)).poly_at_end();
}

template <class K>
RatFunc<K> parse_ratfunc(std::string_view s, std::vector<Var> vars) {
  return detail::Parser<K>(s, std::move(vars)).ratfunc_at_end();
}

} // namespace dybe
