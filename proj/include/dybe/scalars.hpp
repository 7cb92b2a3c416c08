#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "dybe/errors.hpp"

namespace dybe {

/// Exact rational number, always in lowest terms with positive denominator.
class Rat {
public:
  Rat() = default;
  Rat(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
  Rat(long n, long d) {
    if (d == 0) throw zero_denominator();
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rat(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw zero_denominator();
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }

  /// Parses "p" or "p/q" (optional leading sign, no whitespace).
  static Rat parse(std::string_view s) {
    mpq_class v;
    if (s.empty() || v.set_str(std::string(s), 10) != 0)
      throw error("malformed rational: '" + std::string(s) + "'");
    if (v.get_den() == 0) throw zero_denominator();
    return Rat(std::move(v));
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  std::string to_string() const { return v_.get_str(); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw zero_denominator();
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

private:
  mpq_class v_{0};
};

inline std::optional<long> as_integer(const Rat& r) {
  if (!r.is_integer() || !r.numerator().fits_slong_p()) return std::nullopt;
  return r.numerator().get_si();
}

inline std::string to_string(const Rat& r) { return r.to_string(); }

/// Minimal field interface shared by Rat and the rational-function types.
template <class F>
concept Field = requires(const F a, const F b, long n) {
  { F(n) };
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

/// Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1.
template <Field F>
F pochhammer(const F& a, long n) {
  F r(1L);
  for (long i = 0; i < n; ++i) r = r * (a + F(i));
  return r;
}

inline Rat factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(r, mpz_class(1));
}

/// Binomial coefficient for integer n, k (zero outside 0 <= k <= n).
inline Rat binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rat(0L);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(r, mpz_class(1));
}

/// Lifts a rational scalar into any field built over Q.
template <Field F>
F from_rat(const Rat& r) {
  if constexpr (std::same_as<F, Rat>) {
    return r;
  } else {
    return F(from_rat<typename F::coeff_type>(r));
  }
}

inline long sign_power(long n) { return (n % 2 == 0) ? 1 : -1; }

} // namespace dybe
