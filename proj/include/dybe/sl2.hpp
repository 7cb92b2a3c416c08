#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>

#include "dybe/scalars.hpp"

namespace dybe::sl2 {

enum class Generator { e, f, h };

/// Weight of the basis vector v^gamma_{-gamma+2k}.
constexpr int weight(int gamma, int k) { return -gamma + 2 * k; }

/// Scalar multiple of a basis vector v^gamma_{-gamma+2k} of V_gamma.
template <Field F>
struct IrrepVector {
  int gamma = 0;
  int k = 0;
  F coefficient{1L};
};

/// Linear combination of basis vectors of V_gamma, keyed by k. Zero
/// coefficients are pruned so that equality is structural.
template <Field F>
class IrrepElement {
public:
  explicit IrrepElement(int gamma) : gamma_(gamma) {}
  IrrepElement(const IrrepVector<F>& v) : gamma_(v.gamma) { // NOLINT(google-explicit-constructor)
    check(v.gamma, v.k);
    add(v.k, v.coefficient);
  }

  int gamma() const { return gamma_; }
  const std::map<int, F>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  F coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? F(0L) : it->second;
  }

  void add(int k, const F& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  IrrepElement scaled(const F& s) const {
    IrrepElement out(gamma_);
    for (const auto& [k, c] : terms_) out.add(k, c * s);
    return out;
  }

  friend IrrepElement operator+(IrrepElement a, const IrrepElement& b) {
    if (a.gamma_ != b.gamma_) throw std::invalid_argument("adding vectors of different irreps");
    for (const auto& [k, c] : b.terms_) a.add(k, c);
    return a;
  }
  friend IrrepElement operator-(const IrrepElement& a, const IrrepElement& b) {
    return a + b.scaled(F(-1L));
  }
  friend bool operator==(const IrrepElement& a, const IrrepElement& b) {
    return a.gamma_ == b.gamma_ && a.terms_ == b.terms_;
  }

  static void check(int gamma, int k) {
    if (gamma < 0 || k < 0 || k > gamma) throw std::invalid_argument("basis index outside 0..gamma");
  }

private:
  int gamma_;
  std::map<int, F> terms_;
};

// h v_k = (-gamma+2k) v_k, f v_k = k v_{k-1}, e v_k = (gamma-k) v_{k+1}.

template <Field F>
IrrepElement<F> act_h(const IrrepElement<F>& v) {
  IrrepElement<F> out(v.gamma());
  for (const auto& [k, c] : v.terms()) out.add(k, c * F(long{weight(v.gamma(), k)}));
  return out;
}

template <Field F>
IrrepElement<F> act_f(const IrrepElement<F>& v) {
  IrrepElement<F> out(v.gamma());
  for (const auto& [k, c] : v.terms())
    if (k > 0) out.add(k - 1, c * F(long{k}));
  return out;
}

template <Field F>
IrrepElement<F> act_e(const IrrepElement<F>& v) {
  IrrepElement<F> out(v.gamma());
  for (const auto& [k, c] : v.terms())
    if (k < v.gamma()) out.add(k + 1, c * F(long{v.gamma() - k}));
  return out;
}

template <Field F>
IrrepElement<F> act(Generator g, const IrrepElement<F>& v) {
  switch (g) {
  case Generator::e: return act_e(v);
  case Generator::f: return act_f(v);
  case Generator::h: return act_h(v);
  }
  return v;
}

template <Field F>
F int_power_of(const F& x, int n) {
  F r(1L);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

/// Closed form of g^i on a basis vector:
/// e^i v_k = (-1)^i (-gamma+k)_i v_{k+i},  f^i v_k = k!/(k-i)! v_{k-i}.
template <Field F>
IrrepElement<F> act_power(Generator g, int i, const IrrepElement<F>& v) {
  if (i < 0) throw std::invalid_argument("negative power");
  IrrepElement<F> out(v.gamma());
  for (const auto& [k, c] : v.terms()) {
    switch (g) {
    case Generator::e:
      if (k + i <= v.gamma())
        out.add(k + i, c * F(sign_power(i)) * pochhammer(F(long{-v.gamma() + k}), i));
      break;
    case Generator::f:
      if (k - i >= 0) out.add(k - i, c * from_rat<F>(factorial(k) / factorial(k - i)));
      break;
    case Generator::h: {
      F w(long{weight(v.gamma(), k)});
      out.add(k, c * int_power_of(w, i));
      break;
    }
    }
  }
  return out;
}

/// Checks e f^n = f^n e + n f^{n-1} (h - n + 1) on a probe vector,
/// composing single-step actions.
template <Field F>
bool ad_identity_check(int n, const IrrepVector<F>& probe) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  IrrepElement<F> v(probe);
  auto repeat = [](Generator g, int times, IrrepElement<F> x) {
    for (int i = 0; i < times; ++i) x = act(g, x);
    return x;
  };
  auto lhs = act_e(repeat(Generator::f, n, v));
  auto shifted = act_h(v) - v.scaled(F(long{n - 1}));
  auto rhs = repeat(Generator::f, n, act_e(v)) + repeat(Generator::f, n - 1, shifted).scaled(F(long{n}));
  return lhs == rhs;
}

/// Element of V_{d_1} (x) ... (x) V_{d_N}; keys are the k-labels per factor.
template <Field F, std::size_t N>
class TensorElement {
public:
  using Key = std::array<int, N>;

  explicit TensorElement(std::array<int, N> dims) : dims_(dims) {}

  const std::array<int, N>& dims() const { return dims_; }
  const std::map<Key, F>& terms() const { return terms_; }

  void add(const Key& key, const F& c) {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < N; ++i) IrrepElement<F>::check(dims_[i], key[i]);
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend TensorElement operator+(TensorElement a, const TensorElement& b) {
    for (const auto& [key, c] : b.terms_) a.add(key, c);
    return a;
  }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.dims_ == b.dims_ && a.terms_ == b.terms_;
  }

  /// Applies `op` (an irrep-level map) to factor `slot`.
  template <class Op>
  TensorElement on_factor(std::size_t slot, Op&& op) const {
    TensorElement out(dims_);
    for (const auto& [key, c] : terms_) {
      IrrepElement<F> single(dims_[slot]);
      single.add(key[slot], F(1L));
      auto image = op(single);
      for (const auto& [k, ck] : image.terms()) {
        Key nk = key;
        nk[slot] = k;
        out.add(nk, c * ck);
      }
    }
    return out;
  }

private:
  std::array<int, N> dims_;
  std::map<Key, F> terms_;
};

/// Coproduct action g(w(x)v) = gw(x)v + w(x)gv.
template <Field F, std::size_t N>
TensorElement<F, N> act_coproduct(Generator g, const TensorElement<F, N>& t) {
  TensorElement<F, N> out(t.dims());
  for (std::size_t i = 0; i < N; ++i)
    out = out + t.on_factor(i, [g](const IrrepElement<F>& x) { return act(g, x); });
  return out;
}

/// g^n on a two-fold tensor via sum_j C(n,j) (g^j w) (x) (g^{n-j} v).
template <Field F>
TensorElement<F, 2> act_power_leibniz(Generator g, int n, const TensorElement<F, 2>& t) {
  TensorElement<F, 2> out(t.dims());
  for (const auto& [key, c] : t.terms()) {
    for (int j = 0; j <= n; ++j) {
      IrrepElement<F> w(t.dims()[0]);
      w.add(key[0], F(1L));
      IrrepElement<F> v(t.dims()[1]);
      v.add(key[1], F(1L));
      auto gw = act_power(g, j, w);
      auto gv = act_power(g, n - j, v);
      F bin = from_rat<F>(binomial(n, j));
      for (const auto& [a, ca] : gw.terms())
        for (const auto& [b, cb] : gv.terms()) out.add({a, b}, c * bin * ca * cb);
    }
  }
  return out;
}

} // namespace dybe::sl2
