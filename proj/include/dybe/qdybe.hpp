#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "dybe/exchange.hpp"
#include "dybe/matrix.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/sl2.hpp"

// Dynamical Yang-Baxter equation for exchange matrices on V_a (x) V_b (x) V_c:
//
//   R12(lambda - h3) R13(lambda) R23(lambda - h1) = R23(lambda) R13(lambda - h2) R12(lambda),
//
// where R_ij(lambda - h_k) acts on a basis vector with lambda replaced by
// lambda minus the weight of factor k, and R_ij on V_di (x) V_dj is
// exchange::assemble_R(di, dj).

namespace dybe::qdybe {

using Triple = std::array<int, 3>;

/// Operator on a triple tensor product, one dense block per total k-label.
template <Field F>
class TripleOperator {
public:
  explicit TripleOperator(Triple dims) : dims_(dims) {
    for (int a = 0; a <= dims[0]; ++a)
      for (int b = 0; b <= dims[1]; ++b)
        for (int c = 0; c <= dims[2]; ++c) {
          auto& basis = bases_[a + b + c];
          index_[{a, b, c}] = static_cast<int>(basis.size());
          basis.push_back({a, b, c});
        }
    for (const auto& [t, basis] : bases_) {
      int n = static_cast<int>(basis.size());
      blocks_.emplace(t, Matrix<F>(n, n));
    }
  }

  const Triple& dims() const { return dims_; }
  const std::map<int, Matrix<F>>& blocks() const { return blocks_; }
  int dimension() const { return (dims_[0] + 1) * (dims_[1] + 1) * (dims_[2] + 1); }

  /// Coefficient of basis vector `row` in the image of basis vector `col`.
  F& entry(const Triple& row, const Triple& col) {
    int t = row[0] + row[1] + row[2];
    if (t != col[0] + col[1] + col[2]) throw std::invalid_argument("operator does not preserve weight");
    return blocks_.at(t)(index_.at(row), index_.at(col));
  }

  const std::map<int, std::vector<Triple>>& bases() const { return bases_; }

  friend TripleOperator operator*(const TripleOperator& a, const TripleOperator& b) {
    if (a.dims_ != b.dims_) throw std::invalid_argument("operators on different spaces");
    TripleOperator out(a.dims_);
    for (auto& [t, m] : out.blocks_) m = a.blocks_.at(t) * b.blocks_.at(t);
    return out;
  }
  friend bool operator==(const TripleOperator& a, const TripleOperator& b) {
    return a.dims_ == b.dims_ && a.blocks_ == b.blocks_;
  }

private:
  Triple dims_;
  std::map<int, std::vector<Triple>> bases_;
  std::map<Triple, int> index_;
  std::map<int, Matrix<F>> blocks_;
};

/// Exchange matrix R(lambda + offset) on V_d1 (x) V_d2. Over Q(lambda) this is a
/// shift of the symbolic matrix; over Q it is a fresh evaluation.
template <Field F>
class ShiftedExchange {
public:
  ShiftedExchange(int d1, int d2, F lambda) : d1_(d1), d2_(d2), lambda_(std::move(lambda)) {}

  const WeightedMatrix<F>& at(long offset) {
    auto it = cache_.find(offset);
    if (it != cache_.end()) return it->second;
    if constexpr (std::is_same_v<F, RatQ>) {
      if (!base_) base_.emplace(exchange::assemble_R(d1_, d2_, lambda_));
      auto shifted = base_->map_entries([&](const RatQ& f) { return shift(f, Rat(offset)); });
      return cache_.emplace(offset, std::move(shifted)).first->second;
    } else {
      return cache_.emplace(offset, exchange::assemble_R(d1_, d2_, lambda_ + F(offset))).first->second;
    }
  }

private:
  int d1_;
  int d2_;
  F lambda_;
  std::optional<WeightedMatrix<F>> base_;
  std::map<long, WeightedMatrix<F>> cache_;
};

/// R_ij acting on factors (i, j) of V_a (x) V_b (x) V_c with lambda shifted by
/// sign * (weight of factor `shift_slot`); shift_slot < 0 means no shift.
template <Field F>
TripleOperator<F> embed(const Triple& dims, int i, int j, int shift_slot, const F& lambda, long sign = -1) {
  ShiftedExchange<F> r(dims[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(j)], lambda);
  TripleOperator<F> out(dims);
  for (const auto& [t, basis] : out.bases())
    for (const auto& col : basis) {
      long offset = 0;
      if (shift_slot >= 0)
        offset = sign * sl2::weight(dims[static_cast<std::size_t>(shift_slot)], col[static_cast<std::size_t>(shift_slot)]);
      const auto& rm = r.at(offset);
      // Second-factor indexing: position n is the k-label of factor j.
      int s = col[static_cast<std::size_t>(i)] + col[static_cast<std::size_t>(j)];
      const auto& blk = rm.block(s);
      int n = col[static_cast<std::size_t>(j)];
      for (int m = blk.lo; m <= blk.hi; ++m) {
        const F& c = blk.at(m, n);
        if (c.is_zero()) continue;
        Triple row = col;
        row[static_cast<std::size_t>(i)] = s - m;
        row[static_cast<std::size_t>(j)] = m;
        out.entry(row, col) = c;
      }
    }
  return out;
}

template <Field F>
struct QdybeSides {
  TripleOperator<F> lhs;
  TripleOperator<F> rhs;
};

template <Field F>
QdybeSides<F> qdybe_sides(const Triple& dims, const F& lambda, long sign = -1) {
  for (int d : dims)
    if (d < 0) throw std::invalid_argument("dimensions must be nonnegative");
  auto lhs = embed(dims, 0, 1, 2, lambda, sign) * embed(dims, 0, 2, -1, lambda) * embed(dims, 1, 2, 0, lambda, sign);
  auto rhs = embed(dims, 1, 2, -1, lambda) * embed(dims, 0, 2, 1, lambda, sign) * embed(dims, 0, 1, -1, lambda);
  return {std::move(lhs), std::move(rhs)};
}

template <Field F>
bool qdybe_check(const Triple& dims, const F& lambda) {
  auto sides = qdybe_sides(dims, lambda);
  return sides.lhs == sides.rhs;
}

} // namespace dybe::qdybe
