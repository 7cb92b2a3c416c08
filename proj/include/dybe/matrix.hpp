#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dybe/scalars.hpp"

namespace dybe {

/// Dense row-major matrix.
template <Field F>
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), F(0L)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1L);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  F& operator()(int i, int j) { return data_[index(i, j)]; }
  const F& operator()(int i, int j) const { return data_[index(i, j)]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) = out(i, j) + x * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  template <class Fn>
  auto map(Fn&& fn) const {
    using G = decltype(fn(std::declval<const F&>()));
    Matrix<G> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(i * cols_ + j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<F> data_;
};

/// Which tensor factor's k-label indexes the rows and columns of a block.
///
/// first_factor:  position n labels v^delta_{-delta+2n} (x) v^gamma_{-gamma+2s-2n}
/// second_factor: position n labels v^delta_{-delta+2s-2n} (x) v^gamma_{-gamma+2n}
enum class BlockIndex { first_factor, second_factor };

/// Index range of the weight-s block of V_delta (x) V_gamma.
inline std::pair<int, int> block_range(int delta, int gamma, int s, BlockIndex kind) {
  if (kind == BlockIndex::first_factor) return {std::max(0, s - gamma), std::min(delta, s)};
  return {std::max(0, s - delta), std::min(gamma, s)};
}

template <Field F>
struct Block {
  int lo = 0;
  int hi = 0;
  Matrix<F> m;

  int size() const { return hi - lo + 1; }
  /// Entry (row m, column n) in absolute indices.
  const F& at(int row, int col) const { return m(row - lo, col - lo); }
  F& at(int row, int col) { return m(row - lo, col - lo); }
};

/// h-linear operator on V_delta (x) V_gamma, stored as one square block per
/// total weight index s = 0..delta+gamma. Column n of a block is the image of
/// basis vector n.
template <Field F>
class WeightedMatrix {
public:
  WeightedMatrix(int delta, int gamma, BlockIndex kind) : delta_(delta), gamma_(gamma), kind_(kind) {
    if (delta < 0 || gamma < 0) throw std::invalid_argument("dimensions must be nonnegative");
    for (int s = 0; s <= delta + gamma; ++s) {
      auto [lo, hi] = block_range(delta, gamma, s, kind);
      blocks_.emplace(s, Block<F>{lo, hi, Matrix<F>(hi - lo + 1, hi - lo + 1)});
    }
  }

  static WeightedMatrix identity(int delta, int gamma, BlockIndex kind) {
    WeightedMatrix out(delta, gamma, kind);
    for (auto& [s, b] : out.blocks_) b.m = Matrix<F>::identity(b.size());
    return out;
  }

  int delta() const { return delta_; }
  int gamma() const { return gamma_; }
  BlockIndex kind() const { return kind_; }
  const std::map<int, Block<F>>& blocks() const { return blocks_; }
  const Block<F>& block(int s) const { return blocks_.at(s); }
  Block<F>& block(int s) { return blocks_.at(s); }

  friend WeightedMatrix operator*(const WeightedMatrix& a, const WeightedMatrix& b) {
    if (a.delta_ != b.delta_ || a.gamma_ != b.gamma_ || a.kind_ != b.kind_)
      throw std::invalid_argument("incompatible weighted matrices");
    WeightedMatrix out(a.delta_, a.gamma_, a.kind_);
    for (auto& [s, blk] : out.blocks_) blk.m = a.block(s).m * b.block(s).m;
    return out;
  }

  friend bool operator==(const WeightedMatrix& a, const WeightedMatrix& b) {
    if (a.delta_ != b.delta_ || a.gamma_ != b.gamma_ || a.kind_ != b.kind_) return false;
    for (const auto& [s, blk] : a.blocks_)
      if (!(blk.m == b.block(s).m)) return false;
    return true;
  }

  bool is_identity() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.m.is_identity(); });
  }

  /// Same operator, indexed by the other tensor factor (n -> s - n).
  WeightedMatrix reindexed() const {
    BlockIndex other = kind_ == BlockIndex::first_factor ? BlockIndex::second_factor : BlockIndex::first_factor;
    WeightedMatrix out(delta_, gamma_, other);
    for (const auto& [s, blk] : blocks_) {
      auto& dst = out.block(s);
      for (int i = blk.lo; i <= blk.hi; ++i)
        for (int j = blk.lo; j <= blk.hi; ++j) dst.at(s - i, s - j) = blk.at(i, j);
    }
    return out;
  }

  /// The flip-conjugate P M P, an operator on V_gamma (x) V_delta. Entries are
  /// unchanged; only the labelling of factors swaps.
  WeightedMatrix flipped() const {
    BlockIndex other = kind_ == BlockIndex::first_factor ? BlockIndex::second_factor : BlockIndex::first_factor;
    WeightedMatrix out(gamma_, delta_, other);
    for (const auto& [s, blk] : blocks_) out.block(s).m = blk.m;
    return out;
  }

  /// Re-expressed with the requested indexing.
  WeightedMatrix with_kind(BlockIndex kind) const { return kind == kind_ ? *this : reindexed(); }

  template <class Fn>
  WeightedMatrix map_entries(Fn&& fn) const {
    WeightedMatrix out(delta_, gamma_, kind_);
    for (const auto& [s, blk] : blocks_) out.block(s).m = blk.m.map(fn);
    return out;
  }

private:
  int delta_;
  int gamma_;
  BlockIndex kind_;
  std::map<int, Block<F>> blocks_;
};

} // namespace dybe
