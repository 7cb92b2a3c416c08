#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dybe/intertwine.hpp"
#include "dybe/matrix.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/scalars.hpp"

// Rendering of matrices and coefficient tables as text, JSON and CSV.
//
// Matrix JSON:
//   {"delta": D, "gamma": G, "lambda": "symbolic" | "p/q",
//    "blocks": [{"s": s, "index_range": [lo, hi], "entries": [["num", "den"], ...]}]}
// with entries in row-major order.

namespace dybe::io {

using json = nlohmann::ordered_json;

inline std::string lambda_label(const std::optional<Rat>& lambda) {
  return lambda ? lambda->to_string() : "symbolic";
}

inline std::string render(const Rat& r) { return r.to_string(); }
template <class K>
std::string render(const RatFunc<K>& f) {
  return to_string(f);
}

inline std::pair<std::string, std::string> parts(const Rat& r) {
  return {r.numerator().get_str(), r.denominator().get_str()};
}
template <class K>
std::pair<std::string, std::string> parts(const RatFunc<K>& f) {
  return {to_string(f.num()), to_string(f.den())};
}

/// Variables used when parsing entries of a given field.
template <class F>
struct EntryVars;
template <>
struct EntryVars<Rat> {};
template <>
struct EntryVars<RatQ> {
  static std::vector<Var> vars() { return {Var::lambda}; }
};
template <>
struct EntryVars<RatQQ> {
  static std::vector<Var> vars() { return {Var::u, Var::mu}; }
};

template <class F>
F from_parts(const std::string& num, const std::string& den) {
  if constexpr (std::is_same_v<F, Rat>) {
    return Rat::parse(num) / Rat::parse(den);
  } else {
    using K = std::remove_cvref_t<decltype(std::declval<F>().num().lead())>;
    auto n = parse_poly<K>(num, EntryVars<F>::vars());
    auto d = parse_poly<K>(den, EntryVars<F>::vars());
    if (d.is_zero()) throw zero_denominator();
    return F(std::move(n), std::move(d));
  }
}

template <class F>
json entry_json(const F& x) {
  auto [n, d] = parts(x);
  return json::array({n, d});
}

template <class F>
json matrix_to_json(const WeightedMatrix<F>& m, const std::string& lambda) {
  json blocks = json::array();
  for (const auto& [s, blk] : m.blocks()) {
    json entries = json::array();
    for (int i = blk.lo; i <= blk.hi; ++i)
      for (int j = blk.lo; j <= blk.hi; ++j) entries.push_back(entry_json(blk.at(i, j)));
    blocks.push_back(json{{"s", s}, {"index_range", json::array({blk.lo, blk.hi})}, {"entries", std::move(entries)}});
  }
  return json{{"delta", m.delta()}, {"gamma", m.gamma()}, {"lambda", lambda}, {"blocks", std::move(blocks)}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class F>
std::string matrix_json(const WeightedMatrix<F>& m, const std::string& lambda) {
  return dump(matrix_to_json(m, lambda));
}

template <class F>
struct ParsedMatrix {
  std::string lambda;
  WeightedMatrix<F> matrix;
};

/// Inverse of matrix_to_json. The index kind is not stored and must be supplied.
template <class F>
ParsedMatrix<F> matrix_from_json(const json& j, BlockIndex kind) {
  WeightedMatrix<F> m(j.at("delta").get<int>(), j.at("gamma").get<int>(), kind);
  const auto& blocks = j.at("blocks");
  if (blocks.size() != m.blocks().size()) throw error("block count mismatch");
  for (const auto& b : blocks) {
    auto& blk = m.block(b.at("s").get<int>());
    const auto& range = b.at("index_range");
    if (range.at(0).get<int>() != blk.lo || range.at(1).get<int>() != blk.hi) throw error("index range mismatch");
    const auto& entries = b.at("entries");
    if (entries.size() != static_cast<std::size_t>(blk.size() * blk.size())) throw error("entry count mismatch");
    std::size_t idx = 0;
    for (int r = blk.lo; r <= blk.hi; ++r)
      for (int c = blk.lo; c <= blk.hi; ++c, ++idx) {
        const auto& e = entries.at(idx);
        blk.at(r, c) = from_parts<F>(e.at(0).get<std::string>(), e.at(1).get<std::string>());
      }
  }
  return {j.at("lambda").get<std::string>(), std::move(m)};
}

template <class F>
ParsedMatrix<F> matrix_from_json(const std::string& text, BlockIndex kind) {
  return matrix_from_json<F>(json::parse(text), kind);
}

/// One line per entry: s,row,col,num,den.
template <class F>
std::string matrix_csv(const WeightedMatrix<F>& m) {
  std::ostringstream os;
  os << "s,row,col,num,den\n";
  for (const auto& [s, blk] : m.blocks())
    for (int i = blk.lo; i <= blk.hi; ++i)
      for (int j = blk.lo; j <= blk.hi; ++j) {
        auto [n, d] = parts(blk.at(i, j));
        os << s << ',' << i << ',' << j << ',' << n << ',' << d << '\n';
      }
  return os.str();
}

template <class F>
std::string matrix_text(const WeightedMatrix<F>& m, const std::string& lambda) {
  std::ostringstream os;
  os << "delta = " << m.delta() << ", gamma = " << m.gamma() << ", lambda = " << lambda << '\n';
  for (const auto& [s, blk] : m.blocks()) {
    os << "block s = " << s << ", index " << blk.lo << ".." << blk.hi << '\n';
    for (int i = blk.lo; i <= blk.hi; ++i) {
      os << " ";
      for (int j = blk.lo; j <= blk.hi; ++j) os << (j == blk.lo ? " " : " | ") << render(blk.at(i, j));
      os << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Intertwiner coefficient tables: {"gamma": G, "k": K, "entries": [{"m", "n", "value"}]}.

template <class F>
json intertwiner_to_json(const intertwine::IntertwinerCoeffs<F>& t) {
  json entries = json::array();
  for (const auto& [mn, v] : t.table) entries.push_back(json{{"m", mn.first}, {"n", mn.second}, {"value", render(v)}});
  return json{{"gamma", t.gamma}, {"k", t.k}, {"entries", std::move(entries)}};
}

template <class F>
std::string intertwiner_csv(const intertwine::IntertwinerCoeffs<F>& t) {
  std::ostringstream os;
  os << "m,n,value\n";
  for (const auto& [mn, v] : t.table) os << mn.first << ',' << mn.second << ',' << render(v) << '\n';
  return os.str();
}

template <class F>
std::string intertwiner_text(const intertwine::IntertwinerCoeffs<F>& t, const std::string& lambda) {
  std::ostringstream os;
  os << "gamma = " << t.gamma << ", k = " << t.k << ", lambda = " << lambda << '\n';
  for (const auto& [mn, v] : t.table) os << "c[" << mn.first << "," << mn.second << "] = " << render(v) << '\n';
  return os.str();
}

} // namespace dybe::io
