#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dybe/errors.hpp"
#include "dybe/exchange.hpp"
#include "dybe/fusion.hpp"
#include "dybe/hyperg.hpp"
#include "dybe/intertwine.hpp"
#include "dybe/qdybe.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/trace.hpp"
#include "dybe/universal.hpp"

// The verification suite behind `verify-all` and the acceptance binary. Each
// check runs at its default bound unless a dimension cap is given.

namespace dybe::verify {

struct Settings {
  std::optional<int> max_dim;
  unsigned seed = 42;
  bool timing = true;

  int cap(int bound) const { return max_dim ? std::min(bound, *max_dim) : bound; }
};

struct Check {
  int index;
  std::string name;
  double limit_seconds;
  std::function<bool(const Settings&, std::mt19937&)> run;
};

struct Outcome {
  int index = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string note;
};

namespace detail {

inline RatQ lam() { return RatQ::variable(Var::lambda); }

/// A rational lambda for spot checks; callers retry on non_generic_lambda.
inline Rat random_lambda(std::mt19937& g) {
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(2, 11);
  return Rat(num(g), den(g));
}

/// Runs fn at random rational lambdas until `count` of them were generic.
template <class Fn>
bool spot_check(std::mt19937& g, int count, Fn&& fn) {
  int done = 0;
  for (int attempt = 0; done < count && attempt < 20 * count; ++attempt) {
    try {
      if (!fn(random_lambda(g))) return false;
      ++done;
    } catch (const non_generic_lambda&) {
    } catch (const evaluation_at_pole&) {
    }
  }
  return done == count;
}

inline bool inverse_pair(const Settings& st, std::mt19937&) {
  const int bound = st.cap(5);
  for (int delta = 0; delta <= bound; ++delta)
    for (int gamma = 0; gamma <= bound; ++gamma) {
      auto j = fusion::assemble_J(delta, gamma, lam());
      auto ji = fusion::assemble_J_inv(delta, gamma, lam());
      if (!(j * ji).is_identity() || !(ji * j).is_identity()) return false;
    }
  return true;
}

inline bool fusion_oracle(const Settings& st, std::mt19937&) {
  const int bound = st.cap(3);
  for (int delta = 0; delta <= bound; ++delta)
    for (int gamma = 0; gamma <= bound; ++gamma)
      if (!(fusion::assemble_J(delta, gamma, lam()) == fusion::fusion_from_intertwiners(delta, gamma, lam())))
        return false;
  return true;
}

inline bool intertwiner_oracle(const Settings& st, std::mt19937&) {
  const int bound = st.cap(5);
  for (int gamma = 0; gamma <= bound; ++gamma)
    for (int k = 0; k <= gamma; ++k) {
      auto closed = intertwine::build_table(lam(), gamma, k, gamma + 2, intertwine::Method::closed_form);
      auto oracle = intertwine::build_table(lam(), gamma, k, gamma + 2, intertwine::Method::oracle);
      if (closed.table != oracle.table || !intertwine::e_annihilates(closed)) return false;
    }
  return true;
}

inline bool exchange_closed_forms(const Settings& st, std::mt19937&) {
  const int bound = st.cap(4);
  for (int delta = 0; delta <= bound; ++delta)
    for (int gamma = 0; gamma <= bound; ++gamma) {
      auto product = exchange::assemble_R(delta, gamma, lam());
      if (!(product == exchange::assemble_R_from_sum(delta, gamma, lam()))) return false;
      for (const auto& [s, blk] : product.blocks())
        for (int m = blk.lo; m <= blk.hi; ++m)
          for (int n = blk.lo; n <= blk.hi; ++n) {
            const RatQ& c = blk.at(m, n);
            if (s <= delta && !(exchange::exchange_C_small_s(m, n, s, lam(), gamma, delta) == c)) return false;
            if (s >= delta && !(exchange::exchange_C_large_s(m, n, s, lam(), gamma, delta) == c)) return false;
          }
    }
  return true;
}

inline bool inverse_and_biorthogonality(const Settings& st, std::mt19937& g) {
  const int bound = st.cap(4);
  for (int delta = 0; delta <= bound; ++delta)
    for (int gamma = 0; gamma <= bound; ++gamma) {
      auto r_inv = exchange::assemble_R_inv(delta, gamma, lam());
      auto flipped = exchange::assemble_R(gamma, delta, lam()).flipped().with_kind(BlockIndex::second_factor);
      if (!(r_inv == flipped)) return false;
      if (!(exchange::assemble_R(delta, gamma, lam()) * r_inv).is_identity()) return false;
      for (int s = 0; s <= std::min(gamma, delta); ++s)
        if (!exchange::biorthogonality_check(gamma, delta, s, lam())) return false;
    }
  return spot_check(g, 3, [&](const Rat& x) {
    for (int delta = 0; delta <= bound; ++delta)
      for (int gamma = 0; gamma <= bound; ++gamma)
        for (int s = 0; s <= std::min(gamma, delta); ++s)
          if (!exchange::biorthogonality_check(gamma, delta, s, x)) return false;
    return true;
  });
}

inline bool racah_identification(const Settings& st, std::mt19937& g) {
  const int bound = st.cap(3);
  auto check = [&](const auto& lambda) {
    for (int gamma = 0; gamma <= bound; ++gamma)
      for (int delta = 0; delta <= bound; ++delta)
        for (int s = 0; s <= delta; ++s) {
          auto p = exchange::racah_parameters(lambda, gamma, delta, s);
          for (int m = 0; m <= std::min(gamma, s); ++m)
            for (int x = 0; x <= std::min(gamma, s); ++x)
              if (!(eval_terminating(exchange::series_small_s(m, x, s, lambda, gamma, delta)) ==
                    exchange::racah_eval(m, x, p[0], p[1], p[2], p[3])))
                return false;
        }
    return true;
  };
  return check(lam()) && spot_check(g, 3, [&](const Rat& x) { return check(x); });
}

inline bool qdybe_all(const Settings& st, std::mt19937&) {
  const int bound = st.cap(2);
  for (int a = 0; a <= bound; ++a)
    for (int b = 0; b <= bound; ++b)
      for (int c = 0; c <= bound; ++c)
        if (!qdybe::qdybe_check<RatQ>({a, b, c}, lam())) return false;
  return true;
}

inline bool universal_identities(const Settings& st, std::mt19937&) {
  if (!universal::universal_product_check(10)) return false;
  const int bound = st.cap(4);
  for (int delta = 0; delta <= bound; ++delta)
    for (int gamma = 0; gamma <= bound; ++gamma) {
      const int order = std::min(delta, gamma);
      if (!(universal::apply_universal(universal::universal_J(order), delta, gamma) ==
            fusion::assemble_J(delta, gamma, lam())))
        return false;
      if (!(universal::apply_universal(universal::universal_J_inv(order), delta, gamma) ==
            fusion::assemble_J_inv(delta, gamma, lam())))
        return false;
    }
  return true;
}

inline bool q_operator(const Settings& st, std::mt19937&) {
  const int bound = st.cap(6);
  auto q = universal::q_from_fusion(universal::universal_J(bound));
  auto closed_q = universal::universal_Q(bound);
  for (int n = 0; n <= bound; ++n)
    if (!(q.terms[static_cast<std::size_t>(n)] == closed_q.terms[static_cast<std::size_t>(n)])) return false;
  for (int gamma = 0; gamma <= bound; ++gamma)
    for (int k = 0; k <= gamma; ++k)
      if (!(universal::q_operator_eigenvalue(gamma, k, lam()) == universal::q_operator_eigenvalue_sum(gamma, k, q)))
        return false;
  return true;
}

inline std::vector<int> even_gammas(const Settings& st, int bound) {
  std::vector<int> out;
  for (int gamma = 0; gamma <= st.cap(bound); gamma += 2) out.push_back(gamma);
  return out;
}

inline bool trace_pipeline(const Settings& st, std::mt19937&) {
  for (int gamma : even_gammas(st, 4))
    if (!trace::psi_series_check(gamma, 9)) return false;
  for (int gamma : even_gammas(st, 6)) {
    auto f = trace::weighted_F(gamma).body;
    if (!(trace::weighted_F_pipeline(gamma).body == f)) return false;
    if (!(trace::weighted_F_second_form(gamma) == f)) return false;
    if (!(trace::psi_body_second_form(gamma) == trace::psi(gamma).body)) return false;
    if (!trace::second_forms_match_series(gamma, 10)) return false;
  }
  return true;
}

inline bool macdonald_ruijsenaars(const Settings& st, std::mt19937&) {
  const int delta_bound = st.cap(3);
  for (int delta = 0; delta <= delta_bound; ++delta) {
    if (!trace::is_palindromic(trace::character(delta)) || !trace::weyl_quotient_check(delta)) return false;
    for (int gamma : even_gammas(st, 4))
      if (!trace::mr_check(delta, gamma)) return false;
  }
  for (int gamma : even_gammas(st, 4)) {
    auto op = trace::mr_operator(1, gamma);
    auto expected = trace::mr_delta_one_expected(gamma);
    if (op.terms.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (op.terms[i].shift != expected[i].shift || !(op.terms[i].coefficient == expected[i].coefficient)) return false;
    if (!trace::mr_contiguous_link(gamma)) return false;
    if (!trace::contiguous_check_symbolic_b(gamma / 2)) return false;
  }
  return trace::contiguous_check_symbolic_b(3);
}

inline bool hypergeometric_lemmas(const Settings&, std::mt19937& g) {
  const RatQ x = lam();
  const RatQ b = RatQ(2) * x + RatQ(1);
  const RatQ c = RatQ(Rat(1, 2)) - x;
  for (long n = 0; n <= 10; ++n) {
    if (!(chu_vandermonde(n, b, c) == eval_terminating(hyp<RatQ>({RatQ(-n), b}, {c})))) return false;
    const RatQ one_if_zero(n == 0 ? 1L : 0L);
    if (!(eval_terminating(hyp<RatQ>({RatQ(-n), x + RatQ(n - 1)}, {x})) == one_if_zero)) return false;
    const RatQ half = x / RatQ(2);
    if (!(eval_terminating(hyp<RatQ>({RatQ(-n), x, half + RatQ(1)}, {x + RatQ(n + 1), half})) == one_if_zero))
      return false;
  }
  for (int gamma = 0; gamma <= 3; ++gamma)
    for (int delta = 0; delta <= 3; ++delta)
      for (int s = 0; s <= std::min(gamma, delta); ++s)
        for (int m = 0; m <= s; ++m)
          for (int n = 0; n <= s; ++n)
            if (!exchange::whipple_chain_check(m, n, s, x, gamma, delta)) return false;
  return spot_check(g, 5, [&](const Rat& bb) {
    const Rat cc = random_lambda(g);
    for (long n = 0; n <= 6; ++n) {
      if (pochhammer(cc, n).is_zero()) throw non_generic_lambda();
      if (!(chu_vandermonde(n, bb, cc) == eval_terminating(hyp<Rat>({Rat(-n), bb}, {cc})))) return false;
    }
    return true;
  });
}

} // namespace detail

inline std::vector<Check> checks() {
  using namespace detail;
  return {
      {1, "fusion inverse pair", 1.0, inverse_pair},
      {2, "fusion matrix vs intertwiner composition", 5.0, fusion_oracle},
      {3, "intertwiner closed form vs Leibniz oracle", 10.0, intertwiner_oracle},
      {4, "exchange single sum vs closed forms", 10.0, exchange_closed_forms},
      {5, "exchange inverse and biorthogonality", 10.0, inverse_and_biorthogonality},
      {6, "Racah identification", 2.0, racah_identification},
      {7, "dynamical Yang-Baxter equation", 60.0, qdybe_all},
      {8, "universal fusion matrix", 5.0, universal_identities},
      {9, "Q operator eigenvalues", 1.0, q_operator},
      {10, "weighted trace functions", 5.0, trace_pipeline},
      {11, "dual Macdonald-Ruijsenaars equations", 10.0, macdonald_ruijsenaars},
      {12, "hypergeometric lemmas", 2.0, hypergeometric_lemmas},
  };
}

/// Runs one check. Exceeding the time limit counts as a failure.
inline Outcome run_check(const Check& c, const Settings& st) {
  Outcome out{c.index, c.name, false, 0, c.limit_seconds, {}};
  std::mt19937 g(st.seed + static_cast<unsigned>(c.index));
  auto t0 = std::chrono::steady_clock::now();
  try {
    out.passed = c.run(st, g);
    if (!out.passed) out.note = "identity failed";
  } catch (const std::exception& e) {
    out.note = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.passed && out.seconds > c.limit_seconds) {
    out.passed = false;
    out.note = "over time limit";
  }
  return out;
}

inline std::string format_outcome(const Outcome& o, bool timing) {
  char buf[64];
  std::string line = (o.passed ? "PASS " : "FAIL ") + std::string(o.index < 10 ? " " : "") + std::to_string(o.index) +
                     "  " + o.name;
  if (timing) {
    std::snprintf(buf, sizeof buf, "  %.3f s (limit %g s)", o.seconds, o.limit_seconds);
    line += buf;
  }
  if (!o.note.empty()) line += "  [" + o.note + "]";
  return line;
}

/// Runs every check in index order, printing one line each. Returns true if all passed.
inline bool run_all(const Settings& st, std::ostream& os) {
  bool ok = true;
  for (const auto& c : checks()) {
    auto o = run_check(c, st);
    os << format_outcome(o, st.timing) << '\n' << std::flush;
    ok = ok && o.passed;
  }
  return ok;
}

} // namespace dybe::verify
