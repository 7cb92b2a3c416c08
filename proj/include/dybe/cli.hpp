#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dybe/errors.hpp"
#include "dybe/exchange.hpp"
#include "dybe/fusion.hpp"
#include "dybe/intertwine.hpp"
#include "dybe/io.hpp"
#include "dybe/qdybe.hpp"
#include "dybe/trace.hpp"
#include "dybe/universal.hpp"
#include "dybe/verify.hpp"

namespace dybe::cli {

enum class Format { text, json, csv };

struct RunConfig {
  std::string command;
  std::optional<Rat> lambda; ///< empty: symbolic
  Format format = Format::text;
  bool oracle = false;
  bool inverse = false;
  int gamma = 0;
  int delta = 0;
  int k = 0;
  int s = 0;
  int order = 4;
  std::vector<int> dims{1, 1, 1};
  std::optional<int> max_dim;
  unsigned seed = 42;
  bool timing = true;
};

/// Invalid command-line configuration (exit code 2).
class config_error : public error {
public:
  using error::error;
};

enum ExitCode { exit_ok = 0, exit_fail = 1, exit_invalid = 2 };

namespace detail {

inline RatQ lam() { return RatQ::variable(Var::lambda); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw config_error(what);
}

inline void require_symbolic(const RunConfig& c) {
  require(!c.lambda, "--lambda is not supported by '" + c.command + "'");
}

inline const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

template <class F>
void print_matrix(const RunConfig& c, const WeightedMatrix<F>& m, std::ostream& out) {
  const auto label = io::lambda_label(c.lambda);
  switch (c.format) {
  case Format::text: out << io::matrix_text(m, label); break;
  case Format::json: out << io::matrix_json(m, label); break;
  case Format::csv: out << io::matrix_csv(m); break;
  }
}

template <class F>
int intertwiner(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.gamma >= 0 && c.k >= 0 && c.k <= c.gamma, "need 0 <= k <= gamma");
  auto method = c.oracle ? intertwine::Method::oracle : intertwine::Method::closed_form;
  auto t = intertwine::build_table(lambda, c.gamma, c.k, c.gamma + 2, method);
  switch (c.format) {
  case Format::text: out << io::intertwiner_text(t, io::lambda_label(c.lambda)); break;
  case Format::json: out << io::dump(io::intertwiner_to_json(t)); break;
  case Format::csv: out << io::intertwiner_csv(t); break;
  }
  return exit_ok;
}

template <class F>
int fusion_cmd(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.delta >= 0 && c.gamma >= 0, "dimensions must be nonnegative");
  require(!(c.oracle && c.inverse), "--oracle and --inverse cannot be combined");
  if (c.oracle)
    print_matrix(c, fusion::fusion_from_intertwiners(c.delta, c.gamma, lambda), out);
  else if (c.inverse)
    print_matrix(c, fusion::assemble_J_inv(c.delta, c.gamma, lambda), out);
  else
    print_matrix(c, fusion::assemble_J(c.delta, c.gamma, lambda), out);
  return exit_ok;
}

template <class F>
int exchange_cmd(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.delta >= 0 && c.gamma >= 0, "dimensions must be nonnegative");
  require(!(c.oracle && c.inverse), "--oracle and --inverse cannot be combined");
  if (c.oracle)
    print_matrix(c, exchange::assemble_R_from_sum(c.delta, c.gamma, lambda), out);
  else if (c.inverse)
    print_matrix(c, exchange::assemble_R_inv(c.delta, c.gamma, lambda), out);
  else
    print_matrix(c, exchange::assemble_R(c.delta, c.gamma, lambda), out);
  return exit_ok;
}

template <class F>
int qop(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.gamma >= 0, "gamma must be nonnegative");
  std::vector<F> diag;
  for (int k = 0; k <= c.gamma; ++k) diag.push_back(universal::q_operator_eigenvalue(c.gamma, k, lambda));
  switch (c.format) {
  case Format::text:
    out << "gamma = " << c.gamma << ", lambda = " << io::lambda_label(c.lambda) << '\n';
    for (int k = 0; k <= c.gamma; ++k) out << "k = " << k << ": " << io::render(diag[static_cast<std::size_t>(k)]) << '\n';
    break;
  case Format::json: {
    io::json d = io::json::array();
    for (const auto& x : diag) d.push_back(io::entry_json(x));
    out << io::dump(io::json{{"gamma", c.gamma}, {"lambda", io::lambda_label(c.lambda)}, {"diagonal", std::move(d)}});
    break;
  }
  case Format::csv:
    out << "k,num,den\n";
    for (int k = 0; k <= c.gamma; ++k) {
      auto [n, d] = io::parts(diag[static_cast<std::size_t>(k)]);
      out << k << ',' << n << ',' << d << '\n';
    }
    break;
  }
  return exit_ok;
}

template <class F>
int qdybe_cmd(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.dims.size() == 3, "--dims takes three values");
  for (int d : c.dims) require(d >= 0, "dimensions must be nonnegative");
  const qdybe::Triple t{c.dims[0], c.dims[1], c.dims[2]};
  const bool ok = qdybe::qdybe_check(t, lambda);
  const std::string dims = std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]);
  if (c.format == Format::json)
    out << io::dump(io::json{{"dims", io::json::array({t[0], t[1], t[2]})},
                             {"lambda", io::lambda_label(c.lambda)},
                             {"result", verdict(ok)}});
  else
    out << "qdybe dims = " << dims << ", lambda = " << io::lambda_label(c.lambda) << ": " << verdict(ok) << '\n';
  return ok ? exit_ok : exit_fail;
}

template <class F>
int biorth(const RunConfig& c, const F& lambda, std::ostream& out) {
  require(c.gamma >= 0 && c.delta >= 0, "dimensions must be nonnegative");
  require(c.s >= 0 && c.s <= std::min(c.gamma, c.delta), "need 0 <= s <= min(gamma, delta)");
  const bool ok = exchange::biorthogonality_check(c.gamma, c.delta, c.s, lambda);
  if (c.format == Format::json)
    out << io::dump(io::json{{"gamma", c.gamma},
                             {"delta", c.delta},
                             {"s", c.s},
                             {"lambda", io::lambda_label(c.lambda)},
                             {"result", verdict(ok)}});
  else
    out << "biorthogonality gamma = " << c.gamma << ", delta = " << c.delta << ", s = " << c.s
        << ", lambda = " << io::lambda_label(c.lambda) << ": " << verdict(ok) << '\n';
  return ok ? exit_ok : exit_fail;
}

inline int universal_cmd(const RunConfig& c, std::ostream& out) {
  require_symbolic(c);
  require(c.order >= 0, "order must be nonnegative");
  auto u = c.inverse ? universal::universal_J_inv(c.order) : universal::universal_J(c.order);
  switch (c.format) {
  case Format::text:
    for (int n = 0; n <= c.order; ++n) out << "g_" << n << "(h) = " << io::render(u.terms[static_cast<std::size_t>(n)]) << '\n';
    break;
  case Format::json: {
    io::json terms = io::json::array();
    for (const auto& t : u.terms) terms.push_back(io::entry_json(t));
    out << io::dump(io::json{{"order", c.order}, {"inverse", c.inverse}, {"terms", std::move(terms)}});
    break;
  }
  case Format::csv:
    out << "n,num,den\n";
    for (int n = 0; n <= c.order; ++n) {
      auto [a, b] = io::parts(u.terms[static_cast<std::size_t>(n)]);
      out << n << ',' << a << ',' << b << '\n';
    }
    break;
  }
  return exit_ok;
}

inline void require_even_gamma(const RunConfig& c) {
  require(c.gamma >= 0 && c.gamma % 2 == 0, "gamma must be even and nonnegative");
}

inline int trace_cmd(const RunConfig& c, std::ostream& out) {
  require_symbolic(c);
  require_even_gamma(c);
  auto psi = trace::psi(c.gamma);
  auto f = trace::weighted_F(c.gamma);
  switch (c.format) {
  case Format::text:
    out << "gamma = " << c.gamma << '\n';
    out << "Psi = exp(lambda*mu/2) * " << io::render(psi.body) << '\n';
    out << "F = exp(-lambda*mu/2) * " << io::render(f.body) << '\n';
    break;
  case Format::json:
    out << io::dump(io::json{{"gamma", c.gamma},
                             {"variables", {{"u", "exp(lambda/2)"}, {"mu", "mu"}}},
                             {"psi", {{"prefactor", "exp(lambda*mu/2)"}, {"body", io::entry_json(psi.body)}}},
                             {"F", {{"prefactor", "exp(-lambda*mu/2)"}, {"body", io::entry_json(f.body)}}}});
    break;
  case Format::csv: {
    out << "function,num,den\n";
    auto [pn, pd] = io::parts(psi.body);
    auto [fn, fd] = io::parts(f.body);
    out << "psi," << pn << ',' << pd << '\n' << "F," << fn << ',' << fd << '\n';
    break;
  }
  }
  return exit_ok;
}

inline int mr_check_cmd(const RunConfig& c, std::ostream& out) {
  require_symbolic(c);
  require_even_gamma(c);
  require(c.delta >= 0, "delta must be nonnegative");
  auto op = trace::mr_operator(c.delta, c.gamma);
  const bool ok = trace::mr_check(c.delta, c.gamma);
  const int g = c.gamma / 2;
  switch (c.format) {
  case Format::text:
    out << "delta = " << c.delta << ", gamma = " << c.gamma << '\n';
    for (std::size_t i = 0; i < op.terms.size(); ++i)
      out << "s = " << g + static_cast<int>(i) << ", shift " << op.terms[i].shift << ": "
          << io::render(op.terms[i].coefficient) << '\n';
    out << "mr-check: " << verdict(ok) << '\n';
    break;
  case Format::json: {
    io::json terms = io::json::array();
    for (std::size_t i = 0; i < op.terms.size(); ++i)
      terms.push_back(io::json{{"s", g + static_cast<int>(i)},
                               {"shift", op.terms[i].shift},
                               {"coefficient", io::entry_json(op.terms[i].coefficient)}});
    out << io::dump(io::json{{"delta", c.delta}, {"gamma", c.gamma}, {"terms", std::move(terms)}, {"result", verdict(ok)}});
    break;
  }
  case Format::csv:
    out << "s,shift,num,den\n";
    for (std::size_t i = 0; i < op.terms.size(); ++i) {
      auto [n, d] = io::parts(op.terms[i].coefficient);
      out << g + static_cast<int>(i) << ',' << op.terms[i].shift << ',' << n << ',' << d << '\n';
    }
    break;
  }
  return ok ? exit_ok : exit_fail;
}

inline int verify_all(const RunConfig& c, std::ostream& out) {
  require_symbolic(c);
  require(c.format == Format::text, "verify-all only supports text output");
  if (c.max_dim) require(*c.max_dim >= 0, "--max-dim must be nonnegative");
  verify::Settings st{c.max_dim, c.seed, c.timing};
  return verify::run_all(st, out) ? exit_ok : exit_fail;
}

template <class Fn>
int with_lambda(const RunConfig& c, Fn&& fn) {
  if (c.lambda) return fn(*c.lambda);
  return fn(lam());
}

} // namespace detail

/// Runs one command. Errors are reported on `err`; the return value is the exit code.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  using namespace detail;
  try {
    if (c.command == "intertwiner") return with_lambda(c, [&](const auto& l) { return intertwiner(c, l, out); });
    if (c.command == "fusion") return with_lambda(c, [&](const auto& l) { return fusion_cmd(c, l, out); });
    if (c.command == "exchange") return with_lambda(c, [&](const auto& l) { return exchange_cmd(c, l, out); });
    if (c.command == "qop") return with_lambda(c, [&](const auto& l) { return qop(c, l, out); });
    if (c.command == "qdybe") return with_lambda(c, [&](const auto& l) { return qdybe_cmd(c, l, out); });
    if (c.command == "biorth") return with_lambda(c, [&](const auto& l) { return biorth(c, l, out); });
    if (c.command == "universal") return universal_cmd(c, out);
    if (c.command == "trace") return trace_cmd(c, out);
    if (c.command == "mr-check") return mr_check_cmd(c, out);
    if (c.command == "verify-all") return verify_all(c, out);
    throw config_error("unknown command '" + c.command + "'");
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const non_generic_lambda& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_invalid;
}

/// Parses arguments with CLI11, runs the command and writes its output to `out`
/// or to the file named by --output.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic fusion and exchange matrices for sl(2)"};
  app.require_subcommand(1);

  RunConfig c;
  std::string lambda_text;
  std::string format_text = "text";
  std::string output;
  bool symbolic = false;
  bool no_timing = false;

  auto common = [&](CLI::App* sub, bool lambda_ok) {
    if (lambda_ok) {
      auto* l = sub->add_option("--lambda", lambda_text, "rational lambda p/q");
      auto* s = sub->add_flag("--symbolic", symbolic, "keep lambda symbolic (default)");
      l->excludes(s);
    }
    sub->add_option("--format", format_text, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", output, "write output to this file");
  };

  auto* intertwiner = app.add_subcommand("intertwiner", "coefficients c_{m,n} of the intertwining operator");
  common(intertwiner, true);
  intertwiner->add_option("--gamma", c.gamma)->required();
  intertwiner->add_option("--k", c.k)->required();
  intertwiner->add_flag("--oracle", c.oracle, "use the Leibniz expansion instead of the closed forms");

  auto* fusion = app.add_subcommand("fusion", "fusion matrix on V_delta (x) V_gamma");
  common(fusion, true);
  fusion->add_option("--delta", c.delta)->required();
  fusion->add_option("--gamma", c.gamma)->required();
  fusion->add_flag("--inverse", c.inverse);
  fusion->add_flag("--oracle", c.oracle, "compose intertwiners instead of the closed form");

  auto* exchange = app.add_subcommand("exchange", "exchange matrix on V_delta (x) V_gamma");
  common(exchange, true);
  exchange->add_option("--delta", c.delta)->required();
  exchange->add_option("--gamma", c.gamma)->required();
  exchange->add_flag("--inverse", c.inverse);
  exchange->add_flag("--oracle", c.oracle, "entries from the single sum instead of the matrix product");

  auto* universal = app.add_subcommand("universal", "truncated universal fusion matrix");
  common(universal, false);
  universal->add_option("--order", c.order)->required();
  universal->add_flag("--inverse", c.inverse);

  auto* qop = app.add_subcommand("qop", "diagonal of Q(lambda) on V_gamma");
  common(qop, true);
  qop->add_option("--gamma", c.gamma)->required();

  auto* trace = app.add_subcommand("trace", "weighted trace functions Psi and F");
  common(trace, false);
  trace->add_option("--gamma", c.gamma)->required();

  auto* qdybe = app.add_subcommand("qdybe", "check the dynamical Yang-Baxter equation");
  common(qdybe, true);
  qdybe->add_option("--dims", c.dims, "three dimensions a,b,c")->delimiter(',')->expected(3)->required();

  auto* biorth = app.add_subcommand("biorth", "check biorthogonality of exchange coefficients");
  common(biorth, true);
  biorth->add_option("--gamma", c.gamma)->required();
  biorth->add_option("--delta", c.delta)->required();
  biorth->add_option("--s", c.s)->required();

  auto* mr = app.add_subcommand("mr-check", "check the dual Macdonald-Ruijsenaars equation");
  common(mr, false);
  mr->add_option("--gamma", c.gamma)->required();
  mr->add_option("--delta", c.delta)->required();

  auto* all = app.add_subcommand("verify-all", "run the full verification suite");
  common(all, false);
  all->add_option("--max-dim", c.max_dim, "cap on every dimension bound (also DYBE_MAX_DIM)");
  all->add_option("--seed", c.seed, "seed for randomized spot checks");
  all->add_flag("--no-timing", no_timing, "omit timings for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format_text == "json" ? Format::json : (format_text == "csv" ? Format::csv : Format::text);
  c.timing = !no_timing;
  if (!lambda_text.empty()) {
    try {
      c.lambda = Rat::parse(lambda_text);
    } catch (const error& e) {
      err << "error: " << e.what() << '\n';
      return exit_invalid;
    }
  }
  if (c.command == "verify-all" && !c.max_dim) {
    if (const char* env = std::getenv("DYBE_MAX_DIM")) {
      try {
        std::size_t used = 0;
        c.max_dim = std::stoi(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        err << "error: DYBE_MAX_DIM must be an integer\n";
        return exit_invalid;
      }
    }
  }

  if (output.empty()) return run(c, out, err);
  std::ostringstream buf;
  int code = run(c, buf, err);
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << output << '\n';
    return exit_invalid;
  }
  file << buf.str();
  return code;
}

} // namespace dybe::cli
