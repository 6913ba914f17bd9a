#include "ajt/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "ajt/error.hpp"
#include "ajt/jones.hpp"
#include "ajt/laurent.hpp"
#include "ajt/torus.hpp"

namespace ajt {

void RunConfig::validate() const {
  params.validate();
  if (lo > hi) throw Error(ErrorKind::InvalidParams, "color range needs lo <= hi");
  if (lo < 1) throw Error(ErrorKind::InvalidParams, "colors start at 1");
  if (K0 < 1 || K0 > K_max) throw Error(ErrorKind::InvalidParams, "fit bounds need 1 <= K0 <= K_max");
  if (extra < 1) throw Error(ErrorKind::InvalidParams, "at least one extra check is required");
  if (parallelism < 1) throw Error(ErrorKind::InvalidParams, "parallelism must be at least 1");
  if (t0s.empty()) throw Error(ErrorKind::InvalidParams, "no specialization points");
  std::set<mpq_class> seen;
  for (const auto& t : t0s) {
    if (t == 0) throw Error(ErrorKind::ZeroBase, "specialization point t0 must be nonzero");
    if (!seen.insert(t).second) throw Error(ErrorKind::InvalidParams, "specialization points must be distinct");
  }
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string_view::npos) {
      const std::string whole(text);
      const std::int64_t v = std::stoll(whole, &used);
      if (used != whole.size()) throw std::invalid_argument(whole);
      return {v, v};
    }
    const std::string a(text.substr(0, dots)), b(text.substr(dots + 2));
    const std::int64_t lo = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const std::int64_t hi = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "expected a color range lo..hi, got '" + std::string(text) + "'");
  }
}

std::vector<mpq_class> parse_t0_list(std::string_view text) {
  std::vector<mpq_class> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<VerifyMode> parse_mode(std::string_view text) {
  if (text == "symbolic") return VerifyMode::Symbolic;
  if (text == "specialized") return VerifyMode::Specialized;
  if (text == "auto") return std::nullopt;
  throw Error(ErrorKind::ParseError, "mode must be symbolic, specialized or auto");
}

int cmd_jones(std::string_view knot, std::int64_t n, std::ostream& out) {
  const CableKnot k = parse_knot(knot);
  const LaurentScalar v = colored_jones(k, n);
  out << v.to_string() << "\n";
  out << "eps: " << v.epsilon().get_str() << "\n";
  return 0;
}

int cmd_apoly(const CableParams& params, std::ostream& out) {
  const CaseTag tag = case_tag(params);
  out << "params: " << params.to_string() << "\n";
  out << "case: " << to_string(tag) << "\n";
  out << "expanded: " << a_polynomial_cable(params, true).to_string() << "\n";
  out << "factored: " << a_polynomial_factored(params) << "\n";
  if (params.admissible()) {
    out << "admissible: yes\n";
  } else {
    out << "inadmissible: r in (0, pqs)\n";
  }
  return 0;
}

int cmd_fit(const FitCommand& cmd, std::ostream& out) {
  if (cmd.seq.empty() == cmd.seq_expr.empty()) {
    throw Error(ErrorKind::ParseError, "give exactly one of --seq and --seq-expr");
  }
  const SeqExpr base = cmd.seq.empty() ? parse_seq_expr(cmd.seq_expr) : jones_seq(parse_knot(cmd.seq));
  const TorusElement op = parse_torus(cmd.op);
  const FitReport rep = fit(apply_seq(op, base), cmd.options);
  out << to_json(rep).dump(2) << "\n";
  switch (rep.status) {
    case FitStatus::Member: return 0;
    case FitStatus::NotMember: return 1;
    case FitStatus::Inconclusive: return 3;
  }
  return 3;
}

namespace {

void write_text(const StructuredReport& r, std::ostream& out) {
  out << "params: " << r.params.to_string() << "  case: " << r.case_name << "\n";
  if (!r.mode.empty()) out << "mode: " << r.mode << "  m: " << r.m << "  k: " << r.k << "  power: " << r.power << "\n";
  for (const auto& s : r.stages) {
    out << std::left << std::setw(18) << s.name << s.status << "  (" << std::fixed << std::setprecision(1)
        << s.elapsed_ms << " ms)\n";
    if (s.status != "pass") out << "  " << s.details.dump() << "\n";
  }
  if (r.passed()) {
    out << "monomial: " << (r.monomial.eta < 0 ? "-" : "") << "M^" << r.monomial.a_exp << " L^" << r.monomial.b_exp
        << "\n";
  }
  out << (r.passed() ? "verified" : "not verified") << " (exit " << r.exit_code << ")\n";
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  VerifyConfig vc;
  vc.lo = cfg.lo;
  vc.hi = cfg.hi;
  vc.mode = cfg.mode;
  vc.t0s = cfg.t0s;
  vc.fit.K0 = cfg.K0;
  vc.fit.K_max = cfg.K_max;
  vc.fit.extra = cfg.extra;
  vc.parallelism = cfg.parallelism;
  const StructuredReport rep = strong_aj_verify(cfg.params, vc);
  if (!rep.admissible) err << "inadmissible parameters: r in (0, pqs) for " << cfg.params.to_string() << "\n";

  std::ostringstream body;
  if (cfg.json) {
    body << to_json(rep).dump(2) << "\n";
  } else {
    write_text(rep, body);
  }
  if (cfg.out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw Error(ErrorKind::InvalidParams, "cannot write " + cfg.out_path);
    f << body.str();
    out << (rep.passed() ? "verified" : "not verified") << " (exit " << rep.exit_code << "), report in "
        << cfg.out_path << "\n";
  }
  return rep.exit_code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored Jones polynomials, quantum-torus operators and AJ witnesses for cable knots", "ajt"};
  app.require_subcommand(1);

  std::string knot;
  std::int64_t color = 1;
  auto* jones = app.add_subcommand("jones", "Colored Jones polynomial J_K(n)");
  jones->add_option("knot", knot, "U, T(p,q) or C(p,q;r,s)")->required();
  jones->add_option("n", color, "Color")->required();

  std::int64_t ap[4] = {0, 0, 0, 0};
  auto* apoly = app.add_subcommand("apoly", "A-polynomial of the (r,s)-cable of T(p,q)");
  apoly->add_option("p", ap[0])->required();
  apoly->add_option("q", ap[1])->required();
  apoly->add_option("r", ap[2])->required();
  apoly->add_option("s", ap[3])->required();

  FitCommand fc;
  auto* fitc = app.add_subcommand("fit", "Exponential-polynomial membership of an operator applied to a sequence");
  fitc->add_option("--op", fc.op, "Torus element, e.g. \"L^2 - t^-24 M^-12\"");
  fitc->add_option("--seq", fc.seq, "Knot whose colored Jones sequence is used");
  fitc->add_option("--seq-expr", fc.seq_expr, "Exponential polynomial in n, e.g. \"t^{2n}+t^{-2n}\"");
  fitc->add_option("--K", fc.options.K_max, "Largest support bound K")->capture_default_str();
  fitc->add_option("--K0", fc.options.K0, "Initial support bound")->capture_default_str();
  fitc->add_option("--window", fc.options.window_start, "First sampled color")->capture_default_str();
  fitc->add_option("--extra", fc.options.extra, "Extra confirmation points")->capture_default_str();

  RunConfig rc;
  std::string range = "1..8", mode = "auto", t0s = "2,3/2,5/3";
  auto* ver = app.add_subcommand("verify", "Run the full witness pipeline for C(p,q;r,s)");
  ver->add_option("--p", rc.params.p)->required();
  ver->add_option("--q", rc.params.q)->required();
  ver->add_option("--r", rc.params.r)->required();
  ver->add_option("--s", rc.params.s)->required();
  ver->add_option("--n", range, "Color range lo..hi")->capture_default_str();
  ver->add_option("--mode", mode, "symbolic, specialized or auto")->capture_default_str();
  ver->add_option("--t0", t0s, "Specialization points")->capture_default_str();
  ver->add_option("--K0", rc.K0)->capture_default_str();
  ver->add_option("--K-max", rc.K_max)->capture_default_str();
  ver->add_option("--extra", rc.extra)->capture_default_str();
  ver->add_option("--parallelism", rc.parallelism)->capture_default_str();
  ver->add_flag("--json", rc.json, "JSON report");
  ver->add_option("--out", rc.out_path, "Write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  int code = 0;
  try {
    if (*jones) {
      code = cmd_jones(knot, color, out);
    } else if (*apoly) {
      code = cmd_apoly({ap[0], ap[1], ap[2], ap[3]}, out);
    } else if (*fitc) {
      fc.options.K0 = std::min(fc.options.K0, fc.options.K_max);
      code = cmd_fit(fc, out);
    } else {
      std::tie(rc.lo, rc.hi) = parse_range(range);
      rc.mode = parse_mode(mode);
      rc.t0s = parse_t0_list(t0s);
      code = cmd_verify(rc, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = e.kind() == ErrorKind::ResourceBound ? 3 : 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    code = 3;
  }
  save_jones_cache();
  return code;
}

}  // namespace ajt
