#include "ajt/seqexpr.hpp"

#include <cctype>

namespace ajt {

SeqExpr jones_seq(const CableKnot& knot) {
  knot.validate();
  return std::make_shared<const SeqNode>(SeqNode{SeqNode::Jones{knot}, "J_" + knot.encoding()});
}

SeqExpr exp_poly_seq(std::map<std::int64_t, LaurentScalar> terms) {
  std::map<std::int64_t, LaurentScalar> clean;
  std::string label;
  for (auto& [k, c] : terms) {
    if (c.is_zero()) continue;
    if (!label.empty()) label += " + ";
    label += "(" + c.to_string() + ") t^{" + std::to_string(2 * k) + "n}";
    clean.emplace(k, std::move(c));
  }
  if (label.empty()) label = "0";
  return std::make_shared<const SeqNode>(SeqNode{SeqNode::ExpPoly{std::move(clean)}, label});
}

SeqExpr reindex_seq(SeqExpr inner, std::int64_t a, std::int64_t b) {
  std::string label = describe(inner) + "(" + std::to_string(a) + "n" + (b < 0 ? "" : "+") + std::to_string(b) + ")";
  return std::make_shared<const SeqNode>(SeqNode{SeqNode::Reindex{std::move(inner), a, b}, std::move(label)});
}

SeqExpr apply_seq(const TorusElement& op, SeqExpr inner) {
  std::string label = "[" + to_string(op) + "] " + describe(inner);
  return std::make_shared<const SeqNode>(SeqNode{SeqNode::Apply{op, std::move(inner)}, std::move(label)});
}

std::string describe(const SeqExpr& e) { return e->label; }

namespace {

using Poly = std::map<std::int64_t, LaurentScalar>;  // frequency k -> coefficient of t^(2kn)

void add_into(Poly& acc, const Poly& x, bool negate) {
  for (const auto& [k, c] : x) {
    LaurentScalar& slot = acc[k];
    slot = negate ? slot - c : slot + c;
    if (slot.is_zero()) acc.erase(k);
  }
}

Poly multiply(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [kx, cx] : x) {
    for (const auto& [ky, cy] : y) {
      LaurentScalar& slot = out[kx + ky];
      slot = slot + cx * cy;
      if (slot.is_zero()) out.erase(kx + ky);
    }
  }
  return out;
}

class SeqParser {
 public:
  explicit SeqParser(std::string_view s) : s_(s) {}

  Poly parse_all() {
    Poly v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(i_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_factor() {
    skip();
    return i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == 't' || s_[i_] == '(');
  }
  std::int64_t number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected integer");
    try {
      return std::stoll(std::string(s_.substr(start, i_ - start)));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }

  Poly expr() {
    bool neg = false;
    if (at('+')) {
      ++i_;
    } else if (at('-')) {
      ++i_;
      neg = true;
    }
    Poly acc;
    add_into(acc, term(), neg);
    for (;;) {
      if (at('+')) {
        ++i_;
        add_into(acc, term(), false);
      } else if (at('-')) {
        ++i_;
        add_into(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (at('*')) {
        ++i_;
        acc = multiply(acc, factor());
      } else if (starts_factor()) {
        acc = multiply(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    if (s_[i_] == '(') {
      ++i_;
      Poly v = expr();
      if (!at(')')) fail("expected ')'");
      ++i_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {{0, LaurentScalar(mpz_class(std::string(s_.substr(start, i_ - start))))}};
    }
    if (s_[i_] == 't') {
      ++i_;
      std::int64_t cn = 0;
      std::int64_t c0 = 1;
      if (at('^')) {
        ++i_;
        std::tie(cn, c0) = exponent();
      }
      if (cn % 2 != 0) fail("the coefficient of n in an exponent of t must be even");
      return {{cn / 2, LaurentScalar::tpow(c0)}};
    }
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  // Affine exponent a n + b, braced or a bare signed integer / "n" term.
  std::pair<std::int64_t, std::int64_t> exponent() {
    const bool braced = at('{');
    if (braced) ++i_;
    std::int64_t cn = 0;
    std::int64_t c0 = 0;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (at('-')) {
        ++i_;
        sign = -1;
      } else if (at('+')) {
        ++i_;
      } else if (!first) {
        break;
      }
      std::int64_t mag = 1;
      bool has_num = false;
      skip();
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        mag = number();
        has_num = true;
      }
      if (at('n')) {
        ++i_;
        cn += sign * mag;
      } else if (has_num) {
        c0 += sign * mag;
      } else {
        fail("expected exponent");
      }
      first = false;
      if (!braced) break;
    }
    if (braced) {
      if (!at('}')) fail("expected '}'");
      ++i_;
    }
    return {cn, c0};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

SeqExpr parse_seq_expr(std::string_view text) { return exp_poly_seq(SeqParser(text).parse_all()); }

SeqEvaluator<SymbolicDomain>& symbolic_evaluator() {
  static SeqEvaluator<SymbolicDomain> ev(SymbolicDomain{}, symbolic_jones());
  return ev;
}

}  // namespace ajt
