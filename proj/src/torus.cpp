#include "ajt/torus.hpp"

#include "ajt/error.hpp"
#include "expr_parser.hpp"

namespace ajt {

std::string to_string(const TorusElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") M^" + std::to_string(k.a) + " L^" + std::to_string(k.b);
  }
  return out;
}

namespace {

struct OperatorTraits {
  SymbolicDomain d;
  bool is_symbol(char c) const { return c == 't' || c == 'M' || c == 'L'; }
  TorusElement integer(const mpz_class& v) const { return TorusElement::scalar(d, LaurentScalar(v)); }
  TorusElement symbol(char c, std::int64_t e) const {
    if (c == 't') return TorusElement::tpow(d, e);
    if (c == 'M') return TorusElement::M(d, e);
    return TorusElement::L(d, e);
  }
};

}  // namespace

TorusElement parse_torus(std::string_view text) {
  const OperatorTraits traits;
  return detail::ExprParser<TorusElement, OperatorTraits>(text, traits).parse_all();
}

nlohmann::json to_json(const TorusElement& x) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [k, c] : x.terms()) j.push_back({{"a", k.a}, {"b", k.b}, {"coeff", c.to_string()}});
  return j;
}

TorusElement torus_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "torus element JSON must be an array");
  std::vector<TorusElement::Term> raw;
  for (const auto& t : j) {
    raw.emplace_back(TorusKey{t.at("a").get<std::int64_t>(), t.at("b").get<std::int64_t>()},
                     LaurentScalar::parse(t.at("coeff").get<std::string>()));
  }
  return TorusElement::from_terms(SymbolicDomain{}, std::move(raw));
}

}  // namespace ajt
