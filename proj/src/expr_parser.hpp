#pragma once

// Small recursive-descent parser shared by the scalar and operator text formats.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*          juxtaposition multiplies, left to right
//   factor := integer | symbol ['^' exponent] | '(' expr ')'
//   exponent := signed integer, optionally wrapped in '{ }'

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ajt/error.hpp"

namespace ajt::detail {

template <class Value, class Traits>
class ExprParser {
 public:
  ExprParser(std::string_view text, const Traits& traits) : text_(text), traits_(traits) {}

  Value parse_all() {
    Value v = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError,
                msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || traits_.is_symbol(c);
  }

  Value parse_expr() {
    skip_ws();
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Value acc = parse_term();
    if (negate) acc = -acc;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + parse_term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Value parse_term() {
    Value acc = parse_factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * parse_factor();
      } else if (starts_factor()) {
        acc = acc * parse_factor();
      } else {
        return acc;
      }
    }
  }

  std::string read_digits() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits.push_back(text_[pos_++]);
    }
    return digits;
  }

  std::int64_t parse_exponent() {
    skip_ws();
    const bool braced = peek('{');
    if (braced) ++pos_;
    skip_ws();
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    } else if (peek('+')) {
      ++pos_;
    }
    skip_ws();
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected exponent");
    std::int64_t e = 0;
    try {
      e = std::stoll(digits);
    } catch (const std::exception&) {
      fail("exponent out of range");
    }
    if (braced) {
      if (!peek('}')) fail("expected '}'");
      ++pos_;
    }
    return neg ? -e : e;
  }

  Value parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = parse_expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return traits_.integer(mpz_class(read_digits()));
    }
    if (traits_.is_symbol(c)) {
      ++pos_;
      std::int64_t e = 1;
      if (peek('^')) {
        ++pos_;
        e = parse_exponent();
      }
      return traits_.symbol(c, e);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Traits& traits_;
  std::size_t pos_ = 0;
};

}  // namespace ajt::detail
