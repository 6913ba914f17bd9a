#pragma once

// The quantum torus: finite sums  sum c_{a,b} M^a L^b  with LM = t^2 ML,
// stored in the M-before-L normal form with coefficients on the left.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ajt/domain.hpp"
#include "ajt/laurent.hpp"

namespace ajt {

/// Exponent pair of the normal-form monomial M^a L^b, ordered by (b, a).
struct TorusKey {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator<(const TorusKey& x, const TorusKey& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
  }
  friend bool operator==(const TorusKey& x, const TorusKey& y) { return x.a == y.a && x.b == y.b; }
};

template <class D>
class BasicTorus {
 public:
  using value_type = typename D::value_type;
  using Term = std::pair<TorusKey, value_type>;

  explicit BasicTorus(D domain = D{}) : domain_(std::move(domain)) {}

  static BasicTorus monomial(const D& d, value_type c, std::int64_t a, std::int64_t b) {
    BasicTorus x(d);
    if (!d.is_zero(c)) x.terms_.emplace_back(TorusKey{a, b}, std::move(c));
    return x;
  }
  static BasicTorus scalar(const D& d, value_type c) { return monomial(d, std::move(c), 0, 0); }
  static BasicTorus one(const D& d) { return scalar(d, d.one()); }
  static BasicTorus M(const D& d, std::int64_t a = 1) { return monomial(d, d.one(), a, 0); }
  static BasicTorus L(const D& d, std::int64_t b = 1) { return monomial(d, d.one(), 0, b); }
  /// t^e as a scalar element.
  static BasicTorus tpow(const D& d, std::int64_t e) { return scalar(d, d.tpow(e)); }

  /// Builds from arbitrary (key, coeff) pairs, combining duplicates.
  static BasicTorus from_terms(const D& d, std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    BasicTorus out(d);
    for (auto& t : raw) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second = d.add(out.terms_.back().second, t.second);
      } else {
        if (!out.terms_.empty() && d.is_zero(out.terms_.back().second)) out.terms_.pop_back();
        out.terms_.push_back(std::move(t));
      }
    }
    if (!out.terms_.empty() && d.is_zero(out.terms_.back().second)) out.terms_.pop_back();
    return out;
  }

  const D& domain() const noexcept { return domain_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  value_type coeff(std::int64_t a, std::int64_t b) const {
    const TorusKey k{a, b};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const TorusKey& x) { return t.first < x; });
    if (it != terms_.end() && it->first == k) return it->second;
    return domain_.zero();
  }

  BasicTorus operator-() const {
    BasicTorus r = *this;
    for (auto& t : r.terms_) t.second = domain_.neg(t.second);
    return r;
  }

  friend BasicTorus operator+(const BasicTorus& x, const BasicTorus& y) { return combine(x, y, false); }
  friend BasicTorus operator-(const BasicTorus& x, const BasicTorus& y) { return combine(x, y, true); }

  /// Skew product from the monomial rule (M^a L^b)(M^c L^d) = t^(2bc) M^(a+c) L^(b+d).
  friend BasicTorus operator*(const BasicTorus& x, const BasicTorus& y) {
    const D& d = x.domain_;
    std::map<TorusKey, value_type> acc;
    for (const auto& [kx, cx] : x.terms_) {
      for (const auto& [ky, cy] : y.terms_) {
        value_type c = d.mul_tpow(d.mul(cx, cy), 2 * kx.b * ky.a);
        const TorusKey k{kx.a + ky.a, kx.b + ky.b};
        auto it = acc.find(k);
        if (it == acc.end()) {
          acc.emplace(k, std::move(c));
        } else {
          it->second = d.add(it->second, c);
        }
      }
    }
    BasicTorus out(d);
    out.terms_.reserve(acc.size());
    for (auto& [k, c] : acc) {
      if (!d.is_zero(c)) out.terms_.emplace_back(k, std::move(c));
    }
    return out;
  }

  friend bool operator==(const BasicTorus& x, const BasicTorus& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
      if (!(x.terms_[i].first == y.terms_[i].first)) return false;
      if (!x.domain_.equal(x.terms_[i].second, y.terms_[i].second)) return false;
    }
    return true;
  }
  friend bool operator!=(const BasicTorus& x, const BasicTorus& y) { return !(x == y); }

  BasicTorus scaled(const value_type& c) const {
    BasicTorus r(domain_);
    for (const auto& [k, v] : terms_) {
      value_type p = domain_.mul(v, c);
      if (!domain_.is_zero(p)) r.terms_.emplace_back(k, std::move(p));
    }
    return r;
  }

  /// M^k L^l -> M^-k L^-l, coefficients fixed.
  BasicTorus sigma() const {
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [k, c] : terms_) raw.emplace_back(TorusKey{-k.a, -k.b}, c);
    return from_terms(domain_, std::move(raw));
  }

  /// Smallest and largest L-exponent (0, 0 for the zero element).
  std::pair<std::int64_t, std::int64_t> l_range() const {
    if (terms_.empty()) return {0, 0};
    return {terms_.front().first.b, terms_.back().first.b};
  }

  /// Mutable access used by mutation tests; keeps normal form only if the caller does.
  std::vector<Term>& mutable_terms() { return terms_; }

 private:
  static BasicTorus combine(const BasicTorus& x, const BasicTorus& y, bool subtract) {
    const D& d = x.domain_;
    BasicTorus out(d);
    out.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto i = x.terms_.begin();
    auto j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
      if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
        out.terms_.push_back(*i++);
      } else if (i == x.terms_.end() || j->first < i->first) {
        out.terms_.emplace_back(j->first, subtract ? d.neg(j->second) : j->second);
        ++j;
      } else {
        value_type c = subtract ? d.sub(i->second, j->second) : d.add(i->second, j->second);
        if (!d.is_zero(c)) out.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  D domain_;
  std::vector<Term> terms_;
};

using TorusElement = BasicTorus<SymbolicDomain>;

template <class D>
BasicTorus<D> pow(const BasicTorus<D>& x, unsigned n) {
  BasicTorus<D> result = BasicTorus<D>::one(x.domain());
  BasicTorus<D> base = x;
  while (n != 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return result;
}

template <class D>
BasicTorus<D> sigma(const BasicTorus<D>& x) {
  return x.sigma();
}

/// Image of a symbolic element under the coefficient homomorphism into `d`.
template <class D>
BasicTorus<D> specialize(const TorusElement& x, const D& d) {
  std::vector<typename BasicTorus<D>::Term> raw;
  raw.reserve(x.size());
  for (const auto& [k, c] : x.terms()) raw.emplace_back(k, d.lift(c));
  return BasicTorus<D>::from_terms(d, std::move(raw));
}

/// (x f)(n) = sum c_{a,b} t^(2an) f(n+b); f is any callable n -> D::value_type.
template <class D, class F>
typename D::value_type apply_to_sequence(const BasicTorus<D>& x, F&& f, std::int64_t n) {
  // Terms sharing an L-exponent share f(n+b): sum their scalars first.
  using V = typename D::value_type;
  const D& d = x.domain();
  const auto& terms = x.terms();
  std::vector<std::pair<std::int64_t, V>> outer;
  std::vector<std::pair<std::int64_t, V>> inner;
  for (std::size_t i = 0; i < terms.size();) {
    const std::int64_t b = terms[i].first.b;
    inner.clear();
    for (; i < terms.size() && terms[i].first.b == b; ++i) inner.emplace_back(2 * terms[i].first.a * n, terms[i].second);
    V scalar = d.weighted_sum(inner);
    if (!d.is_zero(scalar)) outer.emplace_back(0, d.mul(scalar, f(n + b)));
  }
  return d.weighted_sum(outer);
}

/// "(1) M^2 L^2 + (-t^-12) M^-10 L^0", terms sorted by (b, a).
std::string to_string(const TorusElement& x);
/// Parses the operator language: sums of products of integers, t^e, M^a, L^b and
/// parenthesized subexpressions; products are taken in the written order.
TorusElement parse_torus(std::string_view text);
nlohmann::json to_json(const TorusElement& x);
TorusElement torus_from_json(const nlohmann::json& j);

}  // namespace ajt
