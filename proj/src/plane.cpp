#include "ajt/plane.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "ajt/error.hpp"

namespace ajt {

namespace {

struct KeyHash {
  std::size_t operator()(const TorusKey& k) const noexcept {
    const auto a = static_cast<std::uint64_t>(k.a);
    const auto b = static_cast<std::uint64_t>(k.b);
    return static_cast<std::size_t>((a * 0x9E3779B97F4A7C15ULL) ^ (b + 0x632BE59BD9B4E019ULL + (a << 6)));
  }
};

}  // namespace

PlaneCurvePoly::PlaneCurvePoly(long c) {
  if (c != 0) terms_.emplace_back(TorusKey{0, 0}, mpz_class(c));
}

PlaneCurvePoly PlaneCurvePoly::monomial(const mpz_class& c, std::int64_t a, std::int64_t b) {
  PlaneCurvePoly r;
  if (c != 0) r.terms_.emplace_back(TorusKey{a, b}, c);
  return r;
}

PlaneCurvePoly PlaneCurvePoly::from_terms(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  PlaneCurvePoly out;
  out.terms_.reserve(raw.size());
  for (auto& t : raw) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
    } else {
      if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
  return out;
}

mpz_class PlaneCurvePoly::coeff(std::int64_t a, std::int64_t b) const {
  const TorusKey k{a, b};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const TorusKey& x) { return t.first < x; });
  if (it != terms_.end() && it->first == k) return it->second;
  return 0;
}

PlaneCurvePoly PlaneCurvePoly::operator-() const {
  PlaneCurvePoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

std::vector<PlaneCurvePoly::Term> merge(const std::vector<PlaneCurvePoly::Term>& x,
                                        const std::vector<PlaneCurvePoly::Term>& y, bool subtract) {
  std::vector<PlaneCurvePoly::Term> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? mpz_class(-j->second) : j->second);
      ++j;
    } else {
      mpz_class c = subtract ? mpz_class(i->second - j->second) : mpz_class(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PlaneCurvePoly operator+(const PlaneCurvePoly& x, const PlaneCurvePoly& y) {
  PlaneCurvePoly r;
  r.terms_ = merge(x.terms_, y.terms_, false);
  return r;
}

PlaneCurvePoly operator-(const PlaneCurvePoly& x, const PlaneCurvePoly& y) {
  PlaneCurvePoly r;
  r.terms_ = merge(x.terms_, y.terms_, true);
  return r;
}

PlaneCurvePoly operator*(const PlaneCurvePoly& x, const PlaneCurvePoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.size() == 1) return y.times_monomial(x.terms_[0].second, x.terms_[0].first.a, x.terms_[0].first.b);
  if (y.size() == 1) return x.times_monomial(y.terms_[0].second, y.terms_[0].first.a, y.terms_[0].first.b);
  std::unordered_map<TorusKey, mpz_class, KeyHash> acc;
  acc.reserve(std::min<std::size_t>(x.size() * y.size(), 1U << 24));
  for (const auto& [kx, cx] : x.terms_) {
    for (const auto& [ky, cy] : y.terms_) {
      mpz_class& slot = acc[TorusKey{kx.a + ky.a, kx.b + ky.b}];
      mpz_addmul(slot.get_mpz_t(), cx.get_mpz_t(), cy.get_mpz_t());
    }
  }
  std::vector<PlaneCurvePoly::Term> raw;
  raw.reserve(acc.size());
  for (auto& [k, c] : acc) {
    if (c != 0) raw.emplace_back(k, std::move(c));
  }
  return PlaneCurvePoly::from_terms(std::move(raw));
}

PlaneCurvePoly PlaneCurvePoly::times_monomial(const mpz_class& c, std::int64_t a, std::int64_t b) const {
  PlaneCurvePoly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // shifting by a fixed (a, b) preserves the (b, a) lexicographic order
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(TorusKey{k.a + a, k.b + b}, v * c);
  return r;
}

PlaneCurvePoly PlaneCurvePoly::sigma() const {
  PlaneCurvePoly r;
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    r.terms_.emplace_back(TorusKey{-it->first.a, -it->first.b}, it->second);
  }
  return r;
}

std::optional<std::tuple<mpz_class, std::int64_t, std::int64_t>> PlaneCurvePoly::as_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return std::make_tuple(terms_[0].second, terms_[0].first.a, terms_[0].first.b);
}

std::string PlaneCurvePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    const bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const mpz_class mag = abs(c);
    std::string mono;
    if (k.b != 0) mono += k.b == 1 ? "L" : "L^" + std::to_string(k.b);
    if (k.a != 0) {
      if (!mono.empty()) mono += "*";
      mono += k.a == 1 ? "M" : "M^" + std::to_string(k.a);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

PlaneCurvePoly pow(const PlaneCurvePoly& x, unsigned n) {
  PlaneCurvePoly result(1);
  PlaneCurvePoly base = x;
  while (n != 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return result;
}

namespace {

struct Box {
  std::int64_t amin, amax, bmin, bmax;
};

Box bounding_box(const PlaneCurvePoly& x) {
  Box box{x.terms()[0].first.a, x.terms()[0].first.a, x.terms()[0].first.b, x.terms()[0].first.b};
  for (const auto& [k, c] : x.terms()) {
    box.amin = std::min(box.amin, k.a);
    box.amax = std::max(box.amax, k.a);
    box.bmin = std::min(box.bmin, k.b);
    box.bmax = std::max(box.bmax, k.b);
  }
  return box;
}

}  // namespace

std::optional<PlaneCurvePoly> plane_exact_divide(const PlaneCurvePoly& x, const PlaneCurvePoly& y) {
  if (y.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by the zero polynomial");
  if (x.is_zero()) return PlaneCurvePoly();
  const auto& [ylead_key, ylead] = y.terms().back();
  // Fast path: monomial quotient.
  {
    const auto& [xlead_key, xlead] = x.terms().back();
    if (mpz_divisible_p(xlead.get_mpz_t(), ylead.get_mpz_t()) && x.size() == y.size()) {
      const mpz_class c = xlead / ylead;
      const std::int64_t a = xlead_key.a - ylead_key.a;
      const std::int64_t b = xlead_key.b - ylead_key.b;
      if (y.times_monomial(c, a, b) == x) return PlaneCurvePoly::monomial(c, a, b);
    }
  }
  // Newton polytopes add under multiplication, so quotient exponents lie in this box.
  const Box bx = bounding_box(x);
  const Box by = bounding_box(y);
  const Box bq{bx.amin - by.amin, bx.amax - by.amax, bx.bmin - by.bmin, bx.bmax - by.bmax};
  if (bq.amin > bq.amax || bq.bmin > bq.bmax) return std::nullopt;
  std::map<TorusKey, mpz_class> rem;
  for (const auto& [k, c] : x.terms()) rem.emplace(k, c);
  std::vector<PlaneCurvePoly::Term> quot;
  mpz_class qc;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const TorusKey qk{top->first.a - ylead_key.a, top->first.b - ylead_key.b};
    if (qk.a < bq.amin || qk.a > bq.amax || qk.b < bq.bmin || qk.b > bq.bmax) return std::nullopt;
    if (!mpz_divisible_p(top->second.get_mpz_t(), ylead.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), ylead.get_mpz_t());
    quot.emplace_back(qk, qc);
    for (const auto& [k, c] : y.terms()) {
      const TorusKey key{k.a + qk.a, k.b + qk.b};
      auto it = rem.find(key);
      if (it == rem.end()) {
        rem.emplace(key, mpz_class(-qc * c));
      } else {
        mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), c.get_mpz_t());
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return PlaneCurvePoly::from_terms(std::move(quot));
}

PlaneCurvePoly epsilon(const TorusElement& x) {
  std::vector<PlaneCurvePoly::Term> raw;
  raw.reserve(x.size());
  for (const auto& [k, c] : x.terms()) raw.emplace_back(k, c.epsilon());
  return PlaneCurvePoly::from_terms(std::move(raw));
}

PlaneCurvePoly to_plane(const BasicTorus<EpsilonDomain>& x) {
  std::vector<PlaneCurvePoly::Term> raw;
  raw.reserve(x.size());
  for (const auto& [k, c] : x.terms()) raw.emplace_back(k, c);
  return PlaneCurvePoly::from_terms(std::move(raw));
}

}  // namespace ajt
