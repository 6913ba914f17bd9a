#include "ajt/laurent.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "ajt/error.hpp"
#include "ajt/modarith.hpp"
#include "expr_parser.hpp"

namespace ajt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroBase: return "ZeroBase";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::InvalidKnot: return "InvalidKnot";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InadmissibleParams: return "InadmissibleParams";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DegenerateNodes: return "DegenerateNodes";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SequenceUndefined: return "SequenceUndefined";
    case ErrorKind::ResourceBound: return "ResourceBound";
  }
  return "Error";
}

// ---------------------------------------------------------------- LaurentScalar

LaurentScalar::LaurentScalar(long c) {
  if (c != 0) terms_.emplace_back(0, mpz_class(c));
}

LaurentScalar::LaurentScalar(const mpz_class& c) {
  if (c != 0) terms_.emplace_back(0, c);
}

LaurentScalar LaurentScalar::monomial(const mpz_class& c, std::int64_t e) {
  LaurentScalar r;
  if (c != 0) r.terms_.emplace_back(e, c);
  return r;
}

LaurentScalar LaurentScalar::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  return LaurentScalar(std::move(out), 0);
}

std::int64_t LaurentScalar::min_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }
std::int64_t LaurentScalar::max_exponent() const { return terms_.empty() ? 0 : terms_.back().first; }

mpz_class LaurentScalar::coeff(std::int64_t e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, std::int64_t x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

LaurentScalar LaurentScalar::shifted(std::int64_t e) const {
  LaurentScalar r = *this;
  for (auto& t : r.terms_) t.first += e;
  return r;
}

LaurentScalar LaurentScalar::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  LaurentScalar r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

LaurentScalar LaurentScalar::substitute_power(std::int64_t k) const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.first *= k;
  if (k < 0) std::reverse(out.begin(), out.end());
  return LaurentScalar(std::move(out), 0);
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Subtract>
std::vector<LaurentScalar::Term> merge_terms(const std::vector<LaurentScalar::Term>& a,
                                             const std::vector<LaurentScalar::Term>& b) {
  std::vector<LaurentScalar::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, Subtract ? mpz_class(-j->second) : j->second);
      ++j;
    } else {
      mpz_class c = Subtract ? mpz_class(i->second - j->second) : mpz_class(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge_terms<false>(terms_, o.terms_);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
  if (o.is_zero()) return *this;
  terms_ = merge_terms<true>(terms_, o.terms_);
  return *this;
}

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) { return *this = *this * o; }

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial()) return b.scaled(a.terms_[0].second).shifted(a.terms_[0].first);
  if (b.is_monomial()) return a.scaled(b.terms_[0].second).shifted(b.terms_[0].first);
  const std::int64_t lo = a.min_exponent() + b.min_exponent();
  const std::int64_t hi = a.max_exponent() + b.max_exponent();
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  const std::uint64_t products = static_cast<std::uint64_t>(a.size()) * b.size();
  if (span <= 4 * products + 64 || span <= (1U << 20)) {
    std::vector<mpz_class> dense(span);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        mpz_addmul(dense[static_cast<std::size_t>(ea + eb - lo)].get_mpz_t(), ca.get_mpz_t(),
                   cb.get_mpz_t());
      }
    }
    std::vector<LaurentScalar::Term> out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0) out.emplace_back(lo + static_cast<std::int64_t>(i), std::move(dense[i]));
    }
    return LaurentScalar(std::move(out), 0);
  }
  std::vector<LaurentScalar::Term> raw;
  raw.reserve(products);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) raw.emplace_back(ea + eb, ca * cb);
  }
  return LaurentScalar::from_terms(std::move(raw));
}

mpz_class LaurentScalar::epsilon() const {
  mpz_class s = 0;
  for (const auto& [e, c] : terms_) {
    if (e % 2 == 0) {
      s += c;
    } else {
      s -= c;
    }
  }
  return s;
}

mpq_class LaurentScalar::specialize(const mpq_class& t0) const {
  if (t0 == 0) throw Error(ErrorKind::ZeroBase, "cannot specialize a Laurent polynomial at t = 0");
  if (is_zero()) return 0;
  const mpz_class& a = t0.get_num();
  const mpz_class& b = t0.get_den();
  const std::int64_t emin = min_exponent();
  const std::int64_t emax = max_exponent();
  // W = sum c_e a^(e-emin) b^(emax-e), accumulated from the top exponent down.
  mpz_class w = terms_.back().second;
  mpz_class bpow = 1;
  mpz_class step;
  for (auto it = terms_.rbegin() + 1; it != terms_.rend(); ++it) {
    const auto gap = static_cast<unsigned long>((it - 1)->first - it->first);
    mpz_pow_ui(step.get_mpz_t(), a.get_mpz_t(), gap);
    w *= step;
    mpz_pow_ui(step.get_mpz_t(), b.get_mpz_t(), gap);
    bpow *= step;
    mpz_addmul(w.get_mpz_t(), it->second.get_mpz_t(), bpow.get_mpz_t());
  }
  // value = W * a^emin / b^emax
  mpq_class r;
  mpz_class apow;
  mpz_pow_ui(apow.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(std::abs(emin)));
  mpz_class bmax;
  mpz_pow_ui(bmax.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(std::abs(emax)));
  mpz_class n = w;
  mpz_class d = 1;
  if (emin >= 0) {
    n *= apow;
  } else {
    d *= apow;
  }
  if (emax >= 0) {
    d *= bmax;
  } else {
    n *= bmax;
  }
  r = mpq_class(n, d);
  r.canonicalize();
  return r;
}

std::uint64_t LaurentScalar::specialize_mod(std::uint64_t t0, std::uint64_t p) const {
  if (is_zero()) return 0;
  std::uint64_t acc = mod::from_mpz(terms_.back().second, p);
  for (auto it = terms_.rbegin() + 1; it != terms_.rend(); ++it) {
    const auto gap = static_cast<std::uint64_t>((it - 1)->first - it->first);
    acc = mod::add(mod::mul(acc, mod::pow(t0, gap, p), p), mod::from_mpz(it->second, p), p);
  }
  return mod::mul(acc, mod::spow(t0, min_exponent(), p), p);
}

std::string LaurentScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const mpz_class mag = abs(c);
    if (e == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "t^" + std::to_string(e);
    }
  }
  return out;
}

namespace {

struct ScalarTraits {
  bool is_symbol(char c) const { return c == 't'; }
  LaurentScalar integer(const mpz_class& v) const { return LaurentScalar(v); }
  LaurentScalar symbol(char, std::int64_t e) const { return LaurentScalar::tpow(e); }
};

}  // namespace

LaurentScalar LaurentScalar::parse(std::string_view text) {
  ScalarTraits traits;
  return detail::ExprParser<LaurentScalar, ScalarTraits>(text, traits).parse_all();
}

LaurentScalar pow(const LaurentScalar& x, unsigned n) {
  LaurentScalar result(1);
  LaurentScalar base = x;
  while (n != 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return result;
}

bool exact_divide(const LaurentScalar& x, const LaurentScalar& y, LaurentScalar& q) {
  if (y.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by the zero Laurent polynomial");
  if (x.is_zero()) {
    q = LaurentScalar();
    return true;
  }
  if (y.is_monomial()) {
    const mpz_class& c = y.terms()[0].second;
    std::vector<LaurentScalar::Term> out;
    out.reserve(x.size());
    for (const auto& [e, cx] : x.terms()) {
      if (!mpz_divisible_p(cx.get_mpz_t(), c.get_mpz_t())) return false;
      out.emplace_back(e - y.terms()[0].first, mpz_class(cx / c));
    }
    q = LaurentScalar::from_terms(std::move(out));
    return true;
  }
  const std::int64_t ylo = y.min_exponent();
  const std::int64_t yhi = y.max_exponent();
  const std::int64_t ydeg = yhi - ylo;
  const std::int64_t xlo = x.min_exponent();
  const std::int64_t xhi = x.max_exponent();
  if (xhi - xlo < ydeg) return false;
  std::vector<mpz_class> rem(static_cast<std::size_t>(xhi - xlo + 1));
  for (const auto& [e, c] : x.terms()) rem[static_cast<std::size_t>(e - xlo)] = c;
  const mpz_class& lead = y.terms().back().second;
  std::vector<LaurentScalar::Term> quot;
  mpz_class qc;
  for (std::int64_t top = xhi - xlo; top >= ydeg; --top) {
    mpz_class& r = rem[static_cast<std::size_t>(top)];
    if (r == 0) continue;
    if (!mpz_divisible_p(r.get_mpz_t(), lead.get_mpz_t())) return false;
    mpz_divexact(qc.get_mpz_t(), r.get_mpz_t(), lead.get_mpz_t());
    const std::int64_t shift = top - ydeg;  // quotient exponent relative to xlo - ylo
    for (const auto& [e, c] : y.terms()) {
      mpz_submul(rem[static_cast<std::size_t>(shift + (e - ylo))].get_mpz_t(), qc.get_mpz_t(),
                 c.get_mpz_t());
    }
    quot.emplace_back(shift + xlo - ylo, qc);
  }
  for (std::int64_t i = 0; i < ydeg; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  }
  q = LaurentScalar::from_terms(std::move(quot));
  return true;
}

const LaurentScalar& cyclotomic(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, LaurentScalar> cache;
  if (n <= 0) throw Error(ErrorKind::InvalidParams, "cyclotomic order must be positive");
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  LaurentScalar poly = LaurentScalar::tpow(n) - LaurentScalar(1);
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    LaurentScalar q;
    exact_divide(poly, cyclotomic(d), q);
    poly = std::move(q);
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(poly)).first->second;
}

// ---------------------------------------------------------------- accumulator

void LaurentAccumulator::reserve_range(std::int64_t lo, std::int64_t hi) {
  if (dense_.empty()) {
    lo_ = lo;
    dense_.resize(static_cast<std::size_t>(hi - lo + 1));
    return;
  }
  const std::int64_t cur_hi = lo_ + static_cast<std::int64_t>(dense_.size()) - 1;
  if (lo < lo_) {
    std::vector<mpz_class> grown(static_cast<std::size_t>(std::max(hi, cur_hi) - lo + 1));
    for (std::size_t i = 0; i < dense_.size(); ++i) grown[i + static_cast<std::size_t>(lo_ - lo)].swap(dense_[i]);
    dense_.swap(grown);
    lo_ = lo;
  } else if (hi > cur_hi) {
    dense_.resize(static_cast<std::size_t>(hi - lo_ + 1));
  }
}

void LaurentAccumulator::add(const LaurentScalar& x, std::int64_t shift) {
  if (x.is_zero()) return;
  reserve_range(x.min_exponent() + shift, x.max_exponent() + shift);
  for (const auto& [e, c] : x.terms()) dense_[static_cast<std::size_t>(e + shift - lo_)] += c;
}

void LaurentAccumulator::sub(const LaurentScalar& x, std::int64_t shift) {
  if (x.is_zero()) return;
  reserve_range(x.min_exponent() + shift, x.max_exponent() + shift);
  for (const auto& [e, c] : x.terms()) dense_[static_cast<std::size_t>(e + shift - lo_)] -= c;
}

void LaurentAccumulator::addmul(const LaurentScalar& x, const mpz_class& c, std::int64_t shift) {
  if (x.is_zero() || c == 0) return;
  reserve_range(x.min_exponent() + shift, x.max_exponent() + shift);
  for (const auto& [e, cx] : x.terms()) {
    mpz_addmul(dense_[static_cast<std::size_t>(e + shift - lo_)].get_mpz_t(), cx.get_mpz_t(),
               c.get_mpz_t());
  }
}

LaurentScalar LaurentAccumulator::take() {
  std::vector<LaurentScalar::Term> out;
  for (std::size_t i = 0; i < dense_.size(); ++i) {
    if (dense_[i] != 0) out.emplace_back(lo_ + static_cast<std::int64_t>(i), std::move(dense_[i]));
  }
  dense_.clear();
  lo_ = 0;
  return LaurentScalar::from_terms(std::move(out));
}

// ---------------------------------------------------------------- RatScalar

RatScalar::RatScalar(LaurentScalar num) : num_(std::move(num)), den_(1) {}

RatScalar::RatScalar(LaurentScalar num, LaurentScalar den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::ZeroDivisor, "RatScalar with zero denominator");
  normalize_units();
}

void RatScalar::normalize_units() {
  if (num_.is_zero()) {
    den_ = LaurentScalar(1);
    return;
  }
  const std::int64_t shift = -den_.min_exponent();
  num_ = num_.shifted(shift);
  den_ = den_.shifted(shift);
  mpz_class g = 0;
  for (const auto& [e, c] : num_.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  for (const auto& [e, c] : den_.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (den_.terms().back().second < 0) g = -g;
  if (g != 1) {
    LaurentScalar q;
    exact_divide(num_, LaurentScalar(g), q);
    num_ = std::move(q);
    exact_divide(den_, LaurentScalar(g), q);
    den_ = std::move(q);
  }
  if (den_.is_monomial()) {
    // den is now 1 after unit normalization
    den_ = LaurentScalar(1);
  }
}

bool RatScalar::is_laurent() const {
  LaurentScalar q;
  return exact_divide(num_, den_, q);
}

RatScalar operator+(const RatScalar& a, const RatScalar& b) {
  if (a.den_ == b.den_) return RatScalar(a.num_ + b.num_, a.den_);
  return RatScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatScalar operator-(const RatScalar& a, const RatScalar& b) { return a + (-b); }

RatScalar operator*(const RatScalar& a, const RatScalar& b) {
  return RatScalar(a.num_ * b.num_, a.den_ * b.den_);
}

RatScalar operator/(const RatScalar& a, const RatScalar& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by zero in Q(t)");
  return RatScalar(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatScalar& a, const RatScalar& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

namespace {

// Remainder of x modulo Phi_e, computed through x mod (t^e - 1); zero iff Phi_e | x.
bool divisible_by_cyclotomic(const LaurentScalar& x, std::int64_t e) {
  std::vector<mpz_class> folded(static_cast<std::size_t>(e));
  for (const auto& [exp, c] : x.terms()) {
    std::int64_t r = exp % e;
    if (r < 0) r += e;
    folded[static_cast<std::size_t>(r)] += c;
  }
  const LaurentScalar& phi = cyclotomic(e);
  const std::int64_t deg = phi.max_exponent();
  for (std::int64_t top = e - 1; top >= deg; --top) {
    mpz_class lead = folded[static_cast<std::size_t>(top)];
    if (lead == 0) continue;
    for (const auto& [pe, pc] : phi.terms()) {
      mpz_submul(folded[static_cast<std::size_t>(top - deg + pe)].get_mpz_t(), lead.get_mpz_t(),
                 pc.get_mpz_t());
    }
  }
  for (std::int64_t i = 0; i < deg; ++i) {
    if (folded[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

}  // namespace

RatScalar RatScalar::reduced_by_cyclotomics(const std::vector<std::int64_t>& orders) const {
  std::set<std::int64_t> divisors;
  for (std::int64_t d : orders) {
    d = std::abs(d);
    for (std::int64_t e = 1; e * e <= d; ++e) {
      if (d % e == 0) {
        divisors.insert(e);
        divisors.insert(d / e);
      }
    }
  }
  LaurentScalar num = num_;
  LaurentScalar den = den_;
  for (std::int64_t e : divisors) {
    while (!num.is_zero() && den.max_exponent() > den.min_exponent() &&
           divisible_by_cyclotomic(den, e) && divisible_by_cyclotomic(num, e)) {
      LaurentScalar qn;
      LaurentScalar qd;
      if (!exact_divide(num, cyclotomic(e), qn) || !exact_divide(den, cyclotomic(e), qd)) break;
      num = std::move(qn);
      den = std::move(qd);
    }
  }
  return RatScalar(std::move(num), std::move(den));
}

std::string RatScalar::to_string() const {
  if (den_ == LaurentScalar(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::ParseError, "not a rational number: \"" + std::string(text) + "\"");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace ajt
