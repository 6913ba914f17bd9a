#pragma once

// Exact Laurent polynomials in t over arbitrary-precision integers, and the
// fraction-field wrapper used by the exponential-polynomial fitter.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ajt {

/// Element of Z[t, t^-1], stored as terms sorted by exponent with no zero coefficients.
class LaurentScalar {
 public:
  using Term = std::pair<std::int64_t, mpz_class>;

  LaurentScalar() = default;
  LaurentScalar(long c);  // NOLINT(google-explicit-constructor): constants are scalars
  explicit LaurentScalar(const mpz_class& c);

  static LaurentScalar monomial(const mpz_class& c, std::int64_t e);
  /// t^e
  static LaurentScalar tpow(std::int64_t e) { return monomial(1, e); }
  /// Accepts unsorted input with repeated exponents and zero coefficients.
  static LaurentScalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;
  mpz_class coeff(std::int64_t e) const;

  /// Multiplication by c * t^e.
  LaurentScalar shifted(std::int64_t e) const;
  LaurentScalar scaled(const mpz_class& c) const;
  /// x(t) -> x(t^k) for k != 0.
  LaurentScalar substitute_power(std::int64_t k) const;

  LaurentScalar operator-() const;
  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar& operator*=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.terms_ == b.terms_; }

  /// Value at t = -1.
  mpz_class epsilon() const;
  /// Exact value at a nonzero rational; throws ZeroBase for t0 = 0.
  mpq_class specialize(const mpq_class& t0) const;
  /// Value modulo a prime at t = t0 (t0 invertible mod p).
  std::uint64_t specialize_mod(std::uint64_t t0, std::uint64_t p) const;

  /// Canonical rendering in increasing exponent order, e.g. "-t^-18 + t^-10 + t^-6 + t^-2".
  std::string to_string() const;
  static LaurentScalar parse(std::string_view text);

 private:
  explicit LaurentScalar(std::vector<Term> sorted_terms, int) : terms_(std::move(sorted_terms)) {}
  std::vector<Term> terms_;
};

LaurentScalar pow(const LaurentScalar& x, unsigned n);

/// Exact division q = x / y in Z[t^+-1]; returns false when y does not divide x.
bool exact_divide(const LaurentScalar& x, const LaurentScalar& y, LaurentScalar& q);

/// n-th cyclotomic polynomial (monic, constant term at t^0).
const LaurentScalar& cyclotomic(std::int64_t n);

/// Accumulates many shifted, scaled Laurent polynomials into a dense buffer.
class LaurentAccumulator {
 public:
  void add(const LaurentScalar& x, std::int64_t shift = 0);
  void sub(const LaurentScalar& x, std::int64_t shift = 0);
  void addmul(const LaurentScalar& x, const mpz_class& c, std::int64_t shift = 0);
  LaurentScalar take();

 private:
  void reserve_range(std::int64_t lo, std::int64_t hi);
  std::int64_t lo_ = 0;
  std::vector<mpz_class> dense_;
};

/// Element of Q(t) as numerator/denominator; equality is cross-multiplication.
class RatScalar {
 public:
  RatScalar() : num_(0), den_(1) {}
  RatScalar(LaurentScalar num);  // NOLINT(google-explicit-constructor)
  RatScalar(LaurentScalar num, LaurentScalar den);

  const LaurentScalar& num() const noexcept { return num_; }
  const LaurentScalar& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the denominator divides the numerator in Z[t^+-1].
  bool is_laurent() const;

  RatScalar operator-() const { return RatScalar(-num_, den_); }
  friend RatScalar operator+(const RatScalar& a, const RatScalar& b);
  friend RatScalar operator-(const RatScalar& a, const RatScalar& b);
  friend RatScalar operator*(const RatScalar& a, const RatScalar& b);
  friend RatScalar operator/(const RatScalar& a, const RatScalar& b);
  friend bool operator==(const RatScalar& a, const RatScalar& b);

  /// Removes cyclotomic factors of t^d - 1 (d in `orders`) shared by numerator and denominator,
  /// plus common monomial and integer content.
  RatScalar reduced_by_cyclotomics(const std::vector<std::int64_t>& orders) const;

  std::string to_string() const;

 private:
  void normalize_units();
  LaurentScalar num_;
  LaurentScalar den_;
};

/// Parses "p" or "p/q" into an exact rational.
mpq_class parse_rational(std::string_view text);
std::string rational_to_string(const mpq_class& q);

}  // namespace ajt
