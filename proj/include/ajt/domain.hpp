#pragma once

// Coefficient domains for quantum-torus elements and sequence values.
//
// Every domain is the image of Z[t^+-1] under a ring homomorphism:
//   SymbolicDomain  identity (exact Laurent polynomials)
//   RationalDomain  t -> t0 in Q, values kept as N / (a^ea b^eb) for t0 = a/b
//   ModularDomain   t -> t0 in F_p
//   EpsilonDomain   t -> -1
// so any identity built from torus arithmetic can be checked in any of them.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ajt/laurent.hpp"
#include "ajt/modarith.hpp"

namespace ajt {

struct SymbolicDomain {
  using value_type = LaurentScalar;

  value_type zero() const { return {}; }
  value_type one() const { return LaurentScalar(1); }
  value_type from_int(long c) const { return LaurentScalar(c); }
  value_type tpow(std::int64_t e) const { return LaurentScalar::tpow(e); }
  value_type lift(const LaurentScalar& x) const { return x; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  /// t^e * a
  value_type mul_tpow(const value_type& a, std::int64_t e) const { return a.shifted(e); }
  /// sum_i t^(e_i) * v_i
  value_type weighted_sum(const std::vector<std::pair<std::int64_t, value_type>>& terms) const;
  /// [n] for n >= 1
  value_type bracket(std::int64_t n) const;
  std::string render(const value_type& a) const { return a.to_string(); }
  std::string name() const { return "symbolic"; }
};

/// N / (a^ea * b^eb) with signed exponents; never reduced, so arithmetic needs no gcds
/// and multiplying by a power of t only moves the exponents.
struct ScaledRational {
  mpz_class num;
  std::int64_t ea = 0;
  std::int64_t eb = 0;
};

class RationalDomain {
 public:
  using value_type = ScaledRational;

  explicit RationalDomain(const mpq_class& t0);

  const mpq_class& t0() const { return t0_; }
  value_type zero() const { return {}; }
  value_type one() const { return {1, 0, 0}; }
  value_type from_int(long c) const { return {c, 0, 0}; }
  value_type tpow(std::int64_t e) const;
  value_type lift(const LaurentScalar& x) const;
  value_type add(const value_type& x, const value_type& y) const;
  value_type sub(const value_type& x, const value_type& y) const;
  value_type mul(const value_type& x, const value_type& y) const;
  value_type neg(const value_type& x) const { return {-x.num, x.ea, x.eb}; }
  bool is_zero(const value_type& x) const { return x.num == 0; }
  bool equal(const value_type& x, const value_type& y) const { return is_zero(sub(x, y)); }
  value_type mul_tpow(const value_type& x, std::int64_t e) const;
  value_type weighted_sum(const std::vector<std::pair<std::int64_t, value_type>>& terms) const;
  value_type bracket(std::int64_t n) const;
  mpq_class to_mpq(const value_type& x) const;
  std::string render(const value_type& x) const { return to_mpq(x).get_str(); }
  std::string name() const { return "t0=" + t0_.get_str(); }

 private:
  mpz_class apow(std::int64_t k) const;
  mpz_class bpow(std::int64_t k) const;
  value_type align(const value_type& x, std::int64_t ea, std::int64_t eb) const;

  mpq_class t0_;
  mpz_class a_;
  mpz_class b_;
};

class ModularDomain {
 public:
  using value_type = std::uint64_t;

  /// Throws ZeroBase if t0 = 0 mod p.
  ModularDomain(std::uint64_t t0, std::uint64_t p = mod::kMersenne61);

  std::uint64_t prime() const { return p_; }
  std::uint64_t t0() const { return t0_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long c) const { return mod::from_int(c, p_); }
  value_type tpow(std::int64_t e) const { return mod::spow(t0_, e, p_); }
  value_type lift(const LaurentScalar& x) const { return x.specialize_mod(t0_, p_); }
  value_type add(value_type a, value_type b) const { return mod::add(a, b, p_); }
  value_type sub(value_type a, value_type b) const { return mod::sub(a, b, p_); }
  value_type mul(value_type a, value_type b) const { return mod::mul(a, b, p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const { return mod::inv(a, p_); }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  value_type mul_tpow(value_type a, std::int64_t e) const { return mul(a, tpow(e)); }
  value_type weighted_sum(const std::vector<std::pair<std::int64_t, value_type>>& terms) const;
  value_type bracket(std::int64_t n) const;
  std::string render(value_type a) const { return std::to_string(a); }
  std::string name() const { return "mod p, t0=" + std::to_string(t0_); }

 private:
  std::uint64_t t0_;
  std::uint64_t p_;
  std::uint64_t bracket_den_inv_ = 0;  // 1/(t0^2 - t0^-2), 0 when t0^4 = 1
};

struct EpsilonDomain {
  using value_type = mpz_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long c) const { return c; }
  value_type tpow(std::int64_t e) const { return e % 2 == 0 ? 1 : -1; }
  value_type lift(const LaurentScalar& x) const { return x.epsilon(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  value_type mul_tpow(const value_type& a, std::int64_t e) const { return e % 2 == 0 ? a : value_type(-a); }
  value_type weighted_sum(const std::vector<std::pair<std::int64_t, value_type>>& terms) const {
    value_type s = 0;
    for (const auto& [e, v] : terms) s += mul_tpow(v, e);
    return s;
  }
  value_type bracket(std::int64_t n) const { return n; }
  std::string render(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "t=-1"; }
};

}  // namespace ajt
