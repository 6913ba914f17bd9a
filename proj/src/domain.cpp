#include "ajt/domain.hpp"

#include <algorithm>

#include "ajt/error.hpp"

namespace ajt {

// ---------------------------------------------------------------- symbolic

SymbolicDomain::value_type SymbolicDomain::weighted_sum(
    const std::vector<std::pair<std::int64_t, value_type>>& terms) const {
  LaurentAccumulator acc;
  for (const auto& [e, v] : terms) acc.add(v, e);
  return acc.take();
}

SymbolicDomain::value_type SymbolicDomain::bracket(std::int64_t n) const {
  std::vector<LaurentScalar::Term> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = n - 1; i >= 0; --i) terms.emplace_back(2 * (n - 1 - 2 * i), 1);
  return LaurentScalar::from_terms(std::move(terms));
}

// ---------------------------------------------------------------- rational

RationalDomain::RationalDomain(const mpq_class& t0) : t0_(t0) {
  if (t0_ == 0) throw Error(ErrorKind::ZeroBase, "specialization point t0 must be nonzero");
  t0_.canonicalize();
  a_ = t0_.get_num();
  b_ = t0_.get_den();
}

mpz_class RationalDomain::apow(std::int64_t k) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), a_.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

mpz_class RationalDomain::bpow(std::int64_t k) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b_.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

ScaledRational RationalDomain::align(const value_type& x, std::int64_t ea, std::int64_t eb) const {
  ScaledRational r{x.num, ea, eb};
  if (ea > x.ea) r.num *= apow(ea - x.ea);
  if (eb > x.eb) r.num *= bpow(eb - x.eb);
  return r;
}

ScaledRational RationalDomain::tpow(std::int64_t e) const { return {1, -e, e}; }

ScaledRational RationalDomain::mul_tpow(const value_type& x, std::int64_t e) const {
  if (x.num == 0) return {};
  return {x.num, x.ea - e, x.eb + e};
}

ScaledRational RationalDomain::add(const value_type& x, const value_type& y) const {
  if (x.num == 0) return y;
  if (y.num == 0) return x;
  const std::int64_t ea = std::max(x.ea, y.ea);
  const std::int64_t eb = std::max(x.eb, y.eb);
  ScaledRational r = align(x, ea, eb);
  r.num += align(y, ea, eb).num;
  return r;
}

ScaledRational RationalDomain::sub(const value_type& x, const value_type& y) const {
  return add(x, neg(y));
}

ScaledRational RationalDomain::mul(const value_type& x, const value_type& y) const {
  if (x.num == 0 || y.num == 0) return {};
  return {x.num * y.num, x.ea + y.ea, x.eb + y.eb};
}

ScaledRational RationalDomain::weighted_sum(
    const std::vector<std::pair<std::int64_t, value_type>>& terms) const {
  std::vector<ScaledRational> level;
  level.reserve(terms.size());
  for (const auto& [e, v] : terms) {
    if (v.num != 0) level.push_back(mul_tpow(v, e));
  }
  if (level.empty()) return {};
  // Pairwise sums over neighbours in t-degree: alignment factors stay small near the
  // leaves and the huge operands are touched only log(n) times.
  std::sort(level.begin(), level.end(),
            [](const ScaledRational& x, const ScaledRational& y) { return x.eb - x.ea < y.eb - y.ea; });
  while (level.size() > 1) {
    std::vector<ScaledRational> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(add(level[i], level[i + 1]));
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

ScaledRational RationalDomain::bracket(std::int64_t n) const {
  std::vector<std::pair<std::int64_t, value_type>> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) terms.emplace_back(2 * (n - 1 - 2 * i), one());
  return weighted_sum(terms);
}

ScaledRational RationalDomain::lift(const LaurentScalar& x) const {
  std::vector<std::pair<std::int64_t, value_type>> terms;
  terms.reserve(x.size());
  for (const auto& [e, c] : x.terms()) terms.emplace_back(e, ScaledRational{c, 0, 0});
  return weighted_sum(terms);
}

mpq_class RationalDomain::to_mpq(const value_type& x) const {
  mpz_class num = x.num;
  mpz_class den = 1;
  (x.ea >= 0 ? den : num) *= apow(x.ea >= 0 ? x.ea : -x.ea);
  (x.eb >= 0 ? den : num) *= bpow(x.eb >= 0 ? x.eb : -x.eb);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- modular

ModularDomain::ModularDomain(std::uint64_t t0, std::uint64_t p) : t0_(t0 % p), p_(p) {
  if (t0_ == 0) throw Error(ErrorKind::ZeroBase, "specialization point t0 is zero mod p");
  const std::uint64_t t2 = mul(t0_, t0_);
  const std::uint64_t den = sub(t2, inv(t2));
  if (den != 0) bracket_den_inv_ = inv(den);
}

std::uint64_t ModularDomain::weighted_sum(
    const std::vector<std::pair<std::int64_t, value_type>>& terms) const {
  std::uint64_t s = 0;
  for (const auto& [e, v] : terms) s = add(s, mul(v, tpow(e)));
  return s;
}

std::uint64_t ModularDomain::bracket(std::int64_t n) const {
  if (bracket_den_inv_ != 0) {
    return mul(sub(tpow(2 * n), tpow(-2 * n)), bracket_den_inv_);
  }
  std::uint64_t s = 0;
  for (std::int64_t i = 0; i < n; ++i) s = add(s, tpow(2 * (n - 1 - 2 * i)));
  return s;
}

}  // namespace ajt
