#pragma once

// Commutative Laurent polynomials in M, L with integer coefficients: the ring
// where A-polynomials and t = -1 images of torus elements live.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ajt/torus.hpp"

namespace ajt {

class PlaneCurvePoly {
 public:
  using Term = std::pair<TorusKey, mpz_class>;

  PlaneCurvePoly() = default;
  PlaneCurvePoly(long c);  // NOLINT(google-explicit-constructor)
  static PlaneCurvePoly monomial(const mpz_class& c, std::int64_t a, std::int64_t b);
  static PlaneCurvePoly M(std::int64_t a = 1) { return monomial(1, a, 0); }
  static PlaneCurvePoly L(std::int64_t b = 1) { return monomial(1, 0, b); }
  static PlaneCurvePoly from_terms(std::vector<Term> raw);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  mpz_class coeff(std::int64_t a, std::int64_t b) const;

  PlaneCurvePoly operator-() const;
  friend PlaneCurvePoly operator+(const PlaneCurvePoly& x, const PlaneCurvePoly& y);
  friend PlaneCurvePoly operator-(const PlaneCurvePoly& x, const PlaneCurvePoly& y);
  friend PlaneCurvePoly operator*(const PlaneCurvePoly& x, const PlaneCurvePoly& y);
  friend bool operator==(const PlaneCurvePoly& x, const PlaneCurvePoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const PlaneCurvePoly& x, const PlaneCurvePoly& y) { return !(x == y); }

  /// Multiplication by c M^a L^b.
  PlaneCurvePoly times_monomial(const mpz_class& c, std::int64_t a, std::int64_t b) const;
  PlaneCurvePoly sigma() const;

  /// (c, a, b) when the polynomial is a single term c M^a L^b.
  std::optional<std::tuple<mpz_class, std::int64_t, std::int64_t>> as_monomial() const;

  /// "M^a L^b" terms in (L, M) order with integer coefficients, e.g. "L^2 - M^-24".
  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // sorted by TorusKey (L-exponent, then M-exponent)
};

PlaneCurvePoly pow(const PlaneCurvePoly& x, unsigned n);

/// Exact division in Z[M^+-1, L^+-1]. Returns nullopt when y does not divide x;
/// throws ZeroDivisor for y = 0.
std::optional<PlaneCurvePoly> plane_exact_divide(const PlaneCurvePoly& x, const PlaneCurvePoly& y);

PlaneCurvePoly epsilon(const TorusElement& x);
PlaneCurvePoly to_plane(const BasicTorus<EpsilonDomain>& x);
/// Symmetric lift into the torus: c M^a L^b -> c * L^b M^a (product order), so that
/// sigma-invariant inputs give sigma-invariant outputs.
template <class D>
BasicTorus<D> lift_symmetric(const PlaneCurvePoly& x, const D& d) {
  BasicTorus<D> out(d);
  for (const auto& [k, c] : x.terms()) {
    out = out + BasicTorus<D>::L(d, k.b) * BasicTorus<D>::M(d, k.a) *
                    BasicTorus<D>::scalar(d, d.lift(LaurentScalar(c)));
  }
  return out;
}

}  // namespace ajt
