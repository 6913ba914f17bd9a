#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ajt/conjecture.hpp"
#include "ajt/error.hpp"
#include "ajt/expfit.hpp"
#include "ajt/plane.hpp"
#include "gen.hpp"

using ajt::FitStatus;
using ajt::LaurentScalar;
using ajt::RatScalar;
using ajt::SymbolicDomain;
using ajt::TorusElement;

namespace {

const SymbolicDomain d;
LaurentScalar T(std::int64_t e) { return LaurentScalar::tpow(e); }
TorusElement L(std::int64_t b = 1) { return TorusElement::L(d, b); }
TorusElement M(std::int64_t a = 1) { return TorusElement::M(d, a); }
TorusElement t(std::int64_t e) { return TorusElement::tpow(d, e); }

ajt::FitOptions with_K(std::int64_t K) {
  ajt::FitOptions o;
  o.K0 = std::min<std::int64_t>(o.K0, K);
  o.K_max = K;
  return o;
}

// every Member report must be killed by its own annihilator on the window and the extra points
void check_annihilation(const ajt::SeqExpr& f, const ajt::FitReport& rep, std::int64_t extra) {
  const ajt::Annihilator a = ajt::annihilator_from_support({rep.support});
  const ajt::SeqExpr killed = ajt::apply_seq(a.Q, f);
  for (std::int64_t n = rep.window.first; n <= rep.window.second + extra; ++n) {
    REQUIRE(ajt::symbolic_evaluator()(killed, n).is_zero());
  }
}

}  // namespace

TEST_CASE("two-frequency and constant sequences") {
  const ajt::SeqExpr f = ajt::parse_seq_expr("t^{2n}+t^{-2n}");
  const ajt::FitReport r = ajt::fit(f, with_K(2));
  REQUIRE(r.status == FitStatus::Member);
  CHECK(r.support == std::vector<std::int64_t>{-1, 1});
  REQUIRE(r.coefficients);
  CHECK(r.coefficients->terms.at(-1) == RatScalar(LaurentScalar(1)));
  CHECK(r.coefficients->terms.at(1) == RatScalar(LaurentScalar(1)));
  CHECK(r.extra_checks_passed == 5);

  const ajt::FitReport c = ajt::fit(ajt::parse_seq_expr("5 t^4"), with_K(1));
  REQUIRE(c.status == FitStatus::Member);
  CHECK(c.support == std::vector<std::int64_t>{0});
  CHECK(c.coefficients->terms.at(0) == RatScalar(T(4) * 5));
  CHECK(c.laurent_coefficients() == true);
}

TEST_CASE("shift operator on the trefoil sequence") {
  const ajt::SeqExpr jt = ajt::jones_seq(ajt::CableKnot::torus(3, 2));
  const ajt::SeqExpr f = ajt::apply_seq(L(2) - t(-24) * M(-12), jt);
  const ajt::FitReport r = ajt::fit(f, with_K(32));
  REQUIRE(r.status == FitStatus::Member);
  CHECK_FALSE(r.support.empty());
  CHECK(r.extra_checks_passed == 5);
  check_annihilation(f, r, 5);

  const ajt::FitReport bare = ajt::fit(jt, with_K(32));
  CHECK(bare.status == FitStatus::NotMember);
}

TEST_CASE("zero sequence has empty support") {
  const ajt::SeqExpr f = ajt::apply_seq(L() + L(-1) - t(2) - t(-2), ajt::parse_seq_expr("t^{2n}+t^{-2n}"));
  const ajt::FitReport r = ajt::fit(f, with_K(4));
  CHECK(r.status == FitStatus::Member);
  CHECK(r.support.empty());
  CHECK(ajt::support_probe(f, 1, {mpq_class(2)}, 3).empty());
}

TEST_CASE("support probe") {
  const ajt::SeqExpr f = ajt::parse_seq_expr("t^{2n}+t^{-2n}");
  CHECK(ajt::support_probe(f, 1, {mpq_class(2)}, 3) == std::vector<std::int64_t>{-1, 1});
  CHECK_THROWS_AS(ajt::support_probe(f, 1, {mpq_class(0)}, 3), ajt::Error);
  // t0 = -1 makes every node t0^2j equal
  CHECK_THROWS_AS(ajt::support_probe(f, 1, {mpq_class(-1)}, 3), ajt::Error);

  const ajt::CableParams c{3, 2, 19, 3};
  const auto P = ajt::build_P_factors(c);
  const auto G = ajt::build_G(c);
  const ajt::SeqExpr h = ajt::apply_seq(P[0], G[0]);
  const auto s2 = ajt::support_probe(h, 1, {mpq_class(2)}, 8);
  const auto s32 = ajt::support_probe(h, 1, {mpq_class(3, 2)}, 8);
  CHECK_FALSE(s2.empty());
  CHECK(s2 == s32);
}

TEST_CASE("annihilator synthesis") {
  const auto one = ajt::annihilator_from_support({{1}});
  CHECK(one.m == 1);
  CHECK(one.Q == L() + L(-1) - t(2) - t(-2));
  const auto zero = ajt::annihilator_from_support({{0}});
  CHECK(zero.Q == L() + L(-1) - t(0) - t(0));
  const auto two = ajt::annihilator_from_support({{1}, {-1}});
  CHECK(two.m == 2);
  CHECK(two.Q == ajt::pow(one.Q, 2));
  const ajt::SeqExpr f = ajt::apply_seq(two.Q, ajt::parse_seq_expr("t^{2n}+t^{-2n}"));
  for (std::int64_t n = -3; n <= 3; ++n) CHECK(ajt::symbolic_evaluator()(f, n).is_zero());
  // duplicates inside one support collapse, across supports they stay
  CHECK(ajt::annihilator_from_support({{2, 2, 3}}).m == 2);
  CHECK(ajt::annihilator_from_support({{2, 3}, {2}}).m == 3);
  const auto padded = ajt::annihilator_from_support({{}});
  CHECK(padded.padded);
  CHECK(padded.m == 1);
  CHECK(padded.frequencies == std::vector<std::int64_t>{0});
  CHECK(ajt::annihilator_in(two.frequencies, ajt::ModularDomain(5)) == ajt::specialize(two.Q, ajt::ModularDomain(5)));
}

TEST_CASE("synthesized annihilators are symmetric with the expected image") {
  const ajt::PlaneCurvePoly base = ajt::PlaneCurvePoly::L() + ajt::PlaneCurvePoly::L(-1) - 2;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::vector<std::int64_t>> supports(static_cast<std::size_t>(gen::uniform(1, 3)));
    for (auto& s : supports)
      for (int j = gen::uniform(0, 3); j > 0; --j) s.push_back(gen::uniform(-6, 6));
    const auto a = ajt::annihilator_from_support(supports);
    REQUIRE(ajt::sigma(a.Q) == a.Q);
    REQUIRE(ajt::epsilon(a.Q) == ajt::pow(base, static_cast<unsigned>(a.m)));
  }
}

TEST_CASE("round trip on random exponential polynomials") {
  for (int i = 0; i < 30; ++i) {
    const std::int64_t K = gen::uniform(1, 6);
    std::map<std::int64_t, LaurentScalar> terms;
    for (int j = gen::uniform(1, 5); j > 0; --j) {
      LaurentScalar c = gen::laurent(3, 10, 30);
      if (c.is_zero()) c = LaurentScalar(1);
      terms[gen::uniform(-K, K)] = c;
    }
    const ajt::SeqExpr f = ajt::exp_poly_seq(terms);
    const ajt::FitReport r = ajt::fit(f, with_K(K));
    REQUIRE(r.status == FitStatus::Member);
    std::vector<std::int64_t> expect;
    for (const auto& [k, c] : terms) expect.push_back(k);
    REQUIRE(r.support == expect);
    REQUIRE(r.coefficients);
    for (const auto& [k, c] : terms) REQUIRE(r.coefficients->terms.at(k) == RatScalar(c));
    for (std::int64_t n = -3; n <= 12; ++n) REQUIRE(r.coefficients->evaluate(n) == RatScalar(ajt::symbolic_evaluator()(f, n)));
    check_annihilation(f, r, 5);
  }
}

TEST_CASE("shift operators on torus knots") {
  for (auto [p, q] : {std::pair{3, 2}, {4, 3}, {5, 2}}) {
    const auto reports = ajt::verify_shift_lemmas(p, q, 3);
    CHECK(reports.size() == (q == 2 ? 6U : 3U));
    for (const auto& r : reports) {
      CAPTURE(r.label);
      CHECK(r.status == FitStatus::Member);
      CHECK(r.extra_checks_passed >= 5);
    }
  }
}

TEST_CASE("fit report json round trip") {
  const ajt::FitReport r = ajt::fit(ajt::parse_seq_expr("t^{2n} + 3 t^{-4n} - t^2"), with_K(4));
  const ajt::FitReport back = ajt::fit_report_from_json(ajt::to_json(r));
  CHECK(ajt::to_json(back) == ajt::to_json(r));
  CHECK(back.status == r.status);
  CHECK(back.support == r.support);
  CHECK(back.coefficients->terms.at(-2) == RatScalar(LaurentScalar(3)));
}

TEST_CASE("invalid fit bounds") {
  ajt::FitOptions o;
  o.K_max = 0;
  CHECK_THROWS_AS(ajt::fit(ajt::parse_seq_expr("t^{2n}"), o), ajt::Error);
  o = {};
  o.extra = 0;
  CHECK_THROWS_AS(ajt::fit(ajt::parse_seq_expr("t^{2n}"), o), ajt::Error);
  CHECK_THROWS_AS(ajt::parse_seq_expr("t^{3n}"), ajt::Error);
}
