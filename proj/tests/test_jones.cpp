#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "ajt/error.hpp"
#include "ajt/conjecture.hpp"
#include "ajt/jones.hpp"
#include "gen.hpp"

using ajt::CableKnot;
using ajt::LaurentScalar;

namespace {

LaurentScalar T(std::int64_t e) { return LaurentScalar::tpow(e); }

// (t^2n - t^-2n) / (t^2 - t^-2)
LaurentScalar quantum_integer(std::int64_t n) {
  LaurentScalar q;
  REQUIRE(ajt::exact_divide(T(2 * n) - T(-2 * n), T(2) - T(-2), q));
  return q;
}

// Closed sum for torus knots:
// t^(-pq(n^2-1)) / (t^2 - t^-2) * sum_k (t^(4pqk^2 + 4(p+q)k + 2) - t^(4pqk^2 + 4(p-q)k - 2)),
// k = -(n-1)/2 .. (n-1)/2; written with twok = 2k so every exponent is an integer.
LaurentScalar torus_closed_form(std::int64_t p, std::int64_t q, std::int64_t n) {
  LaurentScalar sum;
  for (std::int64_t twok = -(n - 1); twok <= n - 1; twok += 2) {
    sum += T(p * q * twok * twok + 2 * (p + q) * twok + 2) - T(p * q * twok * twok + 2 * (p - q) * twok - 2);
  }
  LaurentScalar out;
  REQUIRE(ajt::exact_divide(sum.shifted(-p * q * (n * n - 1)), T(2) - T(-2), out));
  return out;
}

const std::vector<CableKnot>& sample_knots() {
  static const std::vector<CableKnot> knots{CableKnot::torus(3, 2), CableKnot::torus(5, 2), CableKnot::torus(4, 3),
                                           CableKnot::cable(3, 2, 13, 2), CableKnot::cable(3, 2, 19, 3)};
  return knots;
}

}  // namespace

TEST_CASE("quantum integers") {
  CHECK(ajt::bracket(2) == T(2) + T(-2));
  CHECK(ajt::bracket(0).is_zero());
  CHECK(ajt::bracket(-1) == LaurentScalar(-1));
  CHECK(ajt::bracket(5) == T(8) + T(4) + 1 + T(-4) + T(-8));
}

TEST_CASE("half-integer exponent") {
  CHECK(ajt::half_integer_exponent(3, 2, 1) == 12);
  CHECK(ajt::half_integer_exponent(3, 2, -1) == 0);
  for (std::int64_t r = -5; r <= 5; ++r)
    for (std::int64_t s = 2; s <= 5; ++s) CHECK(ajt::half_integer_exponent(r, s, 0) == 0);
}

TEST_CASE("unknot is the quantum integer") {
  for (std::int64_t n = 1; n <= 30; ++n) CHECK(ajt::colored_jones(CableKnot::unknot(), n) == quantum_integer(n));
}

TEST_CASE("trefoil matches [2] V(t^4)") {
  // reduced Jones polynomial of the trefoil in the convention with negative exponents
  const LaurentScalar V = -T(-4) + T(-3) + T(-1);
  const LaurentScalar expect = quantum_integer(2) * V.substitute_power(4);
  CHECK(expect == T(-2) + T(-6) + T(-10) - T(-18));
  CHECK(ajt::colored_jones(CableKnot::torus(3, 2), 2) == expect);
  CHECK((*ajt::torus_jones(3, 2))(2) == expect);
  CHECK((*ajt::torus_jones(3, 2))(1) == LaurentScalar(1));
  CHECK((*ajt::torus_jones(3, 2))(0).is_zero());
}

TEST_CASE("torus knots match the closed sum") {
  for (auto [p, q] : {std::pair{3, 2}, {5, 2}, {4, 3}, {-3, 2}, {7, 3}})
    for (std::int64_t n = 1; n <= 10; ++n) CHECK(ajt::colored_jones(CableKnot::torus(p, q), n) == torus_closed_form(p, q, n));
}

TEST_CASE("base facts on sample knots") {
  for (const auto& k : sample_knots()) {
    CAPTURE(k.encoding());
    CHECK(ajt::colored_jones(k, 0).is_zero());
    CHECK(ajt::colored_jones(k, 1) == LaurentScalar(1));
    for (std::int64_t n = 1; n <= 15; ++n) {
      const LaurentScalar v = ajt::colored_jones(k, n);
      CHECK(ajt::colored_jones(k, -n) == -v);
      CHECK(v.epsilon() == n);
    }
  }
}

TEST_CASE("cable recursion identities") {
  struct Sample {
    std::int64_t p, q, r, s;
  };
  // one companion per case, plus a negative slope
  for (const Sample c : {Sample{4, 3, 37, 3}, {3, 2, 19, 3}, {3, 2, 25, 4}, {3, 2, 13, 2}, {3, 2, -5, 2}, {3, 2, -7, 3}}) {
    CAPTURE(c.r);
    CAPTURE(c.s);
    const CableKnot K = CableKnot::torus(c.p, c.q);
    const CableKnot C = CableKnot::cable(c.p, c.q, c.r, c.s);
    const std::int64_t r = c.r, s = c.s;
    for (std::int64_t n = 1; n <= 12; ++n) {
      const LaurentScalar lhs = ajt::colored_jones(C, n + 2) - ajt::colored_jones(C, n).shifted(-4 * r * s * (n + 1));
      const LaurentScalar rhs = (ajt::colored_jones(K, s * (n + 1) + 1).shifted(2 * r * (n + 1)) -
                                 ajt::colored_jones(K, s * (n + 1) - 1).shifted(-2 * r * (n + 1)))
                                    .shifted(-2 * r * s * (n + 1));
      CHECK(lhs == rhs);
      if (s == 2) {
        const LaurentScalar l2 = ajt::colored_jones(C, n + 1) + ajt::colored_jones(C, n).shifted(-2 * r * (2 * n + 1));
        CHECK(l2 == ajt::colored_jones(K, 2 * n + 1).shifted(-2 * r * n));
      }
    }
    CHECK(ajt::verify_cable_recursion(K, r, s, 1, 12).ok);
    if (s == 2) CHECK(ajt::verify_cable_recursion_s2(K, r, 1, 15).ok);
  }
}

TEST_CASE("knot notation") {
  CHECK(ajt::parse_knot("U") == CableKnot::unknot());
  CHECK(ajt::parse_knot("T(3,2)") == CableKnot::torus(3, 2));
  CHECK(ajt::parse_knot(" C(3, 2; 13, 2) ") == CableKnot::cable(3, 2, 13, 2));
  CHECK(ajt::parse_knot("T(-5,2)") == CableKnot::torus(-5, 2));
  for (const char* s : {"U", "T(3,2)", "C(4,3;37,3)"}) CHECK(ajt::parse_knot(s).encoding() == s);

  const auto diagnostic = [](const char* text) {
    try {
      ajt::parse_knot(text);
    } catch (const ajt::Error& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(diagnostic("T(2,2)").find("|p| > q") != std::string::npos);
  CHECK(diagnostic("T(4,2)").find("gcd") != std::string::npos);
  CHECK(diagnostic("T(3,1)").find("q >= 2") != std::string::npos);
  CHECK(diagnostic("C(3,2;4,2)").find("gcd") != std::string::npos);
  CHECK(diagnostic("C(3,2;5,1)").find("s >= 2") != std::string::npos);
  CHECK(diagnostic("Q(3,2)") != "accepted");
  CHECK(diagnostic("T(3,2") != "accepted");
  CHECK(diagnostic("T(3,2)x") != "accepted");
}

TEST_CASE("specialized tables agree with the symbolic one") {
  ajt::JonesTable<ajt::RationalDomain> rt(ajt::RationalDomain(mpq_class(3, 2)));
  ajt::JonesTable<ajt::ModularDomain> mt(ajt::ModularDomain(123456789));
  ajt::JonesTable<ajt::EpsilonDomain> et;
  for (const auto& k : sample_knots()) {
    for (std::int64_t n = 1; n <= 9; ++n) {
      const LaurentScalar v = ajt::colored_jones(k, n);
      CHECK(rt.domain().to_mpq(rt(k, n)) == v.specialize(mpq_class(3, 2)));
      CHECK(mt(k, n) == mt.domain().lift(v));
      CHECK(et(k, n) == n);
    }
  }
}

TEST_CASE("concurrent evaluation is consistent") {
  ajt::JonesTable<ajt::SymbolicDomain> table;
  const CableKnot k = CableKnot::cable(3, 2, 13, 2);
  std::vector<std::vector<LaurentScalar>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < results.size(); ++i) {
    threads.emplace_back([&, i] {
      for (std::int64_t n = 12; n >= 1; --n) results[i].push_back(table(k, n));
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = 0; j < 12; ++j) CHECK(results[i][j] == ajt::colored_jones(k, 12 - static_cast<std::int64_t>(j)));
  }
}

TEST_CASE("cache round trip and corruption detection") {
  const auto dir = std::filesystem::temp_directory_path() / "ajt_cache_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "jones.json").string();

  ajt::JonesTable<ajt::SymbolicDomain> src;
  const CableKnot k = CableKnot::cable(3, 2, 13, 2);
  for (std::int64_t n = 1; n <= 8; ++n) src(k, n);
  REQUIRE(ajt::save_jones_cache_file(path, src) > 0);

  ajt::JonesTable<ajt::SymbolicDomain> warm;
  REQUIRE(ajt::load_jones_cache_file(path, warm));
  const auto seeded = warm.sequence(k)->snapshot();
  CHECK(seeded.size() == 8);
  for (const auto& [n, v] : seeded) CHECK(v == ajt::colored_jones(k, n));

  std::string text;
  {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  // flip one coefficient digit inside the payload
  const auto pos = text.find("t^", text.find("entries"));
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad.replace(pos, 2, "3*t^");
  {
    std::ofstream out(path);
    out << bad;
  }
  ajt::JonesTable<ajt::SymbolicDomain> cold;
  CHECK_FALSE(ajt::load_jones_cache_file(path, cold));
  CHECK(cold.all().empty());

  {
    std::ofstream out(path);
    out << text.substr(0, text.size() / 2);
  }
  CHECK_FALSE(ajt::load_jones_cache_file(path, cold));
  CHECK_FALSE(ajt::load_jones_cache_file((dir / "missing.json").string(), cold));
  CHECK(cold.all().empty());
  std::filesystem::remove_all(dir);
}
