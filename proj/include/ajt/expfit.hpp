#pragma once

// Membership of a sequence n -> f(n) in the span of t^(2kn), support recovery, and
// the annihilating operator prod (L + L^-1 - t^2k - t^-2k).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ajt/laurent.hpp"
#include "ajt/seqexpr.hpp"
#include "ajt/torus.hpp"

namespace ajt {

/// sum_k lambda_k t^(2kn). Coefficients live in Q(t); see FitReport::laurent_coefficients.
struct ExpPolynomial {
  std::map<std::int64_t, RatScalar> terms;

  RatScalar evaluate(std::int64_t n) const;
  bool all_laurent() const;
};

enum class FitStatus { Member, NotMember, Inconclusive };
const char* to_string(FitStatus s);

struct FitOptions {
  std::int64_t window_start = 1;
  std::int64_t K0 = 8;
  std::int64_t K_max = 256;
  std::int64_t extra = 5;
  /// Supports up to this size get exact coefficients; larger ones report the support only.
  std::size_t coefficient_limit = 12;
  /// Two independent evaluation points modulo 2^61 - 1 for the support probe.
  std::uint64_t probe_seed = 0x61f7c3a9d2e5b481ULL;
};

struct FitReport {
  FitStatus status = FitStatus::Inconclusive;
  std::vector<std::int64_t> support;
  std::optional<ExpPolynomial> coefficients;
  std::pair<std::int64_t, std::int64_t> window{0, 0};
  std::int64_t extra_checks_passed = 0;
  std::int64_t K = 0;
  std::string label;
  std::string note;

  /// true/false once coefficients were computed, nullopt otherwise.
  std::optional<bool> laurent_coefficients() const;
};

/// Requires K_max >= 1, extra >= 1 and K0 >= 1 (InsufficientSamples otherwise).
FitReport fit(const SeqExpr& f, const FitOptions& opts = {});

nlohmann::json to_json(const FitReport& r);
FitReport fit_report_from_json(const nlohmann::json& j);

/// Union over t0 samples of {j : lambda_j(t0) != 0} for the exact rational solve of
/// f(n) = sum_{|j| <= K} lambda_j t0^(2jn), n = n0 .. n0 + 2K. Throws DegenerateNodes when
/// two nodes t0^(2j) coincide and ZeroBase for t0 = 0.
std::vector<std::int64_t> support_probe(const SeqExpr& f, std::int64_t n0, const std::vector<mpq_class>& t0s,
                                        std::int64_t K);

struct Annihilator {
  TorusElement Q;
  std::int64_t m = 0;
  bool padded = false;  // all supports were empty; one k = 0 factor was inserted
  std::vector<std::int64_t> frequencies;  // one entry per factor
};

/// Q = prod over the multiset union of the supports of (L + L^-1 - t^2k - t^-2k).
/// Repeats inside one support are dropped; repeats across supports are kept.
Annihilator annihilator_from_support(const std::vector<std::vector<std::int64_t>>& supports);

/// The same product built directly in domain D.
template <class D>
BasicTorus<D> annihilator_in(const std::vector<std::int64_t>& frequencies, const D& d) {
  BasicTorus<D> q = BasicTorus<D>::one(d);
  for (std::int64_t k : frequencies) {
    const BasicTorus<D> factor = BasicTorus<D>::L(d, 1) + BasicTorus<D>::L(d, -1) -
                                 BasicTorus<D>::tpow(d, 2 * k) - BasicTorus<D>::tpow(d, -2 * k);
    q = q * factor;
  }
  return q;
}

std::vector<std::int64_t> annihilator_frequencies(const std::vector<std::vector<std::int64_t>>& supports,
                                                  bool* padded = nullptr);

}  // namespace ajt
