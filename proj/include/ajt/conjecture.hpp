#pragma once

// Constructive witnesses for the strong AJ conjecture on cables of torus knots:
// A-polynomials, the G-sequences, the operators P, Q, R, S, and their checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ajt/expfit.hpp"
#include "ajt/jones.hpp"
#include "ajt/plane.hpp"
#include "ajt/seqexpr.hpp"
#include "ajt/torus.hpp"

namespace ajt {

enum class CaseTag { OddS_QBig, OddS_Q2, EvenS_Big, S2 };
const char* to_string(CaseTag c);
/// Validates the parameters (InvalidParams) and dispatches on (q, s).
CaseTag case_tag(const CableParams& params);

/// The three linear-in-L factors of A_C, in display order.
std::vector<PlaneCurvePoly> a_polynomial_factors(const CableParams& params);
/// Expanded A_C. Throws InadmissibleParams unless `allow_inadmissible`.
PlaneCurvePoly a_polynomial_cable(const CableParams& params, bool allow_inadmissible = false);
/// e.g. "(L-1)(L-M^-24)(L+M^-26)"
std::string a_polynomial_factored(const CableParams& params);

struct SymmetryData {
  int eta = 1;
  std::int64_t a = 0;
  std::int64_t b = 0;
};
/// sigma(A) = eta M^a L^b A; throws NotSymmetric otherwise.
SymmetryData symmetry_exponents(const PlaneCurvePoly& A);

/// [G1, G2] for s > 2, [G] for s = 2.
std::vector<SeqExpr> build_G(const CableParams& params);

struct IdentityReport {
  bool ok = true;
  std::int64_t checked = 0;
  std::optional<std::int64_t> first_failure;
  std::string identity;
};

/// t^2rs M^rs (L^2 - t^-4rs M^-2rs) J_C = G1 - G2 (s > 2), M^r (L + t^-2r M^-2r) J_C = G (s = 2).
IdentityReport verify_cable_splitting(const CableParams& params, std::int64_t lo, std::int64_t hi);

/// J_{K^(r,s)}(n+2) - t^(-4rs(n+1)) J(n) = t^(-2rs(n+1)) (t^(2r(n+1)) J_K(s(n+1)+1) - t^(-2r(n+1)) J_K(s(n+1)-1)).
IdentityReport verify_cable_recursion(const CableKnot& companion, std::int64_t r, std::int64_t s, std::int64_t lo,
                                      std::int64_t hi);
/// J_{K^(r,2)}(n+1) + t^(-2r(2n+1)) J(n) = t^(-2rn) J_K(2n+1).
IdentityReport verify_cable_recursion_s2(const CableKnot& companion, std::int64_t r, std::int64_t lo, std::int64_t hi);

/// One factor per G_i (cases 1-3) or the single element (case 4), built in domain D.
template <class D>
std::vector<BasicTorus<D>> build_P_factors(const CableParams& params, const D& d);
template <class D>
BasicTorus<D> build_P_in(const CableParams& params, const D& d);
TorusElement build_P(const CableParams& params);
std::vector<TorusElement> build_P_factors(const CableParams& params);

struct MembershipReport {
  std::vector<FitReport> factor_fits;   // P_i G_i, one per G_i
  std::vector<FitReport> product_fits;  // P G_i, feeding Q (cases 1-3)
  bool ok() const;
};
MembershipReport verify_P_membership(const CableParams& params, const FitOptions& opts = {});

/// Operators that split J_C: R = A + sigma(A) with A = mu Q P mu X.
template <class D>
BasicTorus<D> build_mu(const CableParams& params, const D& d);
template <class D>
BasicTorus<D> build_X(const CableParams& params, const D& d);
template <class D>
BasicTorus<D> build_R_in(const CableParams& params, const BasicTorus<D>& Q, const D& d);

enum class VerifyMode { Symbolic, Specialized };
const char* to_string(VerifyMode m);

struct MonomialData {
  int eta = 1;
  std::int64_t a_exp = 0;
  std::int64_t b_exp = 0;
};

struct WitnessBundle {
  CableParams params;
  CaseTag tag = CaseTag::S2;
  std::vector<SeqExpr> G;
  std::vector<std::int64_t> frequencies;  // one per factor of Q
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t power = 0;
  bool padded = false;
  TorusElement P;
  std::vector<TorusElement> P_factors;
  // Full symbolic operators, present when built in symbolic mode.
  std::optional<TorusElement> Q, R, S, SR;
  // Commutative images; always present.
  PlaneCurvePoly eps_Q, eps_P, eps_R, eps_S;
  PlaneCurvePoly T1, T2, T3;  // degree-2 factors of eps(R); S = T1^a T2^b T3^c lifted
  std::int64_t exp_T1 = 0, exp_T2 = 0, exp_T3 = 0;
  PlaneCurvePoly A_C;
  std::vector<std::string> notes;

  /// Lifted S-factors in the torus (sigma-invariant individually).
  std::vector<TorusElement> S_factors() const;
};

/// Assembles Q from the supports of P G_i and builds R, S and their commutative images.
WitnessBundle build_witness(const CableParams& params, const MembershipReport& membership, VerifyMode mode);

struct AnnihilationReport {
  bool ok = true;
  VerifyMode mode = VerifyMode::Symbolic;
  std::vector<std::string> points;  // "symbolic" or t0 values
  std::vector<std::int64_t> colors;
  std::vector<std::vector<bool>> zero;  // [point][color]
  bool mutation_caught = false;
  bool sigma_R = false;
  double elapsed_ms = 0;
};
AnnihilationReport verify_annihilation(const WitnessBundle& w, std::int64_t lo, std::int64_t hi, VerifyMode mode,
                                       const std::vector<mpq_class>& t0s, unsigned parallelism = 1);

struct EpsilonReport {
  bool divisible = false;
  bool monomial = false;
  bool witness_arithmetic = false;
  std::optional<bool> closed_form;  // cases 1 and 4 only
  MonomialData quotient;
  SymmetryData symmetry;
  std::string detail;
  bool ok() const { return divisible && monomial && witness_arithmetic && closed_form.value_or(true); }
};
EpsilonReport verify_epsilon_identity(const WitnessBundle& w);

/// Fits of (L^2m - t^(-4pqm^2) M^(-2pqm)) J_T, plus (L^m - (-1)^m t^(-2pm^2) M^(-2pm)) J_T when q = 2.
std::vector<FitReport> verify_shift_lemmas(std::int64_t p, std::int64_t q, std::int64_t m_max,
                                           const FitOptions& opts = {});

struct StageReport {
  std::string name;
  std::string status;  // pass, fail, skipped
  nlohmann::json details;
  double elapsed_ms = 0;
};

struct VerifyConfig {
  std::int64_t lo = 1;
  std::int64_t hi = 8;
  std::optional<VerifyMode> mode;  // auto when unset
  std::vector<mpq_class> t0s{mpq_class(2), mpq_class(3, 2), mpq_class(5, 3)};
  FitOptions fit;
  unsigned parallelism = 1;
  std::int64_t symbolic_m_limit = 24;
};

struct StructuredReport {
  CableParams params;
  std::string case_name;
  bool admissible = false;
  std::vector<StageReport> stages;
  std::vector<FitReport> fits;
  std::int64_t m = 0, k = 0, power = 0;
  MonomialData monomial;
  SymmetryData symmetry;
  std::string mode;
  bool passed() const;
  /// 0 verified, 1 a stage refuted, 2 invalid/inadmissible input, 3 resource bound.
  int exit_code = 0;
};

StructuredReport strong_aj_verify(const CableParams& params, const VerifyConfig& cfg = {});

nlohmann::json to_json(const StructuredReport& r);
StructuredReport structured_report_from_json(const nlohmann::json& j);

/// The four default parameter sets, one per case.
std::vector<CableParams> default_parameter_sets();

}  // namespace ajt
