#include "ajt/conjecture.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>

#include "ajt/error.hpp"

namespace ajt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class D>
BasicTorus<D> T(const D& d, const TorusElement& x) {
  return specialize(x, d);
}

/// L^b M^a as an operator product (L written first).
template <class D>
BasicTorus<D> LM(const D& d, std::int64_t b, std::int64_t a) {
  return BasicTorus<D>::L(d, b) * BasicTorus<D>::M(d, a);
}

template <class D>
BasicTorus<D> tp(const D& d, std::int64_t e) {
  return BasicTorus<D>::tpow(d, e);
}

}  // namespace

const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::OddS_QBig: return "OddS_QBig";
    case CaseTag::OddS_Q2: return "OddS_Q2";
    case CaseTag::EvenS_Big: return "EvenS_Big";
    case CaseTag::S2: return "S2";
  }
  return "?";
}

const char* to_string(VerifyMode m) { return m == VerifyMode::Symbolic ? "symbolic" : "specialized"; }

CaseTag case_tag(const CableParams& params) {
  params.validate();
  if (params.s == 2) return CaseTag::S2;
  if (params.s % 2 == 0) return CaseTag::EvenS_Big;
  return params.q == 2 ? CaseTag::OddS_Q2 : CaseTag::OddS_QBig;
}

std::vector<CableParams> default_parameter_sets() {
  return {{4, 3, 37, 3}, {3, 2, 19, 3}, {3, 2, 25, 4}, {3, 2, 13, 2}};
}

// ---------------------------------------------------------------- A-polynomial

std::vector<PlaneCurvePoly> a_polynomial_factors(const CableParams& c) {
  const PlaneCurvePoly L1 = PlaneCurvePoly::L(1);
  const PlaneCurvePoly L2 = PlaneCurvePoly::L(2);
  const PlaneCurvePoly one(1);
  switch (case_tag(c)) {
    case CaseTag::OddS_QBig:
      return {L1 - one, L2 - PlaneCurvePoly::M(-2 * c.p * c.q * c.s * c.s), L2 - PlaneCurvePoly::M(-2 * c.r * c.s)};
    case CaseTag::OddS_Q2:
      return {L1 - one, L1 + PlaneCurvePoly::M(-2 * c.p * c.s * c.s), L2 - PlaneCurvePoly::M(-2 * c.r * c.s)};
    case CaseTag::EvenS_Big:
      return {L1 - one, L1 - PlaneCurvePoly::M(-c.p * c.q * c.s * c.s), L2 - PlaneCurvePoly::M(-2 * c.r * c.s)};
    case CaseTag::S2:
      return {L1 - one, L1 - PlaneCurvePoly::M(-4 * c.p * c.q), L1 + PlaneCurvePoly::M(-2 * c.r)};
  }
  return {};
}

PlaneCurvePoly a_polynomial_cable(const CableParams& params, bool allow_inadmissible) {
  const auto factors = a_polynomial_factors(params);
  if (!allow_inadmissible && !params.admissible()) {
    throw Error(ErrorKind::InadmissibleParams, "inadmissible parameters " + params.to_string() + ": r in (0, pqs)");
  }
  PlaneCurvePoly out(1);
  for (const auto& f : factors) out = out * f;
  return out;
}

std::string a_polynomial_factored(const CableParams& params) {
  std::string out;
  for (const auto& f : a_polynomial_factors(params)) {
    std::string s = f.to_string();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    out += "(" + s + ")";
  }
  return out;
}

SymmetryData symmetry_exponents(const PlaneCurvePoly& A) {
  if (A.is_zero()) throw Error(ErrorKind::NotSymmetric, "zero polynomial has no symmetry exponents");
  const auto q = plane_exact_divide(A.sigma(), A);
  if (!q) throw Error(ErrorKind::NotSymmetric, "sigma(A) is not divisible by A");
  const auto mono = q->as_monomial();
  if (!mono || abs(std::get<0>(*mono)) != 1) {
    throw Error(ErrorKind::NotSymmetric, "sigma(A)/A = " + q->to_string() + " is not a unit monomial");
  }
  return {std::get<0>(*mono) > 0 ? 1 : -1, std::get<1>(*mono), std::get<2>(*mono)};
}

// ---------------------------------------------------------------- G and splitting

std::vector<SeqExpr> build_G(const CableParams& c) {
  c.validate();
  const SeqExpr jt = jones_seq(CableKnot::torus(c.p, c.q));
  const SymbolicDomain d;
  if (c.s == 2) return {reindex_seq(jt, 2, 1)};
  const TorusElement up = TorusElement::tpow(d, 2 * c.r) * TorusElement::M(d, c.r);
  const TorusElement down = TorusElement::tpow(d, -2 * c.r) * TorusElement::M(d, -c.r);
  return {apply_seq(up, reindex_seq(jt, c.s, c.s + 1)), apply_seq(down, reindex_seq(jt, c.s, c.s - 1))};
}

template <class D>
BasicTorus<D> build_mu(const CableParams& c, const D& d) {
  return BasicTorus<D>::M(d, c.s == 2 ? c.r : c.r * c.s);
}

template <class D>
BasicTorus<D> build_X(const CableParams& c, const D& d) {
  if (c.s == 2) return BasicTorus<D>::L(d, 1) + tp(d, -2 * c.r) * BasicTorus<D>::M(d, -2 * c.r);
  return BasicTorus<D>::L(d, 2) - tp(d, -4 * c.r * c.s) * BasicTorus<D>::M(d, -2 * c.r * c.s);
}

IdentityReport verify_cable_splitting(const CableParams& c, std::int64_t lo, std::int64_t hi) {
  const SymbolicDomain d;
  const auto G = build_G(c);
  const SeqExpr jc = jones_seq(c.knot());
  auto& ev = symbolic_evaluator();
  TorusElement lhs = build_mu(c, d) * build_X(c, d);
  IdentityReport rep;
  if (c.s == 2) {
    rep.identity = "M^r (L + t^-2r M^-2r) J_C = G";
  } else {
    lhs = TorusElement::tpow(d, 2 * c.r * c.s) * lhs;
    rep.identity = "t^2rs M^rs (L^2 - t^-4rs M^-2rs) J_C = G1 - G2";
  }
  for (std::int64_t n = lo; n <= hi; ++n) {
    const LaurentScalar left = apply_to_sequence(lhs, [&](std::int64_t m) { return ev(jc, m); }, n);
    const LaurentScalar right = c.s == 2 ? ev(G[0], n) : ev(G[0], n) - ev(G[1], n);
    ++rep.checked;
    if (!(left == right)) {
      rep.ok = false;
      rep.first_failure = n;
      break;
    }
  }
  return rep;
}

IdentityReport verify_cable_recursion(const CableKnot& companion, std::int64_t r, std::int64_t s, std::int64_t lo,
                                      std::int64_t hi) {
  CableKnot cable = companion;
  cable.slopes.emplace_back(r, s);
  IdentityReport rep;
  rep.identity = "J_C(n+2) - t^(-4rs(n+1)) J_C(n) = t^(-2rs(n+1)) (t^(2r(n+1)) J_K(s(n+1)+1) - t^(-2r(n+1)) J_K(s(n+1)-1))";
  for (std::int64_t n = lo; n <= hi; ++n) {
    const LaurentScalar left =
        colored_jones(cable, n + 2) - colored_jones(cable, n).shifted(-4 * r * s * (n + 1));
    const LaurentScalar inner = colored_jones(companion, s * (n + 1) + 1).shifted(2 * r * (n + 1)) -
                                colored_jones(companion, s * (n + 1) - 1).shifted(-2 * r * (n + 1));
    ++rep.checked;
    if (!(left == inner.shifted(-2 * r * s * (n + 1)))) {
      rep.ok = false;
      rep.first_failure = n;
      break;
    }
  }
  return rep;
}

IdentityReport verify_cable_recursion_s2(const CableKnot& companion, std::int64_t r, std::int64_t lo,
                                         std::int64_t hi) {
  CableKnot cable = companion;
  cable.slopes.emplace_back(r, 2);
  IdentityReport rep;
  rep.identity = "J_C(n+1) + t^(-2r(2n+1)) J_C(n) = t^(-2rn) J_K(2n+1)";
  for (std::int64_t n = lo; n <= hi; ++n) {
    const LaurentScalar left = colored_jones(cable, n + 1) + colored_jones(cable, n).shifted(-2 * r * (2 * n + 1));
    ++rep.checked;
    if (!(left == colored_jones(companion, 2 * n + 1).shifted(-2 * r * n))) {
      rep.ok = false;
      rep.first_failure = n;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- P

template <class D>
std::vector<BasicTorus<D>> build_P_factors(const CableParams& c, const D& d) {
  const std::int64_t p = c.p, q = c.q, r = c.r, s = c.s;
  switch (case_tag(c)) {
    case CaseTag::OddS_QBig: {
      const std::int64_t e = 2 * p * q * s * s;
      const BasicTorus<D> base = LM(d, 2, e) + LM(d, -2, -e);
      return {base - tp(d, 4 * r - 4 * p * q * s) - tp(d, -4 * r + 4 * p * q * s + 8 * p * q * s * s),
              base - tp(d, -4 * r + 4 * p * q * s) - tp(d, 4 * r - 4 * p * q * s + 8 * p * q * s * s)};
    }
    case CaseTag::OddS_Q2: {
      const std::int64_t e = 2 * p * s * s;
      const BasicTorus<D> base = LM(d, 1, e) + LM(d, -1, -e);
      return {base + tp(d, 2 * r - 2 * p * s * (s + 2)) + tp(d, -2 * r + 2 * p * s * (3 * s + 2)),
              base + tp(d, -2 * r - 2 * p * s * (s - 2)) + tp(d, 2 * r + 2 * p * s * (3 * s - 2))};
    }
    case CaseTag::EvenS_Big: {
      const std::int64_t e = p * q * s * s;
      const BasicTorus<D> base = LM(d, 1, e) + LM(d, -1, -e);
      return {base - tp(d, 2 * r - p * q * s * (s + 2)) - tp(d, -2 * r + p * q * s * (3 * s + 2)),
              base - tp(d, -2 * r - p * q * s * (s - 2)) - tp(d, 2 * r + p * q * s * (3 * s - 2))};
    }
    case CaseTag::S2: {
      const std::int64_t e = 4 * p * q;
      return {LM(d, 1, e) + LM(d, -1, -e) - BasicTorus<D>::one(d) - tp(d, 8 * p * q)};
    }
  }
  return {};
}

template <class D>
BasicTorus<D> build_P_in(const CableParams& c, const D& d) {
  const auto f = build_P_factors(c, d);
  return f.size() == 1 ? f[0] : f[0] * f[1];
}

TorusElement build_P(const CableParams& params) { return build_P_in(params, SymbolicDomain{}); }
std::vector<TorusElement> build_P_factors(const CableParams& params) {
  return build_P_factors(params, SymbolicDomain{});
}

bool MembershipReport::ok() const {
  auto member = [](const FitReport& f) { return f.status == FitStatus::Member; };
  return std::all_of(factor_fits.begin(), factor_fits.end(), member) &&
         std::all_of(product_fits.begin(), product_fits.end(), member);
}

MembershipReport verify_P_membership(const CableParams& c, const FitOptions& opts) {
  MembershipReport rep;
  const auto G = build_G(c);
  const auto factors = build_P_factors(c);
  const TorusElement P = build_P(c);
  for (std::size_t i = 0; i < G.size(); ++i) {
    rep.factor_fits.push_back(fit(apply_seq(factors[i], G[i]), opts));
    if (rep.factor_fits.back().status != FitStatus::Member) return rep;
  }
  if (G.size() > 1) {
    for (const auto& g : G) {
      rep.product_fits.push_back(fit(apply_seq(P, g), opts));
      if (rep.product_fits.back().status != FitStatus::Member) return rep;
    }
  } else {
    rep.product_fits = rep.factor_fits;
  }
  return rep;
}

// ---------------------------------------------------------------- R and S

template <class D>
BasicTorus<D> build_R_in(const CableParams& c, const BasicTorus<D>& Q, const D& d) {
  const BasicTorus<D> mu = build_mu(c, d);
  const BasicTorus<D> A = mu * Q * build_P_in(c, d) * mu * build_X(c, d);
  return A + A.sigma();
}

std::vector<TorusElement> WitnessBundle::S_factors() const {
  const SymbolicDomain d;
  std::vector<TorusElement> out;
  const std::pair<const PlaneCurvePoly*, std::int64_t> parts[] = {{&T1, exp_T1}, {&T2, exp_T2}, {&T3, exp_T3}};
  for (const auto& [t, e] : parts) {
    if (e > 0) out.push_back(lift_symmetric(*t, d));
  }
  return out;
}

namespace {

template <class D>
BasicTorus<D> assemble_S(const WitnessBundle& w, const D& d) {
  BasicTorus<D> S = BasicTorus<D>::one(d);
  const std::pair<const PlaneCurvePoly*, std::int64_t> parts[] = {{&w.T1, w.exp_T1}, {&w.T2, w.exp_T2}, {&w.T3, w.exp_T3}};
  for (const auto& [t, e] : parts) {
    if (e > 0) S = S * pow(lift_symmetric(*t, d), static_cast<unsigned>(e));
  }
  return S;
}

}  // namespace

WitnessBundle build_witness(const CableParams& c, const MembershipReport& membership, VerifyMode mode) {
  if (!membership.ok()) throw Error(ErrorKind::InvalidParams, "witness needs Member fits for every P G_i");
  WitnessBundle w;
  w.params = c;
  w.tag = case_tag(c);
  w.G = build_G(c);
  std::vector<std::vector<std::int64_t>> supports;
  for (const auto& f : membership.product_fits) supports.push_back(f.support);
  w.frequencies = annihilator_frequencies(supports, &w.padded);
  if (w.padded) w.notes.push_back("all supports empty; one k = 0 factor inserted into Q");
  w.m = static_cast<std::int64_t>(w.frequencies.size());
  w.P = build_P(c);
  w.P_factors = build_P_factors(c);
  w.A_C = a_polynomial_cable(c, true);

  const EpsilonDomain e;
  const auto Qe = annihilator_in(w.frequencies, e);
  const auto Pe = build_P_in(c, e);
  w.eps_Q = to_plane(Qe);
  w.eps_P = to_plane(Pe);
  w.eps_R = to_plane(build_R_in(c, Qe, e));
  const PlaneCurvePoly eps_QP = to_plane(Qe * Pe);

  const auto t1 = plane_exact_divide(w.eps_R, eps_QP);
  if (!t1) throw Error(ErrorKind::NotSymmetric, "eps(R) is not divisible by eps(QP)");
  w.T1 = *t1;
  w.T3 = PlaneCurvePoly::L(1) + PlaneCurvePoly::L(-1) - PlaneCurvePoly(2);
  w.T2 = to_plane(specialize(w.P_factors[0], e));

  const std::int64_t rs = c.r * c.s;
  if (w.tag == CaseTag::S2) {
    w.k = w.m;
    w.exp_T1 = w.m - 1;
    w.exp_T2 = w.m - 1;
    w.exp_T3 = 0;
    const PlaneCurvePoly displayed =
        PlaneCurvePoly::monomial(1, 2 * c.r, 1) + PlaneCurvePoly::monomial(1, -2 * c.r, -1) - PlaneCurvePoly(2);
    if (!(w.T1 == displayed)) {
      w.notes.push_back("eps(R)/eps(QP) = " + w.T1.to_string() + " differs from the displayed factor " +
                        displayed.to_string() + "; S uses the computed factor");
    }
  } else {
    w.k = std::max<std::int64_t>(w.m, 2);
    w.exp_T1 = w.k - 1;
    w.exp_T2 = w.k - 2;
    w.exp_T3 = w.k - w.m;
    const PlaneCurvePoly displayed =
        PlaneCurvePoly::monomial(1, 2 * rs, 2) + PlaneCurvePoly::monomial(1, -2 * rs, -2) - PlaneCurvePoly(2);
    if (!(w.T1 == displayed)) {
      w.notes.push_back("eps(R)/eps(QP) = " + w.T1.to_string() + " differs from " + displayed.to_string());
    }
    if (!(w.eps_P == w.T2 * w.T2)) w.notes.push_back("eps(P) is not the square of eps(P_1)");
  }
  w.power = 2 * w.k;
  if (!(w.eps_Q == pow(w.T3, static_cast<unsigned>(w.m)))) w.notes.push_back("eps(Q) != (L + L^-1 - 2)^m");
  w.eps_S = pow(w.T1, static_cast<unsigned>(w.exp_T1)) * pow(w.T2, static_cast<unsigned>(w.exp_T2)) *
            pow(w.T3, static_cast<unsigned>(w.exp_T3));

  if (mode == VerifyMode::Symbolic) {
    const SymbolicDomain d;
    w.Q = annihilator_in(w.frequencies, d);
    w.R = build_R_in(c, *w.Q, d);
    w.S = assemble_S(w, d);
    w.SR = *w.S * *w.R;
  }
  return w;
}

// ---------------------------------------------------------------- annihilation

namespace {

template <class D>
bool is_zero_at(const BasicTorus<D>& R, SeqEvaluator<D>& ev, const SeqExpr& jc, std::int64_t n) {
  const auto v = apply_to_sequence(R, [&](std::int64_t m) { return ev(jc, m); }, n);
  return R.domain().is_zero(v);
}

template <class D>
BasicTorus<D> mutated(BasicTorus<D> R) {
  auto& terms = R.mutable_terms();
  if (terms.empty()) return BasicTorus<D>::one(R.domain());
  auto& slot = terms[terms.size() / 2].second;
  slot = R.domain().add(slot, R.domain().one());
  return R;
}

struct PointResult {
  std::vector<bool> zero;
  bool sigma_ok = false;
  bool mutation_caught = false;
};

template <class D>
PointResult check_point(const BasicTorus<D>& R, SeqEvaluator<D>& ev, const SeqExpr& jc, std::int64_t lo,
                        std::int64_t hi) {
  PointResult pr;
  pr.sigma_ok = R == R.sigma();
  for (std::int64_t n = lo; n <= hi; ++n) pr.zero.push_back(is_zero_at(R, ev, jc, n));
  const BasicTorus<D> bad = mutated(R);
  for (std::int64_t n = lo; n <= hi && !pr.mutation_caught; ++n) pr.mutation_caught = !is_zero_at(bad, ev, jc, n);
  return pr;
}

}  // namespace

AnnihilationReport verify_annihilation(const WitnessBundle& w, std::int64_t lo, std::int64_t hi, VerifyMode mode,
                                       const std::vector<mpq_class>& t0s, unsigned parallelism) {
  const auto start = Clock::now();
  AnnihilationReport rep;
  rep.mode = mode;
  for (std::int64_t n = lo; n <= hi; ++n) rep.colors.push_back(n);
  const SeqExpr jc = jones_seq(w.params.knot());
  std::vector<PointResult> results;
  if (mode == VerifyMode::Symbolic) {
    const SymbolicDomain d;
    const TorusElement R = w.R ? *w.R : build_R_in(w.params, annihilator_in(w.frequencies, d), d);
    rep.points.push_back("symbolic");
    results.push_back(check_point(R, symbolic_evaluator(), jc, lo, hi));
  } else {
    if (t0s.empty()) throw Error(ErrorKind::InvalidParams, "specialized mode needs at least one t0");
    auto task = [&w, &jc, lo, hi](mpq_class t0) {
      const RationalDomain d(t0);
      const auto R = build_R_in(w.params, annihilator_in(w.frequencies, d), d);
      SeqEvaluator<RationalDomain> ev(d);
      return check_point(R, ev, jc, lo, hi);
    };
    std::vector<std::future<PointResult>> pending;
    for (const auto& t0 : t0s) {
      rep.points.push_back(t0.get_str());
      if (pending.size() >= std::max(1U, parallelism)) {
        results.push_back(pending.front().get());
        pending.erase(pending.begin());
      }
      pending.push_back(std::async(parallelism > 1 ? std::launch::async : std::launch::deferred, task, t0));
    }
    for (auto& f : pending) results.push_back(f.get());
  }
  rep.sigma_R = true;
  rep.mutation_caught = true;
  for (const auto& pr : results) {
    rep.zero.push_back(pr.zero);
    rep.ok = rep.ok && std::all_of(pr.zero.begin(), pr.zero.end(), [](bool z) { return z; });
    rep.sigma_R = rep.sigma_R && pr.sigma_ok;
    rep.mutation_caught = rep.mutation_caught && pr.mutation_caught;
  }
  rep.ok = rep.ok && rep.sigma_R && rep.mutation_caught;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

// ---------------------------------------------------------------- epsilon identity

EpsilonReport verify_epsilon_identity(const WitnessBundle& w) {
  EpsilonReport rep;
  rep.symmetry = symmetry_exponents(w.A_C);
  const PlaneCurvePoly x = w.eps_S * w.eps_R;
  // A_C^power as a product of factor powers; each factor is a binomial
  PlaneCurvePoly y(1);
  for (const auto& f : a_polynomial_factors(w.params)) y = y * pow(f, static_cast<unsigned>(w.power));
  const auto q = plane_exact_divide(x, y);
  if (!q) {
    rep.detail = "eps(S) eps(R) is not divisible by A_C^" + std::to_string(w.power);
    return rep;
  }
  rep.divisible = true;
  const auto mono = q->as_monomial();
  if (!mono || abs(std::get<0>(*mono)) != 1) {
    rep.detail = "quotient is not a unit monomial: " + (q->size() <= 8 ? q->to_string() : std::to_string(q->size()) + " terms");
    return rep;
  }
  rep.monomial = true;
  rep.quotient = {std::get<0>(*mono) > 0 ? 1 : -1, std::get<1>(*mono), std::get<2>(*mono)};
  const std::int64_t half = w.power / 2;
  rep.witness_arithmetic = rep.quotient.a_exp == rep.symmetry.a * half && rep.quotient.b_exp == rep.symmetry.b * half;
  const auto& c = w.params;
  if (w.tag == CaseTag::OddS_QBig) {
    rep.closed_form = rep.quotient.a_exp == 2 * (c.r + c.p * c.q * c.s) * c.s * w.k && rep.quotient.b_exp == -5 * w.k;
  } else if (w.tag == CaseTag::S2) {
    rep.closed_form = rep.quotient.a_exp == 2 * (c.r + 2 * c.p * c.q) * w.m && rep.quotient.b_exp == -3 * w.m;
  }
  rep.detail = "quotient " + q->to_string();
  return rep;
}

// ---------------------------------------------------------------- shift operators

std::vector<FitReport> verify_shift_lemmas(std::int64_t p, std::int64_t q, std::int64_t m_max, const FitOptions& opts) {
  CableParams{p, q, 1, 2}.validate();
  const SymbolicDomain d;
  const SeqExpr jt = jones_seq(CableKnot::torus(p, q));
  std::vector<FitReport> out;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const TorusElement op = TorusElement::L(d, 2 * m) -
                            TorusElement::tpow(d, -4 * p * q * m * m) * TorusElement::M(d, -2 * p * q * m);
    out.push_back(fit(apply_seq(op, jt), opts));
  }
  if (q == 2) {
    for (std::int64_t m = 1; m <= m_max; ++m) {
      const int sign = m % 2 == 0 ? 1 : -1;
      const TorusElement op = TorusElement::L(d, m) - TorusElement::scalar(d, LaurentScalar(sign)) *
                                                          TorusElement::tpow(d, -2 * p * m * m) *
                                                          TorusElement::M(d, -2 * p * m);
      out.push_back(fit(apply_seq(op, jt), opts));
    }
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

bool StructuredReport::passed() const {
  return admissible && !stages.empty() &&
         std::all_of(stages.begin(), stages.end(), [](const StageReport& s) { return s.status == "pass"; });
}

StructuredReport strong_aj_verify(const CableParams& c, const VerifyConfig& cfg) {
  StructuredReport rep;
  rep.params = c;
  try {
    rep.case_name = to_string(case_tag(c));
  } catch (const Error&) {
    rep.exit_code = 2;
    throw;
  }
  rep.admissible = c.admissible();
  if (!rep.admissible) {
    rep.exit_code = 2;
    rep.stages.push_back({"admissibility", "fail", {{"reason", "inadmissible parameters: r in (0, pqs)"}}, 0});
    return rep;
  }
  auto stage = [&rep](const std::string& name, bool ok, nlohmann::json details, Clock::time_point start,
                      int fail_code = 1) {
    rep.stages.push_back({name, ok ? "pass" : "fail", std::move(details), ms_since(start)});
    if (!ok && rep.exit_code == 0) rep.exit_code = fail_code;
    return ok;
  };

  auto t = Clock::now();
  const IdentityReport split = verify_cable_splitting(c, cfg.lo, cfg.hi);
  nlohmann::json sd{{"identity", split.identity}, {"checked", split.checked}};
  if (split.first_failure) sd["first_failure"] = *split.first_failure;
  if (!stage("cable_splitting", split.ok, sd, t)) return rep;

  t = Clock::now();
  const MembershipReport mem = verify_P_membership(c, cfg.fit);
  rep.fits = mem.factor_fits;
  if (c.s != 2) rep.fits.insert(rep.fits.end(), mem.product_fits.begin(), mem.product_fits.end());
  {
    nlohmann::json details = nlohmann::json::array();
    int code = 1;
    for (const auto& f : rep.fits) {
      details.push_back({{"sequence", f.label}, {"status", to_string(f.status)}, {"support_size", f.support.size()}});
      if (f.status != FitStatus::Member) code = 3;
    }
    if (!stage("P_membership", mem.ok(), {{"fits", details}}, t, code)) return rep;
  }

  t = Clock::now();
  std::int64_t predicted_m = 0;
  for (const auto& f : mem.product_fits) predicted_m += static_cast<std::int64_t>(f.support.size());
  const VerifyMode mode =
      cfg.mode.value_or(std::max<std::int64_t>(predicted_m, 1) <= cfg.symbolic_m_limit ? VerifyMode::Symbolic
                                                                                       : VerifyMode::Specialized);
  rep.mode = to_string(mode);
  WitnessBundle w = build_witness(c, mem, mode);
  rep.m = w.m;
  rep.k = w.k;
  rep.power = w.power;
  {
    bool ok = true;
    nlohmann::json d{{"m", w.m}, {"k", w.k}, {"power", w.power}, {"notes", w.notes}};
    const bool sigma_P = w.P == w.P.sigma();
    d["sigma_P"] = sigma_P;
    ok = ok && sigma_P;
    if (w.P_factors.size() == 2) {
      const bool commute = w.P_factors[0] * w.P_factors[1] == w.P_factors[1] * w.P_factors[0];
      d["P1P2_commute"] = commute;
      ok = ok && commute;
    }
    bool sigma_S_factors = true;
    for (const auto& f : w.S_factors()) sigma_S_factors = sigma_S_factors && f == f.sigma();
    d["sigma_S_factors"] = sigma_S_factors;
    ok = ok && sigma_S_factors;
    if (w.Q) {
      const bool sq = *w.Q == w.Q->sigma(), sr = *w.R == w.R->sigma(), ss = *w.S == w.S->sigma(),
                 ssr = *w.SR == w.SR->sigma();
      const bool eps = epsilon(*w.Q) == w.eps_Q && epsilon(*w.R) == w.eps_R && epsilon(*w.S) == w.eps_S;
      d["sigma_Q"] = sq;
      d["sigma_R"] = sr;
      d["sigma_S"] = ss;
      d["sigma_SR"] = ssr;
      d["epsilon_consistent"] = eps;
      ok = ok && sq && sr && ss && ssr && eps;
    }
    d["eps_Q_power"] = w.eps_Q == pow(w.T3, static_cast<unsigned>(w.m));
    ok = ok && d["eps_Q_power"].get<bool>();
    if (!stage("witness", ok, d, t)) return rep;
  }

  t = Clock::now();
  const AnnihilationReport ann = verify_annihilation(w, cfg.lo, cfg.hi, mode, cfg.t0s, cfg.parallelism);
  {
    nlohmann::json d{{"mode", to_string(mode)},  {"points", ann.points},          {"colors", ann.colors},
                     {"zero", ann.zero},         {"sigma_R", ann.sigma_R},         {"mutation_caught", ann.mutation_caught}};
    if (!stage("annihilation", ann.ok, d, t)) return rep;
  }

  t = Clock::now();
  const EpsilonReport eps = verify_epsilon_identity(w);
  rep.monomial = eps.quotient;
  rep.symmetry = eps.symmetry;
  {
    nlohmann::json d{{"divisible", eps.divisible},
                     {"unit_monomial", eps.monomial},
                     {"witness_arithmetic", eps.witness_arithmetic},
                     {"detail", eps.detail}};
    if (eps.closed_form) d["closed_form"] = *eps.closed_form;
    stage("epsilon_identity", eps.ok(), d, t);
  }
  return rep;
}

nlohmann::json to_json(const StructuredReport& r) {
  nlohmann::json j;
  j["params"] = {{"p", r.params.p}, {"q", r.params.q}, {"r", r.params.r}, {"s", r.params.s}};
  j["case"] = r.case_name;
  j["admissible"] = r.admissible;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : r.stages) {
    j["stages"].push_back({{"name", s.name}, {"status", s.status}, {"details", s.details}, {"elapsed_ms", s.elapsed_ms}});
  }
  j["fits"] = nlohmann::json::array();
  for (const auto& f : r.fits) j["fits"].push_back(to_json(f));
  j["m"] = r.m;
  j["k"] = r.k;
  j["power"] = r.power;
  j["monomial"] = {{"eta", r.monomial.eta}, {"a_exp", r.monomial.a_exp}, {"b_exp", r.monomial.b_exp}};
  j["symmetry"] = {{"eta", r.symmetry.eta}, {"a", r.symmetry.a}, {"b", r.symmetry.b}};
  j["mode"] = r.mode;
  j["exit_code"] = r.exit_code;
  return j;
}

StructuredReport structured_report_from_json(const nlohmann::json& j) {
  StructuredReport r;
  const auto& p = j.at("params");
  r.params = {p.at("p").get<std::int64_t>(), p.at("q").get<std::int64_t>(), p.at("r").get<std::int64_t>(),
              p.at("s").get<std::int64_t>()};
  r.case_name = j.at("case").get<std::string>();
  r.admissible = j.at("admissible").get<bool>();
  for (const auto& s : j.at("stages")) {
    r.stages.push_back({s.at("name").get<std::string>(), s.at("status").get<std::string>(), s.at("details"),
                        s.at("elapsed_ms").get<double>()});
  }
  for (const auto& f : j.at("fits")) r.fits.push_back(fit_report_from_json(f));
  r.m = j.at("m").get<std::int64_t>();
  r.k = j.at("k").get<std::int64_t>();
  r.power = j.at("power").get<std::int64_t>();
  const auto& mo = j.at("monomial");
  r.monomial = {mo.at("eta").get<int>(), mo.at("a_exp").get<std::int64_t>(), mo.at("b_exp").get<std::int64_t>()};
  const auto& sy = j.at("symmetry");
  r.symmetry = {sy.at("eta").get<int>(), sy.at("a").get<std::int64_t>(), sy.at("b").get<std::int64_t>()};
  r.mode = j.at("mode").get<std::string>();
  r.exit_code = j.value("exit_code", 0);
  return r;
}

// ---------------------------------------------------------------- instantiations

#define AJT_INSTANTIATE(D)                                                                          \
  template std::vector<BasicTorus<D>> build_P_factors<D>(const CableParams&, const D&);            \
  template BasicTorus<D> build_P_in<D>(const CableParams&, const D&);                              \
  template BasicTorus<D> build_mu<D>(const CableParams&, const D&);                                \
  template BasicTorus<D> build_X<D>(const CableParams&, const D&);                                 \
  template BasicTorus<D> build_R_in<D>(const CableParams&, const BasicTorus<D>&, const D&);

AJT_INSTANTIATE(SymbolicDomain)
AJT_INSTANTIATE(RationalDomain)
AJT_INSTANTIATE(ModularDomain)
AJT_INSTANTIATE(EpsilonDomain)

#undef AJT_INSTANTIATE

}  // namespace ajt
