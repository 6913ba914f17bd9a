#include "ajt/expfit.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "ajt/error.hpp"

namespace ajt {

RatScalar ExpPolynomial::evaluate(std::int64_t n) const {
  RatScalar acc;
  for (const auto& [k, c] : terms) acc = acc + c * RatScalar(LaurentScalar::tpow(2 * k * n));
  return acc;
}

bool ExpPolynomial::all_laurent() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& kv) { return kv.second.is_laurent(); });
}

const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::Member: return "Member";
    case FitStatus::NotMember: return "NotMember";
    case FitStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::optional<bool> FitReport::laurent_coefficients() const {
  if (!coefficients) return std::nullopt;
  return coefficients->all_laurent();
}

namespace {

struct RationalField {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
  bool is_zero(const value_type& a) const { return a == 0; }
};

// Solves sum_j mu_j z_j^i = b_i (i = 0..N-1) for distinct nodes z_j in O(N^2).
template <class F>
std::vector<typename F::value_type> solve_transposed_vandermonde(const F& f,
                                                                 const std::vector<typename F::value_type>& z,
                                                                 const std::vector<typename F::value_type>& b) {
  using V = typename F::value_type;
  const std::size_t n = z.size();
  // master polynomial prod (x - z_j), coefficients low to high
  std::vector<V> a(n + 1, f.zero());
  a[0] = f.one();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i > 0; --i) a[i] = f.sub(a[i - 1], f.mul(z[j], a[i]));
    a[0] = f.sub(f.zero(), f.mul(z[j], a[0]));
  }
  std::vector<V> mu(n, f.zero());
  std::vector<V> q(n, f.zero());
  for (std::size_t j = 0; j < n; ++j) {
    // q = master / (x - z_j) by synthetic division
    q[n - 1] = a[n];
    for (std::size_t i = n - 1; i > 0; --i) q[i - 1] = f.add(a[i], f.mul(z[j], q[i]));
    V num = f.zero();
    V den = f.zero();
    for (std::size_t i = n; i-- > 0;) {
      num = f.add(num, f.mul(q[i], b[i]));
      den = f.add(f.mul(den, z[j]), q[i]);
    }
    mu[j] = f.mul(num, f.inv(den));
  }
  return mu;
}

template <class F>
typename F::value_type power(const F& f, typename F::value_type x, std::int64_t e) {
  if (e < 0) {
    x = f.inv(x);
    e = -e;
  }
  typename F::value_type r = f.one();
  while (e != 0) {
    if (e & 1) r = f.mul(r, x);
    e >>= 1;
    if (e != 0) x = f.mul(x, x);
  }
  return r;
}

struct ProbeResult {
  bool residual_ok = false;
  std::vector<std::int64_t> support;
};

template <class F>
ProbeResult probe_in_field(const F& f, const typename F::value_type& y, const std::vector<typename F::value_type>& vals,
                           std::int64_t n0, std::int64_t K, std::int64_t extra) {
  using V = typename F::value_type;
  const std::size_t n = static_cast<std::size_t>(2 * K + 1);
  std::vector<V> z(n);
  for (std::int64_t j = -K; j <= K; ++j) z[static_cast<std::size_t>(j + K)] = power(f, y, j);
  // distinct nodes: y^d != 1 for 1 <= d <= 2K
  V yd = f.one();
  for (std::int64_t d = 1; d <= 2 * K; ++d) {
    yd = f.mul(yd, y);
    if (f.is_zero(f.sub(yd, f.one()))) throw Error(ErrorKind::DegenerateNodes, "interpolation nodes coincide");
  }
  const std::vector<V> b(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(n));
  const std::vector<V> mu = solve_transposed_vandermonde(f, z, b);
  ProbeResult res;
  for (std::size_t j = 0; j < n; ++j) {
    if (!f.is_zero(mu[j])) res.support.push_back(static_cast<std::int64_t>(j) - K);
  }
  // mu_j = lambda_j z_j^n0, so f(n0 + i) = sum_j mu_j z_j^i
  res.residual_ok = true;
  for (std::int64_t e = 0; e < extra; ++e) {
    const std::int64_t i = 2 * K + 1 + e;
    V s = f.zero();
    for (std::size_t j = 0; j < n; ++j) {
      if (!f.is_zero(mu[j])) s = f.add(s, f.mul(mu[j], power(f, z[j], i)));
    }
    if (!f.is_zero(f.sub(s, vals[static_cast<std::size_t>(i)]))) {
      res.residual_ok = false;
      break;
    }
  }
  (void)n0;
  return res;
}

// Probe evaluators persist across calls so colored Jones values mod p are computed once.
SeqEvaluator<ModularDomain>& modular_evaluator(std::uint64_t t0) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<SeqEvaluator<ModularDomain>>> evaluators;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = evaluators[t0];
  if (!slot) slot = std::make_unique<SeqEvaluator<ModularDomain>>(ModularDomain(t0));
  return *slot;
}

std::vector<std::uint64_t> probe_points(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, mod::kMersenne61 - 2);
  return {dist(rng), dist(rng)};
}

// Applies prod_{k in ks} (L - t^2k) to consecutive values g(n0), g(n0+1), ...
std::vector<LaurentScalar> annihilate(std::vector<LaurentScalar> g, const std::vector<std::int64_t>& ks) {
  for (std::int64_t k : ks) {
    if (g.empty()) break;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) g[i] = g[i + 1] - g[i].shifted(2 * k);
    g.pop_back();
  }
  return g;
}

ExpPolynomial exact_coefficients(const std::vector<LaurentScalar>& h, const std::vector<std::int64_t>& support,
                                 std::int64_t n0) {
  ExpPolynomial out;
  for (std::size_t j = 0; j < support.size(); ++j) {
    std::vector<std::int64_t> others;
    std::vector<std::int64_t> orders;
    LaurentScalar den = LaurentScalar::tpow(2 * support[j] * n0);
    for (std::size_t l = 0; l < support.size(); ++l) {
      if (l == j) continue;
      others.push_back(support[l]);
      orders.push_back(2 * (support[j] - support[l]));
      den = den * (LaurentScalar::tpow(2 * support[j]) - LaurentScalar::tpow(2 * support[l]));
    }
    std::vector<LaurentScalar> g(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(support.size()));
    const LaurentScalar num = annihilate(std::move(g), others).front();
    out.terms.emplace(support[j], RatScalar(num, den).reduced_by_cyclotomics(orders));
  }
  return out;
}

}  // namespace

FitReport fit(const SeqExpr& f, const FitOptions& opts) {
  if (opts.K0 < 1 || opts.K_max < 1 || opts.extra < 1) {
    throw Error(ErrorKind::InsufficientSamples, "fit needs K0 >= 1, K_max >= 1 and at least one extra point");
  }
  FitReport rep;
  rep.label = describe(f);
  const std::int64_t n0 = opts.window_start;
  const std::vector<std::uint64_t> t0s = probe_points(opts.probe_seed);
  std::vector<std::vector<std::uint64_t>> vals(t0s.size());

  std::int64_t K = std::min(opts.K0, opts.K_max);
  for (;;) {
    rep.K = K;
    const std::int64_t needed = 2 * K + 1 + opts.extra;
    std::vector<ProbeResult> probes;
    for (std::size_t i = 0; i < t0s.size(); ++i) {
      auto& ev = modular_evaluator(t0s[i]);
      const ModularDomain& d = ev.domain();
      while (static_cast<std::int64_t>(vals[i].size()) < needed) {
        vals[i].push_back(ev(f, n0 + static_cast<std::int64_t>(vals[i].size())));
      }
      probes.push_back(probe_in_field(d, d.mul(d.t0(), d.t0()), vals[i], n0, K, opts.extra));
    }
    const bool residual_ok = std::all_of(probes.begin(), probes.end(), [](const auto& p) { return p.residual_ok; });
    if (!residual_ok) {
      if (K >= opts.K_max) {
        rep.status = FitStatus::NotMember;
        rep.window = {n0, n0 + 2 * K};
        rep.note = "residual nonzero on extra points for every bound up to K_max";
        return rep;
      }
      K = std::min(2 * K, opts.K_max);
      continue;
    }
    if (probes[0].support != probes[1].support) {
      rep.status = FitStatus::Inconclusive;
      rep.window = {n0, n0 + 2 * K};
      rep.note = "support probes at independent points disagree";
      return rep;
    }
    rep.support = probes[0].support;
    break;
  }

  // exact confirmation: prod_{k in S} (L - t^2k) kills h on the window plus extra points
  const auto s = static_cast<std::int64_t>(rep.support.size());
  std::vector<LaurentScalar> h;
  h.reserve(static_cast<std::size_t>(s + opts.extra));
  auto& sym = symbolic_evaluator();
  for (std::int64_t n = n0; n < n0 + s + opts.extra; ++n) h.push_back(sym(f, n));
  const std::vector<LaurentScalar> residual = annihilate(h, rep.support);
  rep.window = {n0, n0 + s - 1};
  rep.extra_checks_passed = 0;
  for (const auto& r : residual) {
    if (!r.is_zero()) break;
    ++rep.extra_checks_passed;
  }
  if (rep.extra_checks_passed != opts.extra) {
    rep.status = FitStatus::Inconclusive;
    rep.note = "exact residual nonzero on the probed support";
    return rep;
  }
  rep.status = FitStatus::Member;
  if (rep.support.size() <= opts.coefficient_limit) {
    rep.coefficients = exact_coefficients(h, rep.support, n0);
  } else {
    rep.note = "coefficients omitted for support size " + std::to_string(s);
  }
  return rep;
}

nlohmann::json to_json(const FitReport& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["window"] = {r.window.first, r.window.second};
  j["support"] = r.support;
  j["extra_checks_passed"] = r.extra_checks_passed;
  j["K"] = r.K;
  j["label"] = r.label;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.coefficients) {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [k, v] : r.coefficients->terms) {
      c[std::to_string(k)] = {{"num", v.num().to_string()}, {"den", v.den().to_string()}};
    }
    j["coefficients"] = c;
    j["laurent_coefficients"] = r.coefficients->all_laurent();
  }
  return j;
}

FitReport fit_report_from_json(const nlohmann::json& j) {
  FitReport r;
  const std::string st = j.at("status").get<std::string>();
  if (st == "Member") {
    r.status = FitStatus::Member;
  } else if (st == "NotMember") {
    r.status = FitStatus::NotMember;
  } else if (st == "Inconclusive") {
    r.status = FitStatus::Inconclusive;
  } else {
    throw Error(ErrorKind::ParseError, "unknown fit status " + st);
  }
  r.window = {j.at("window").at(0).get<std::int64_t>(), j.at("window").at(1).get<std::int64_t>()};
  r.support = j.at("support").get<std::vector<std::int64_t>>();
  r.extra_checks_passed = j.at("extra_checks_passed").get<std::int64_t>();
  r.K = j.value("K", std::int64_t{0});
  r.label = j.value("label", std::string());
  r.note = j.value("note", std::string());
  if (j.contains("coefficients")) {
    ExpPolynomial e;
    for (const auto& [k, v] : j.at("coefficients").items()) {
      e.terms.emplace(std::stoll(k), RatScalar(LaurentScalar::parse(v.at("num").get<std::string>()),
                                               LaurentScalar::parse(v.at("den").get<std::string>())));
    }
    r.coefficients = std::move(e);
  }
  return r;
}

std::vector<std::int64_t> support_probe(const SeqExpr& f, std::int64_t n0, const std::vector<mpq_class>& t0s,
                                        std::int64_t K) {
  if (K < 1) throw Error(ErrorKind::InsufficientSamples, "support probe needs K >= 1");
  std::set<std::int64_t> all;
  const RationalField field;
  for (const mpq_class& t0 : t0s) {
    SeqEvaluator<RationalDomain> ev{RationalDomain(t0)};
    std::vector<mpq_class> vals;
    for (std::int64_t i = 0; i < 2 * K + 1; ++i) vals.push_back(ev.domain().to_mpq(ev(f, n0 + i)));
    const ProbeResult pr = probe_in_field(field, mpq_class(t0 * t0), vals, n0, K, 0);
    all.insert(pr.support.begin(), pr.support.end());
  }
  return {all.begin(), all.end()};
}

std::vector<std::int64_t> annihilator_frequencies(const std::vector<std::vector<std::int64_t>>& supports,
                                                  bool* padded) {
  std::vector<std::int64_t> ks;
  for (const auto& s : supports) {
    const std::set<std::int64_t> unique(s.begin(), s.end());
    ks.insert(ks.end(), unique.begin(), unique.end());
  }
  if (padded) *padded = ks.empty();
  if (ks.empty()) ks.push_back(0);
  return ks;
}

Annihilator annihilator_from_support(const std::vector<std::vector<std::int64_t>>& supports) {
  Annihilator a;
  a.frequencies = annihilator_frequencies(supports, &a.padded);
  a.m = static_cast<std::int64_t>(a.frequencies.size());
  a.Q = annihilator_in(a.frequencies, SymbolicDomain{});
  return a;
}

}  // namespace ajt
