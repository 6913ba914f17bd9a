#pragma once

// Colored Jones polynomials of iterated cables of the unknot.
//
//   J_{K^(r,s)}(n) = sum_{twoj} t^(rs twoj^2 + 2r twoj - rs(n^2-1)) J_K(s twoj + 1),
//   twoj = -(n-1), -(n-3), ..., n-1, with J_U(n) = [n].

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ajt/domain.hpp"
#include "ajt/laurent.hpp"
#include "ajt/sequence.hpp"

namespace ajt {

/// (((U^(r1,s1))^(r2,s2))...); empty slopes is the unknot.
struct CableKnot {
  std::vector<std::pair<std::int64_t, std::int64_t>> slopes;

  static CableKnot unknot() { return {}; }
  static CableKnot torus(std::int64_t p, std::int64_t q) { return {{{p, q}}}; }
  static CableKnot cable(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    return {{{p, q}, {r, s}}};
  }

  /// Throws InvalidKnot unless gcd(r_i, s_i) = 1 and s_i >= 2 for every slope.
  void validate() const;
  /// Canonical notation: U, T(p,q), C(p,q;r,s), or K[(r1,s1),...] for deeper cables.
  std::string encoding() const;
  CableKnot companion() const { return {{slopes.begin(), slopes.end() - 1}}; }
  friend bool operator==(const CableKnot& x, const CableKnot& y) { return x.slopes == y.slopes; }
};

/// Parses U, T(p,q), C(p,q;r,s). Torus parameters need |p| > q >= 2 and gcd(p,q) = 1.
CableKnot parse_knot(std::string_view text);

struct CableParams {
  std::int64_t p = 0, q = 0, r = 0, s = 0;

  /// Throws InvalidParams when |p| > q >= 2, gcd(p,q) = 1, gcd(r,s) = 1, s >= 2 fails.
  void validate() const;
  /// r < 0 or r > pqs.
  bool admissible() const { return r < 0 || r > p * q * s; }
  CableKnot knot() const { return CableKnot::cable(p, q, r, s); }
  std::string to_string() const;
};

/// [n] for any integer n (odd in n).
LaurentScalar bracket(std::int64_t n);

/// rs twoj^2 + 2r twoj, the exponent 4rj(js+1) with twoj = 2j.
inline std::int64_t half_integer_exponent(std::int64_t r, std::int64_t s, std::int64_t twoj) {
  return r * s * twoj * twoj + 2 * r * twoj;
}

/// Memoized colored Jones sequences over a coefficient domain.
template <class D>
class JonesTable {
 public:
  explicit JonesTable(D domain = D{}) : domain_(std::move(domain)) {}

  const D& domain() const noexcept { return domain_; }

  SequencePtr<D> sequence(const CableKnot& knot) {
    knot.validate();
    const std::string key = knot.encoding();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = seqs_.find(key);
      if (it != seqs_.end()) return it->second;
    }
    typename BasicColorSequence<D>::Generator gen;
    if (knot.slopes.empty()) {
      const D d = domain_;
      gen = [d](std::int64_t n) { return d.bracket(n); };
    } else {
      SequencePtr<D> inner = sequence(knot.companion());
      const auto [r, s] = knot.slopes.back();
      const D d = domain_;
      gen = [d, inner, r = r, s = s](std::int64_t n) {
        std::vector<std::pair<std::int64_t, typename D::value_type>> terms;
        terms.reserve(static_cast<std::size_t>(n));
        const std::int64_t base = -r * s * (n * n - 1);
        for (std::int64_t twoj = -(n - 1); twoj <= n - 1; twoj += 2) {
          terms.emplace_back(base + half_integer_exponent(r, s, twoj), (*inner)(s * twoj + 1));
        }
        return d.weighted_sum(terms);
      };
    }
    auto seq = std::make_shared<const BasicColorSequence<D>>(domain_, std::move(gen), true);
    std::lock_guard<std::mutex> lock(mu_);
    return seqs_.emplace(key, std::move(seq)).first->second;
  }

  typename D::value_type operator()(const CableKnot& knot, std::int64_t n) { return (*sequence(knot))(n); }

  std::vector<std::pair<std::string, SequencePtr<D>>> all() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {seqs_.begin(), seqs_.end()};
  }

 private:
  D domain_;
  mutable std::mutex mu_;
  std::map<std::string, SequencePtr<D>> seqs_;
};

/// Process-wide symbolic table; seeded from AJT_CACHE_DIR on first use when set.
JonesTable<SymbolicDomain>& symbolic_jones();

LaurentScalar colored_jones(const CableKnot& knot, std::int64_t n);
/// J_{T(p,q)}; throws InvalidParams unless |p| > q >= 2 and gcd(p,q) = 1.
SequencePtr<SymbolicDomain> torus_jones(std::int64_t p, std::int64_t q);

/// Writes the symbolic memo to AJT_CACHE_DIR (no-op when unset). Returns entries written.
std::size_t save_jones_cache();
/// Cache file I/O, exposed for tests. Loading returns false (and loads nothing) when the
/// file is missing, unreadable, of another version, or fails its checksum.
bool load_jones_cache_file(const std::string& path, JonesTable<SymbolicDomain>& table);
std::size_t save_jones_cache_file(const std::string& path, const JonesTable<SymbolicDomain>& table);

}  // namespace ajt
