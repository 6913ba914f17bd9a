#pragma once

// Sequence expressions: colored Jones sequences, exponential polynomials, affine
// reindexing and torus-operator application, evaluated in any coefficient domain.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ajt/error.hpp"
#include "ajt/jones.hpp"
#include "ajt/torus.hpp"

namespace ajt {

struct SeqNode;
using SeqExpr = std::shared_ptr<const SeqNode>;

struct SeqNode {
  struct Jones {
    CableKnot knot;
  };
  /// sum_k c_k t^(2kn)
  struct ExpPoly {
    std::map<std::int64_t, LaurentScalar> terms;
  };
  /// f(a n + b)
  struct Reindex {
    SeqExpr inner;
    std::int64_t a;
    std::int64_t b;
  };
  struct Apply {
    TorusElement op;
    SeqExpr inner;
  };
  std::variant<Jones, ExpPoly, Reindex, Apply> node;
  std::string label;
};

SeqExpr jones_seq(const CableKnot& knot);
SeqExpr exp_poly_seq(std::map<std::int64_t, LaurentScalar> terms);
SeqExpr reindex_seq(SeqExpr inner, std::int64_t a, std::int64_t b);
SeqExpr apply_seq(const TorusElement& op, SeqExpr inner);

/// Parses an exponential-polynomial expression in t and n, e.g. "t^{2n}+t^{-2n}" or "5 t^4".
/// Exponents of t are affine in n with even n-coefficient.
SeqExpr parse_seq_expr(std::string_view text);

std::string describe(const SeqExpr& e);

/// Memoized evaluation of sequence expressions in domain D.
template <class D>
class SeqEvaluator {
 public:
  using value_type = typename D::value_type;

  explicit SeqEvaluator(D domain) : domain_(domain), own_(std::make_unique<JonesTable<D>>(domain)), jones_(own_.get()) {}
  SeqEvaluator(D domain, JonesTable<D>& shared) : domain_(std::move(domain)), jones_(&shared) {}

  const D& domain() const noexcept { return domain_; }

  value_type operator()(const SeqExpr& e, std::int64_t n) {
    const SeqNode* key = e.get();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        auto jt = it->second.find(n);
        if (it->second.end() != jt) return jt->second;
      }
    }
    value_type v = compute(*e, n);
    std::lock_guard<std::mutex> lock(mu_);
    keep_.emplace(key, e);
    return memo_[key].emplace(n, std::move(v)).first->second;
  }

 private:
  value_type compute(const SeqNode& node, std::int64_t n) {
    if (const auto* j = std::get_if<SeqNode::Jones>(&node.node)) return (*jones_)(j->knot, n);
    if (const auto* x = std::get_if<SeqNode::ExpPoly>(&node.node)) {
      std::vector<std::pair<std::int64_t, value_type>> terms;
      for (const auto& [k, c] : x->terms) terms.emplace_back(2 * k * n, domain_.lift(c));
      return domain_.weighted_sum(terms);
    }
    if (const auto* r = std::get_if<SeqNode::Reindex>(&node.node)) return (*this)(r->inner, r->a * n + r->b);
    const auto& ap = std::get<SeqNode::Apply>(node.node);
    const BasicTorus<D>& op = specialized(ap.op);
    return apply_to_sequence(op, [&](std::int64_t m) { return (*this)(ap.inner, m); }, n);
  }

  const BasicTorus<D>& specialized(const TorusElement& op) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ops_.find(&op);
    if (it != ops_.end()) return it->second;
    return ops_.emplace(&op, specialize(op, domain_)).first->second;
  }

  D domain_;
  std::unique_ptr<JonesTable<D>> own_;
  JonesTable<D>* jones_;
  std::mutex mu_;
  std::unordered_map<const SeqNode*, std::unordered_map<std::int64_t, value_type>> memo_;
  std::unordered_map<const SeqNode*, SeqExpr> keep_;  // pins nodes so keys stay unique
  std::map<const TorusElement*, BasicTorus<D>> ops_;
};

/// Symbolic evaluator sharing the process-wide colored Jones memo.
SeqEvaluator<SymbolicDomain>& symbolic_evaluator();

}  // namespace ajt
