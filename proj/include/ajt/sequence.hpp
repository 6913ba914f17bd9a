#pragma once

// Lazily memoized discrete functions n -> value.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "ajt/domain.hpp"

namespace ajt {

template <class D>
class BasicColorSequence {
 public:
  using value_type = typename D::value_type;
  using Generator = std::function<value_type(std::int64_t)>;

  /// With `odd` set, f(0) = 0 and f(-n) = -f(n) are enforced; the generator only sees n > 0.
  BasicColorSequence(D domain, Generator gen, bool odd)
      : domain_(std::move(domain)), gen_(std::move(gen)), odd_(odd) {}

  const D& domain() const noexcept { return domain_; }
  bool odd() const noexcept { return odd_; }

  value_type operator()(std::int64_t n) const {
    if (odd_) {
      if (n == 0) return domain_.zero();
      if (n < 0) return domain_.neg(lookup(-n));
    }
    return lookup(n);
  }

  /// Values computed so far (for cache persistence); positive colors only when odd.
  std::vector<std::pair<std::int64_t, value_type>> snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {memo_.begin(), memo_.end()};
  }

  /// Seeds the memo; an existing entry is kept.
  void seed(std::int64_t n, value_type v) const {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(n, std::move(v));
  }

 private:
  value_type lookup(std::int64_t n) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(n);
      if (it != memo_.end()) return it->second;
    }
    // computed outside the lock so generators may recurse into this sequence
    value_type v = gen_(n);
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(n, std::move(v)).first->second;
  }

  D domain_;
  Generator gen_;
  bool odd_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, value_type> memo_;
};

using ColorSequence = BasicColorSequence<SymbolicDomain>;

template <class D>
using SequencePtr = std::shared_ptr<const BasicColorSequence<D>>;

}  // namespace ajt
