#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plasmic {

/// Malformed or axiom-violating input data.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Upper bound on the number of search nodes an enumeration may visit.
struct Budget {
  std::uint64_t limit = kDefaultBudget;
};

/// Counts search nodes against a Budget and throws once it is exhausted.
class BudgetMeter {
 public:
  BudgetMeter(Budget budget, std::string_view what) : limit_(budget.limit), what_(what) {}

  void charge(std::uint64_t nodes = 1) {
    used_ += nodes;
    if (used_ > limit_) {
      throw BudgetExceeded(what_ + ": search budget of " + std::to_string(limit_) +
                           " nodes exceeded");
    }
  }

  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  std::string what_;
};

}  // namespace plasmic
