// Shared plumbing: configuration, error types, deterministic RNG, digests.
#ifndef CATLAB_CORE_HPP_
#define CATLAB_CORE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catlab {

// Search budgets. Every bound is overridable from the CLI; defaults follow
// the desk profile (value_bound 2, shape bound 3, category bound 4,
// 1e7-comparison iteration cap, universality checked below carrier 12).
struct Config {
  int value_bound = 2;
  int shape_bound = 3;
  int category_bound = 4;
  long long iteration_cap = 10'000'000;
  int universality_threshold = 12;
  int universality_apex = 2;

  static const Config& desk();
  static const Config& deep();
};

// Raised when a bounded search runs out of its iteration budget. Distinct
// from a completed-but-inconclusive search, which yields a ConsistentUpTo
// verdict instead.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Structured validation failure; `kind` is a stable tag (NonAssociative,
// BadIdentity, ...) and `detail` names the offending entry in user names.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}
  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
};

// Counts comparisons inside search loops and trips BudgetError at the cap.
class IterationGuard {
 public:
  explicit IterationGuard(long long cap) : cap_(cap) {}
  void tick(long long n = 1) {
    count_ += n;
    if (count_ > cap_) throw BudgetError("iteration budget exceeded");
  }
  long long count() const { return count_; }

 private:
  long long cap_;
  long long count_ = 0;
};

// xorshift64* — deterministic across platforms, unlike std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  // value in [0, n), n >= 1
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

long long checked_pow(long long base, int exp, long long cap);

}  // namespace catlab

#endif  // CATLAB_CORE_HPP_
