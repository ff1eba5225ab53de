#ifndef MERLAB_BUDGET_HPP
#define MERLAB_BUDGET_HPP

#include <atomic>
#include <cstdint>
#include <string>

#include "merlab/error.hpp"

namespace merlab {

// Hard cap on elementary work units (structures visited, pair comparisons,
// bijections applied). Shared by all workers of one command.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultLimit = 100'000'000;

  explicit Budget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}
  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  void charge(std::uint64_t units, const char* what = "computation") {
    const std::uint64_t used = used_.fetch_add(units, std::memory_order_relaxed) + units;
    if (used > limit_) {
      throw ResourceLimitError(std::string(what) + " exceeds the resource ceiling of " +
                               std::to_string(limit_) + " elementary evaluations");
    }
  }

  // Refuses up front when a planned amount of work cannot fit.
  void require(std::uint64_t planned, const char* what = "computation") const {
    if (planned > limit_ || used_.load(std::memory_order_relaxed) + planned > limit_) {
      throw ResourceLimitError(std::string(what) + " would need " + std::to_string(planned) +
                               " elementary evaluations, above the ceiling of " +
                               std::to_string(limit_));
    }
  }

  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace merlab

#endif  // MERLAB_BUDGET_HPP
