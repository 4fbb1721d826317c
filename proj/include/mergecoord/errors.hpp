#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mergecoord {

/// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// A passing order omits/duplicates a vehicle or breaks lane order.
class InvalidOrderError : public std::runtime_error {
 public:
  explicit InvalidOrderError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested arrival time earlier than the minimum access time.
class InfeasibleTimeError : public std::runtime_error {
 public:
  explicit InfeasibleTimeError(const std::string& what) : std::runtime_error(what) {}
};

/// No motion profile (including the fallback, if enabled) can realize the request.
class NoProfileError : public std::runtime_error {
 public:
  explicit NoProfileError(const std::string& what) : std::runtime_error(what) {}
};

/// Arrival rate incompatible with the displaced-exponential headway model.
class InfeasibleRateError : public std::runtime_error {
 public:
  explicit InfeasibleRateError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact integer result does not fit in 64 bits.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Solution-space size exceeds the configured enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t count, std::uint64_t budget, const std::string& context = "")
      : std::runtime_error(make_message(count, budget, context)),
        count_(count),
        budget_(budget) {}

  std::uint64_t count() const { return count_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string make_message(std::uint64_t count, std::uint64_t budget,
                                  const std::string& context) {
    std::string msg = "solution space has " + std::to_string(count) +
                      " orders, exceeding the budget of " + std::to_string(budget);
    if (!context.empty()) msg += " (" + context + ")";
    return msg;
  }

  std::uint64_t count_;
  std::uint64_t budget_;
};

/// Malformed or unreadable configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mergecoord
