#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace parikh {

using Vec = std::vector<std::int64_t>;

enum class ErrorKind {
  InvalidInput,
  InvalidRun,
  ResolverFault,
  Precondition,
  InvariantViolation,
  Budget,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

/// Shared step counter for budgeted searches.
class StepBudget {
 public:
  explicit StepBudget(std::uint64_t limit = 1'000'000) : limit_(limit) {}

  /// Returns false once the limit has been crossed.
  bool consume(std::uint64_t n = 1) {
    used_ += n;
    return used_ <= limit_;
  }
  bool exhausted() const { return used_ > limit_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

std::string format_vec(const Vec& v);

}  // namespace parikh
