#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orl {

// Default cap on ground rule instances produced by any grounding step.
inline constexpr std::size_t kDefaultGroundingBudget = 1'000'000;

struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;
};

std::string to_string(const SourceLocation& loc);

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLocation loc, const std::string& message);

  const SourceLocation& location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  SourceLocation loc_;
  std::string message_;
};

// A grounding or model-enumeration step would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by operations that return a plain boolean (e.g. coverage) when the
// knowledge base has no NM-model at all.
class InconsistentKnowledgeBase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orl
