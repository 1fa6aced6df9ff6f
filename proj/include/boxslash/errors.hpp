#pragma once

#include <stdexcept>
#include <string>

namespace boxslash {

// Malformed arguments: self-loops, partial colourings, duplicate elements,
// length mismatches.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance too large for the desk-scale limits.
class size_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A subtree selection that does not give uniform per-level degrees.
class shape_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The hypotheses of a lemma-backed operation are not met by the input.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pass or derived table disagrees with itself (e.g. two witnesses for the
// same Z entry point in different directions).
class inconsistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hypotheses held but the guaranteed conclusion did not. Either the input
// broke an unchecked assumption or the implementation is wrong.
class lemma_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A subtree pass could not keep the requested number of children at some
// level. Expected at desk scale: the guaranteed degrees are tower-sized.
class pass_failure : public std::runtime_error {
 public:
  pass_failure(int level, const std::string& what)
      : std::runtime_error("level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

}  // namespace boxslash
