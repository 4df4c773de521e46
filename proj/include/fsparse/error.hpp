#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsparse {

enum class Errc {
  InvalidArgument,
  SingularMatrix,
  DependentInput,
  TooLarge,
  NotBoolean,
  Unsatisfiable,
  BudgetExhausted,
  NotBooleanResult,
  InconsistentExamples,
  IndexOutOfRange,
  SubsetNotInSupport,
  ConstantFunction,
  NonConvergence,
  DegenerateClass,
  TooConcentrated,
  EmptyPosterior,
  ParseError,
  Overflow,
};

std::string_view errc_name(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers (and the
/// CLI exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fsparse
