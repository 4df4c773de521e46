#include "fsparse/error.hpp"

namespace fsparse {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DependentInput: return "DependentInput";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotBoolean: return "NotBoolean";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotBooleanResult: return "NotBooleanResult";
    case Errc::InconsistentExamples: return "InconsistentExamples";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SubsetNotInSupport: return "SubsetNotInSupport";
    case Errc::ConstantFunction: return "ConstantFunction";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::DegenerateClass: return "DegenerateClass";
    case Errc::TooConcentrated: return "TooConcentrated";
    case Errc::EmptyPosterior: return "EmptyPosterior";
    case Errc::ParseError: return "ParseError";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace fsparse
