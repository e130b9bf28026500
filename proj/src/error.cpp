#include "latclone/error.hpp"

namespace latclone {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::bad_spec: return "BadSpec";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::axiom_violation: return "AxiomViolation";
    case Errc::not_distributive: return "NotDistributive";
    case Errc::no_greatest_element: return "NoGreatestElement";
    case Errc::bad_index: return "BadIndex";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::bad_assignment: return "BadAssignment";
    case Errc::limit_exceeded: return "LimitExceeded";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_variable: return "UnknownVariable";
    case Errc::join_in_semilattice_mode: return "JoinInSemilatticeMode";
    case Errc::not_boolean: return "NotBoolean";
    case Errc::is_distributive: return "IsDistributive";
    case Errc::is_boolean: return "IsBoolean";
    case Errc::is_distributive_semilattice: return "IsDistributiveSemilattice";
  }
  return "Unknown";
}

bool is_refusal(Errc code) noexcept {
  return code == Errc::not_boolean || code == Errc::not_distributive ||
         code == Errc::limit_exceeded;
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(Errc::syntax_error, "at offset " + std::to_string(position) + ": " + message),
      position_(position) {}

}  // namespace latclone
