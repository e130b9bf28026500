#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latclone {

enum class Errc {
  bad_spec,
  not_a_lattice,
  axiom_violation,
  not_distributive,
  no_greatest_element,
  bad_index,
  arity_mismatch,
  bad_assignment,
  limit_exceeded,
  syntax_error,
  unknown_variable,
  join_in_semilattice_mode,
  not_boolean,
  is_distributive,
  is_boolean,
  is_distributive_semilattice,
};

const char* to_string(Errc code) noexcept;

// Refusals are principled "no" answers (exit status 2 on the command line),
// as opposed to malformed input.
bool is_refusal(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace latclone
