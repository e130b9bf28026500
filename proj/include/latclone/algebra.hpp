#pragma once

// The algebra equations and formulas are interpreted in: a carrier with its
// meet, plus the join in lattice mode.

#include <optional>
#include <string>
#include <vector>

#include "latclone/finlat.hpp"
#include "latclone/funclone.hpp"

namespace latclone {

enum class Mode { lattice, semilattice };

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& text);

class TermAlgebra {
 public:
  static TermAlgebra lattice(const FiniteLattice& lattice);
  static TermAlgebra semilattice(const FiniteSemilattice& semilattice);
  // The meet-reduct of a lattice.
  static TermAlgebra semilattice(const FiniteLattice& lattice);

  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return meet_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  Elem meet(Elem x, Elem y) const noexcept { return meet_(x, y); }
  Elem join(Elem x, Elem y) const;
  bool leq(Elem x, Elem y) const noexcept { return meet_(x, y) == x; }
  Elem bottom() const noexcept { return bottom_; }
  std::optional<Elem> top() const noexcept { return top_; }

  // {∧} or {∧, ∨} as binary operation tables.
  std::vector<OpTable> generators() const;

 private:
  TermAlgebra(Mode mode, std::vector<std::string> names, BinaryTable meet,
              std::optional<BinaryTable> join, Elem bottom, std::optional<Elem> top);

  Mode mode_;
  std::vector<std::string> names_;
  BinaryTable meet_;
  std::optional<BinaryTable> join_;
  Elem bottom_;
  std::optional<Elem> top_;
};

}  // namespace latclone
