#pragma once

// Systems of term equations, their solution sets, the equation theory of a
// tuple set, and the Sol∘Eq closure deciding whether a set is a solution set.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latclone/funclone.hpp"

namespace latclone {

struct Equation {
  OpTable lhs;
  OpTable rhs;
};

struct EquationSystem {
  std::size_t arity = 0;
  std::vector<Equation> equations;

  // Throws ArityMismatch unless every side is `arity`-ary over one carrier.
  void validate(std::size_t carrier) const;
};

// {a ∈ A^n : lhs(a) = rhs(a) for every equation}.
Relation solve(const EquationSystem& system, std::size_t carrier);

// Partition of the clone slice C^(n) by restriction to T: two term operations
// share a block iff they agree on every tuple of T. Blocks appear in order of
// their first member, members ascending; indices refer to `terms`.
struct EqTheory {
  std::size_t arity = 0;
  std::vector<OpTable> terms;
  std::vector<std::vector<std::size_t>> blocks;

  bool holds(std::size_t f, std::size_t g) const;
  std::size_t block_of(std::size_t term) const;
  // One equation per non-first block member, tying it to the block's first member.
  EquationSystem spanning_system() const;
};

EqTheory equations_of(const Relation& T, std::span<const OpTable> generators,
                      std::size_t limit = Limits{}.clone);
EqTheory equations_over(const Relation& T, std::vector<OpTable> slice);

// Sol(Eq(T)): tuples on which every block is constant.
Relation galois_closure(const EqTheory& theory, std::size_t carrier);
Relation galois_closure(const Relation& T, std::span<const OpTable> generators,
                        std::size_t limit = Limits{}.clone);

enum class SolutionSetStatus { solution_set, not_solution_set, unknown };

const char* to_string(SolutionSetStatus status) noexcept;

struct SolutionSetVerdict {
  SolutionSetStatus status = SolutionSetStatus::unknown;
  std::optional<EquationSystem> certificate;  // Eq(T) when T is a solution set
  std::optional<Tuple> gap_tuple;             // least tuple of closure \ T otherwise
  std::optional<Relation> closure;
  std::optional<Relation> gap;                // closure \ T
};

// Degrades to `unknown` when the clone slice overflows `limit`.
SolutionSetVerdict is_solution_set(const Relation& T, std::span<const OpTable> generators,
                                   std::size_t limit = Limits{}.clone);

}  // namespace latclone
