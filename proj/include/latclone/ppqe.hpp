#pragma once

// Primitive positive formulas over term equations: parsing, brute-force
// evaluation, normalization to inequality systems and quantifier elimination
// over Boolean lattices and distributive (semi)lattices.
//
// Formula syntax (ASCII, whitespace insignificant):
//
//   formula := {"exists" ident+ "."} body
//   body    := "true" | conj
//   conj    := atom {"&" atom} | "(" conj ")"
//   atom    := term ("=" | "<=") term
//   term    := factor {("/\" | "\/") factor}      meet binds tighter than join
//   factor  := ident | "(" term ")"
//
// `s <= t` is stored as the equation s = s /\ t.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "latclone/algebra.hpp"
#include "latclone/finlat.hpp"
#include "latclone/funclone.hpp"

namespace latclone {

// Set of variable indices (bit i = variable i); formulas use at most 32 variables.
using VarSet = std::uint32_t;
inline constexpr std::size_t kMaxVariables = 32;

class Term {
 public:
  enum class Kind { variable, meet, join };

  static Term variable(std::size_t index);
  static Term meet(Term lhs, Term rhs);
  static Term join(Term lhs, Term rhs);

  Kind kind() const noexcept { return node_->kind; }
  std::size_t var() const noexcept { return node_->var; }
  const Term& lhs() const noexcept { return node_->children[0]; }
  const Term& rhs() const noexcept { return node_->children[1]; }

  Elem eval(const TermAlgebra& algebra, std::span<const Elem> assignment) const;
  VarSet variables() const;
  bool uses_join() const;

  // Disjunctive normal form as a list of meets (absorbed, sorted), and dually
  // the conjunctive normal form as a list of joins. Exact in distributive lattices.
  std::vector<VarSet> dnf() const;
  std::vector<VarSet> cnf() const;

 private:
  struct Node {
    Kind kind;
    std::size_t var = 0;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Atom {
  Term lhs;
  Term rhs;
};

// Variables are numbered free first, then bound: free_vars[i] is variable i,
// bound_vars[j] is variable free_vars.size() + j. An empty atom list is truth.
struct PPFormula {
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
  std::vector<Atom> atoms;

  std::size_t var_count() const noexcept { return free_vars.size() + bound_vars.size(); }
  std::vector<std::string> var_names() const;
  bool quantifier_free() const noexcept { return bound_vars.empty(); }
};

// Without `declared`, free variables are the unbound identifiers in order of
// first appearance; with it, exactly the declared names (others are
// UnknownVariable). Throws SyntaxError, UnknownVariable, JoinInSemilatticeMode.
PPFormula parse_formula(const std::string& text, Mode mode = Mode::lattice,
                        const std::optional<std::vector<std::string>>& declared = std::nullopt);

std::string to_string(const Term& term, const std::vector<std::string>& names);
std::string to_string(const PPFormula& formula);

// Tabulates a term over the given variable count (the variables become x1..xn).
OpTable term_table(const Term& term, const TermAlgebra& algebra, std::size_t arity);

// rel(Φ): free assignments for which some bound assignment satisfies every atom.
Relation eval_formula(const PPFormula& formula, const TermAlgebra& algebra);

// ⋀lhs ≤ ⋁rhs in lattice mode, ⋀lhs ≤ ⋀rhs in semilattice mode. An empty meet
// is the top element, an empty join the bottom element.
struct IneqItem {
  VarSet lhs = 0;
  VarSet rhs = 0;

  auto operator<=>(const IneqItem&) const = default;
};

struct IneqSystem {
  Mode mode = Mode::lattice;
  std::vector<IneqItem> items;

  bool holds(const TermAlgebra& algebra, std::span<const Elem> assignment) const;
};

bool is_trivial(const IneqItem& item, Mode mode) noexcept;

// Drops trivially true and subsumed items, deduplicates and sorts.
void simplify(IneqSystem& system);

// Lattice mode: DNF(left) ≤ CNF(right) split into one item per (meet, join)
// pair; semilattice mode: one item per right-hand variable. Both sides of each
// equation contribute. Trivially true items are dropped.
IneqSystem to_inequalities(std::span<const Atom> atoms, Mode mode);

// Residuation in a Boolean lattice.
//   (i)   a∧u ≤ b  ⟺ u ≤ a′∨b        residuate_upper returns a′∨b
//   (ii)  b ≤ a∨u  ⟺ u ≥ a′∧b        residuate_lower returns a′∧b
//   (iii) a∧b′ ≤ c′∨d ⟺ a∧c ≤ b∨d    residuate_cross returns (a∧c, b∨d)
Elem residuate_upper(const BooleanStructure& boolean, Elem a, Elem b);
Elem residuate_lower(const BooleanStructure& boolean, Elem a, Elem b);
std::pair<Elem, Elem> residuate_cross(const BooleanStructure& boolean, Elem a, Elem b, Elem c,
                                      Elem d);

// Symbolic interval bound: 0, 1, a∧b′ (lower) or a′∨b (upper). `a` is a meet of
// variables; `b` is a join of variables in lattice mode and a meet of variables
// in semilattice mode (where lower bounds always have b empty, i.e. a∧0′ = a).
struct SymbolicBound {
  enum class Kind { bottom, top, meet_with_complement, join_with_complement };
  Kind kind = Kind::bottom;
  VarSet a = 0;
  VarSet b = 0;
};

struct Interval {
  SymbolicBound lo;
  SymbolicBound hi;
};

// (iii) applied to lo ≤ hi with lo = a∧b′ and hi = c′∨d: the item a∧c ≤ b∨d.
IneqItem residuate_symbolic(const SymbolicBound& lo, const SymbolicBound& hi, Mode mode);

// Concrete: ⋂[c_i, d_i] ≠ ∅ ⟺ c_i ≤ d_j for all i, j.
bool helly_condition(std::span<const std::pair<Elem, Elem>> intervals,
                     const FiniteLattice& lattice);

// Symbolic: the pairwise conditions c_i ≤ d_j that are not trivially true,
// each rewritten without complements.
std::vector<IneqItem> helly_condition(std::span<const Interval> intervals, Mode mode);

// Removes one variable from an inequality system by the interval argument.
// Lattice mode is exact over Boolean lattices, semilattice mode over
// distributive lattices.
IneqSystem eliminate_variable(const IneqSystem& system, std::size_t var);

// Quantifier elimination, innermost bound variable first. Throws NotBoolean /
// NotDistributive for structures where it is not sound.
PPFormula eliminate_boolean(const PPFormula& formula, const FiniteLattice& lattice);
PPFormula eliminate_semilattice(const PPFormula& formula, const FiniteLattice& lattice);
PPFormula eliminate_semilattice(const PPFormula& formula, const FiniteSemilattice& semilattice);

struct FormulaShape {
  std::size_t max_free = 3;
  std::size_t max_bound = 2;
  std::size_t max_atoms = 6;
  std::size_t max_depth = 2;
};

// Random formula with 1..max_free free and 0..max_bound bound variables.
PPFormula random_formula(std::mt19937_64& rng, Mode mode, const FormulaShape& shape = {});

}  // namespace latclone
