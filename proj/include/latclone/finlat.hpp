#pragma once

// Finite lattices and meet-semilattices given by operation tables.
//
// Elements are dense indices 0..size-1; labels are carried only for I/O.
// Every structure is validated at construction and immutable afterwards.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace latclone {

using Elem = std::uint8_t;

inline constexpr std::size_t kDefaultSizeCap = 16;
inline constexpr std::size_t kMaxCarrier = 255;

// Square operation table, row-major: (x, y) lives at x * size + y.
class BinaryTable {
 public:
  BinaryTable() = default;
  BinaryTable(std::size_t size, std::vector<Elem> data);

  std::size_t size() const noexcept { return size_; }
  Elem operator()(Elem x, Elem y) const noexcept { return data_[x * size_ + y]; }
  std::span<const Elem> data() const noexcept { return data_; }

  bool operator==(const BinaryTable&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<Elem> data_;
};

class FiniteLattice;

class FiniteSemilattice {
 public:
  // Validates idempotence, commutativity and associativity of `meet`.
  FiniteSemilattice(std::vector<std::string> names, BinaryTable meet);

  std::size_t size() const noexcept { return meet_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem x) const { return names_.at(x); }

  Elem meet(Elem x, Elem y) const noexcept { return meet_(x, y); }
  bool leq(Elem x, Elem y) const noexcept { return meet_(x, y) == x; }
  Elem bottom() const noexcept { return bottom_; }
  std::optional<Elem> top() const noexcept { return top_; }
  const BinaryTable& meet_table() const noexcept { return meet_; }

  // Index of the element labelled `label`; throws BadSpec when absent.
  Elem index_of(const std::string& label) const;

 private:
  std::vector<std::string> names_;
  BinaryTable meet_;
  Elem bottom_ = 0;
  std::optional<Elem> top_;
};

class FiniteLattice {
 public:
  // Validates both semilattice laws, absorption and order agreement.
  FiniteLattice(std::vector<std::string> names, BinaryTable meet, BinaryTable join);

  std::size_t size() const noexcept { return meet_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem x) const { return names_.at(x); }

  Elem meet(Elem x, Elem y) const noexcept { return meet_(x, y); }
  Elem join(Elem x, Elem y) const noexcept { return join_(x, y); }
  bool leq(Elem x, Elem y) const noexcept { return meet_(x, y) == x; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }
  const BinaryTable& meet_table() const noexcept { return meet_; }
  const BinaryTable& join_table() const noexcept { return join_; }

  // Result of the direct distributive-law scan done at construction.
  bool satisfies_distributive_law() const noexcept { return distributive_; }

  FiniteSemilattice meet_reduct() const;
  Elem index_of(const std::string& label) const;

 private:
  std::vector<std::string> names_;
  BinaryTable meet_;
  BinaryTable join_;
  Elem bottom_ = 0;
  Elem top_ = 0;
  bool distributive_ = false;
};

enum class StructureKind { lattice, semilattice };

// Either a cover/order relation or an explicit meet table must be given.
struct StructureSpec {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)
  std::optional<std::vector<std::vector<std::size_t>>> meet;
  std::size_t size_cap = kDefaultSizeCap;
};

using Structure = std::variant<FiniteLattice, FiniteSemilattice>;

Structure construct(const StructureSpec& spec, StructureKind kind);
FiniteLattice make_lattice(const StructureSpec& spec);
FiniteSemilattice make_semilattice(const StructureSpec& spec);

// Shorthand for the common Hasse-diagram case.
FiniteLattice lattice_from_covers(std::vector<std::string> labels,
                                  std::vector<std::pair<std::size_t, std::size_t>> covers);

struct DistributivityVerdict {
  bool distributive = true;
  std::optional<std::array<Elem, 3>> violation;  // x, y, z with x∧(y∨z) ≠ (x∧y)∨(x∧z)
};

// Checks the law on all triples and cross-checks against the N5/M3 search;
// disagreement between the two is reported as std::logic_error.
DistributivityVerdict is_distributive(const FiniteLattice& lattice);

enum class ForbiddenKind { N5, M3 };

// Elements are listed by role.
//   N5: bottom, low, high, side, top   (bottom < low < high < top, side incomparable)
//   M3: bottom, atom, atom, atom, top  (atoms ascending by index)
struct ForbiddenSublattice {
  ForbiddenKind kind;
  std::array<Elem, 5> elements;
};

// Lexicographically least 5-element sublattice isomorphic to N5 or M3.
std::optional<ForbiddenSublattice> forbidden_sublattice(const FiniteLattice& lattice);

class BooleanStructure {
 public:
  BooleanStructure(FiniteLattice host, std::vector<Elem> complement);

  const FiniteLattice& host() const noexcept { return host_; }
  Elem complement(Elem x) const { return complement_.at(x); }

 private:
  FiniteLattice host_;
  std::vector<Elem> complement_;
};

struct BooleanVerdict {
  bool boolean = false;
  std::optional<BooleanStructure> structure;
};

BooleanVerdict is_boolean(const FiniteLattice& lattice);

struct Median {
  Elem value;
  // False when the lattice is not distributive; the meet-of-joins form was then
  // not consulted and `value` is the join-of-meets form.
  bool distributive;
};

Median median(const FiniteLattice& lattice, Elem x, Elem y, Elem z);

// Nonzero join-irreducible elements, ascending.
std::vector<Elem> join_irreducibles(const FiniteLattice& lattice);

struct Embedding {
  std::size_t target_atoms = 0;
  std::vector<Elem> atoms;            // join-irreducible element behind each bit
  std::vector<std::uint32_t> image;   // bitmask per source element
};

// x ↦ { j ∈ J(L) : j ≤ x }. Throws NotDistributive.
Embedding birkhoff_embed(const FiniteLattice& lattice);

// ((x∨y∨z) ∧ m′) ∨ (x∧y∧z) with m the median.
Elem symdiff3(const BooleanStructure& boolean, Elem x, Elem y, Elem z);

// Join as the meet of all common upper bounds. Throws NoGreatestElement.
FiniteLattice semilattice_to_lattice(const FiniteSemilattice& semilattice);

bool is_distributive_semilattice(const FiniteSemilattice& semilattice);

}  // namespace latclone
