#pragma once

// Property SDC for finite lattices and semilattices: the structural decision,
// the witness relations that refute it, and brute-force verification of both
// outcomes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "latclone/algebra.hpp"
#include "latclone/finlat.hpp"
#include "latclone/funclone.hpp"

namespace latclone {

// Defining formulas of the witness relations.
inline constexpr const char* kLatticePairFormula =
    "exists u . (u /\\ x = u /\\ y & u \\/ x = u \\/ y)";
inline constexpr const char* kBooleanGapFormula =
    "exists u . ((x /\\ y) \\/ (x /\\ z) \\/ (y /\\ z) \\/ (u /\\ x) \\/ (u /\\ y) \\/ (u /\\ z)"
    " = x \\/ y \\/ z \\/ u"
    " & (x \\/ y) /\\ (x \\/ z) /\\ (y \\/ z) /\\ (u \\/ x) /\\ (u \\/ y) /\\ (u \\/ z)"
    " = x /\\ y /\\ z /\\ u)";
inline constexpr const char* kNoTopFormula = "exists u . (x <= u & y <= u)";
inline constexpr const char* kSemilatticeTripleFormula =
    "exists u . (x /\\ y = u /\\ y & x <= u & z <= u)";

// {(x,y) : ∃u u∧x = u∧y, u∨x = u∨y}. Throws IsDistributive.
Relation witness_lattice_pair(const FiniteLattice& lattice);

// {(x,y,z) : ∃u p(x,y,z,u) = x∨y∨z∨u, q(x,y,z,u) = x∧y∧z∧u}.
// Throws NotDistributive, IsBoolean.
Relation witness_boolean_gap(const FiniteLattice& lattice);

// Without a top: {(x,y) : ∃u x ≤ u, y ≤ u}. With a top (non-distributive):
// {(x,y,z) : ∃u x∧y = u∧y, x ≤ u, z ≤ u}. Throws IsDistributiveSemilattice.
Relation witness_semilattice(const FiniteSemilattice& semilattice);

// Elements a, b and the u placing (a,b), (b,a) in the pair witness, read off
// the least N5/M3 sublattice: N5 a = low, b = high, u = side; M3 the atoms.
struct PairLabels {
  Elem a;
  Elem b;
  Elem u;
};

PairLabels pair_labels(const FiniteLattice& lattice);

// Elements a, b, c for the triple witness counterexamples, and the triple
// (x1, y1, z1) in Sol(Eq(T)) \ T. N5: a = low, b = high, c = side and
// x1,y1,z1 = low, high, side. M3: a = first atom, b = bottom, c = top and
// x1,y1,z1 = the three atoms.
struct TripleLabels {
  ForbiddenKind kind;
  Elem a;
  Elem b;
  Elem c;
  Tuple gap;
};

TripleLabels triple_labels(const FiniteLattice& lattice);

// Two distinct maximal elements (the least such pair). Throws if a top exists.
std::pair<Elem, Elem> maximal_pair(const FiniteSemilattice& semilattice);

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct SdcOptions {
  std::size_t verify = 25;
  std::uint64_t seed = kDefaultSeed;
  std::size_t limit = Limits{}.clone;
};

struct SdcVerdict {
  bool holds = false;
  std::string route;
  std::optional<Relation> witness;
  // Tuple of Sol(Eq(T)) \ T: the least one when verified, else the one the
  // refutation names.
  std::optional<Tuple> gap_tuple;
  std::size_t qe_samples = 0;
  std::uint64_t seed = 0;
  bool verified = false;
};

// Lattice mode decides on the lattice, semilattice mode on its meet-reduct.
SdcVerdict decide_sdc(const FiniteLattice& lattice, Mode mode, const SdcOptions& options = {});
SdcVerdict decide_sdc(const FiniteSemilattice& semilattice, const SdcOptions& options = {});

}  // namespace latclone
