#pragma once

// Finitary operations as explicit value tables, relations as canonical tuple
// sets, and the clone / centralizer machinery built on them.
//
// Argument tuples are encoded row-major with the last argument fastest:
// (a1, ..., an) ↦ ((a1·|A| + a2)·|A| + ...)·|A| + an. Table equality (and
// therefore deduplication) is defined on this encoding.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latclone/finlat.hpp"

namespace latclone {

using Tuple = std::vector<Elem>;

// |A|^arity, throwing LimitExceeded past 2^40.
std::uint64_t power_size(std::size_t carrier, std::size_t arity);
std::uint64_t encode_tuple(std::span<const Elem> tuple, std::size_t carrier);
void decode_tuple(std::uint64_t code, std::size_t carrier, std::span<Elem> out);

class OpTable {
 public:
  OpTable(std::size_t arity, std::size_t carrier, std::vector<Elem> values,
          std::string provenance = {});

  static OpTable from_function(std::size_t arity, std::size_t carrier,
                               const std::function<Elem(std::span<const Elem>)>& fn,
                               std::string provenance = {});

  std::size_t arity() const noexcept { return arity_; }
  std::size_t carrier_size() const noexcept { return carrier_; }
  std::span<const Elem> values() const noexcept { return values_; }

  // Term that produced the table, in formula syntax over x1..xn (may be empty).
  const std::string& provenance() const noexcept { return provenance_; }
  OpTable with_provenance(std::string provenance) const;

  Elem operator()(std::span<const Elem> args) const;
  Elem at(std::uint64_t code) const { return values_[code]; }

  // Provenance is metadata and does not take part in comparison.
  bool operator==(const OpTable& other) const noexcept;
  bool operator<(const OpTable& other) const noexcept;

 private:
  std::size_t arity_;
  std::size_t carrier_;
  std::vector<Elem> values_;
  std::string provenance_;
};

class Relation {
 public:
  Relation(std::size_t arity, std::size_t carrier);
  Relation(std::size_t arity, std::size_t carrier, const std::vector<Tuple>& tuples);

  static Relation full(std::size_t arity, std::size_t carrier);
  static Relation from_codes(std::size_t arity, std::size_t carrier,
                             std::vector<std::uint64_t> codes);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t carrier_size() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }

  // Tuples in lexicographic order (the order of their codes).
  std::span<const std::uint64_t> codes() const noexcept { return codes_; }
  std::span<const Elem> row(std::size_t i) const {
    return std::span<const Elem>(flat_).subspan(i * arity_, arity_);
  }
  Tuple tuple(std::size_t i) const;
  std::vector<Tuple> tuples() const;

  bool contains(std::span<const Elem> tuple) const;
  bool contains_code(std::uint64_t code) const;
  bool subset_of(const Relation& other) const;

  bool operator==(const Relation& other) const noexcept;

 private:
  void index();

  std::size_t arity_;
  std::size_t carrier_;
  std::vector<std::uint64_t> codes_;
  std::vector<Elem> flat_;
  std::vector<bool> bits_;  // membership by code, when |A|^arity ≤ 2^24
};

// e_index^(arity), index counted from 0.
OpTable projection(std::size_t arity, std::size_t index, std::size_t carrier);

// h(x) = f(g1(x), ..., gn(x)).
OpTable compose(const OpTable& f, std::span<const OpTable> gs);

// f̃(x0..x{arity-1}) = f(x[assignment[0]], ..., x[assignment[r-1]]).
OpTable pad_and_identify(const OpTable& f, std::size_t arity,
                         std::span<const std::size_t> assignment);

// {(a1..an, f(a1..an))}.
Relation graph(const OpTable& f);

struct CommuteVerdict {
  bool commute = true;
  // n rows of m entries (f n-ary, g m-ary) on which the two evaluation orders differ.
  std::optional<std::vector<Tuple>> witness;
};

CommuteVerdict commute(const OpTable& f, const OpTable& g);

struct PreserveVerdict {
  bool preserves = true;
  // Arguments from the relation whose componentwise image falls outside it.
  std::optional<std::vector<Tuple>> witness;
};

PreserveVerdict preserves(const OpTable& f, const Relation& rho);

struct Limits {
  std::size_t clone = 100000;
  std::size_t centralizer = 100000;
  std::size_t closure = 1000000;

  // A single LATCLONE_LIMIT value, when set, replaces all three.
  static Limits from_env();
};

// [generators]^(arity), canonically sorted by value table.
std::vector<OpTable> clone_slice(std::span<const OpTable> generators, std::size_t arity,
                                 std::size_t limit = Limits{}.clone);

// All arity-ary operations commuting with every generator, canonically sorted.
std::vector<OpTable> centralizer_slice(std::span<const OpTable> generators, std::size_t arity,
                                       std::size_t limit = Limits{}.centralizer);

// Least superset of `rel` closed under every operation in `ops`.
Relation closure_under(const Relation& rel, std::span<const OpTable> ops,
                       std::size_t limit = Limits{}.closure);

}  // namespace latclone
