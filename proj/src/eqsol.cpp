#include "latclone/eqsol.hpp"

#include <algorithm>
#include <unordered_map>

#include "latclone/error.hpp"

namespace latclone {

void EquationSystem::validate(std::size_t carrier) const {
  for (const auto& eq : equations) {
    for (const auto* side : {&eq.lhs, &eq.rhs}) {
      if (side->arity() != arity || side->carrier_size() != carrier) {
        throw Error(Errc::arity_mismatch, "equation side is not an operation of the system arity");
      }
    }
  }
}

Relation solve(const EquationSystem& system, std::size_t carrier) {
  system.validate(carrier);
  const auto total = power_size(carrier, system.arity);
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < total; ++c) {
    const bool ok = std::all_of(system.equations.begin(), system.equations.end(),
                                [c](const Equation& e) { return e.lhs.at(c) == e.rhs.at(c); });
    if (ok) codes.push_back(c);
  }
  return Relation::from_codes(system.arity, carrier, std::move(codes));
}

bool EqTheory::holds(std::size_t f, std::size_t g) const { return block_of(f) == block_of(g); }

std::size_t EqTheory::block_of(std::size_t term) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::find(blocks[b].begin(), blocks[b].end(), term) != blocks[b].end()) return b;
  }
  throw Error(Errc::bad_index, "term index outside the clone slice");
}

EquationSystem EqTheory::spanning_system() const {
  EquationSystem system;
  system.arity = arity;
  for (const auto& block : blocks) {
    for (std::size_t i = 1; i < block.size(); ++i) {
      system.equations.push_back({terms[block.front()], terms[block[i]]});
    }
  }
  return system;
}

EqTheory equations_over(const Relation& T, std::vector<OpTable> slice) {
  EqTheory theory;
  theory.arity = T.arity();
  theory.terms = std::move(slice);
  std::unordered_map<std::string, std::size_t> block_by_key;
  std::string key(T.size(), '\0');
  for (std::size_t i = 0; i < theory.terms.size(); ++i) {
    const auto& f = theory.terms[i];
    if (f.arity() != T.arity() || f.carrier_size() != T.carrier_size()) {
      throw Error(Errc::arity_mismatch, "clone slice does not match the relation");
    }
    for (std::size_t t = 0; t < T.size(); ++t) key[t] = static_cast<char>(f.at(T.codes()[t]));
    const auto [it, fresh] = block_by_key.emplace(key, theory.blocks.size());
    if (fresh) theory.blocks.emplace_back();
    theory.blocks[it->second].push_back(i);
  }
  return theory;
}

EqTheory equations_of(const Relation& T, std::span<const OpTable> generators, std::size_t limit) {
  return equations_over(T, clone_slice(generators, T.arity(), limit));
}

Relation galois_closure(const EqTheory& theory, std::size_t carrier) {
  const auto total = power_size(carrier, theory.arity);
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < total; ++c) {
    bool ok = true;
    for (const auto& block : theory.blocks) {
      const auto v = theory.terms[block.front()].at(c);
      for (std::size_t i = 1; i < block.size() && ok; ++i) ok = theory.terms[block[i]].at(c) == v;
      if (!ok) break;
    }
    if (ok) codes.push_back(c);
  }
  return Relation::from_codes(theory.arity, carrier, std::move(codes));
}

Relation galois_closure(const Relation& T, std::span<const OpTable> generators,
                        std::size_t limit) {
  return galois_closure(equations_of(T, generators, limit), T.carrier_size());
}

const char* to_string(SolutionSetStatus status) noexcept {
  switch (status) {
    case SolutionSetStatus::solution_set: return "yes";
    case SolutionSetStatus::not_solution_set: return "no";
    case SolutionSetStatus::unknown: return "unknown";
  }
  return "unknown";
}

SolutionSetVerdict is_solution_set(const Relation& T, std::span<const OpTable> generators,
                                   std::size_t limit) {
  SolutionSetVerdict verdict;
  EqTheory theory;
  try {
    theory = equations_of(T, generators, limit);
  } catch (const Error& e) {
    if (e.code() != Errc::limit_exceeded) throw;
    return verdict;
  }
  auto closure = galois_closure(theory, T.carrier_size());
  std::vector<std::uint64_t> missing;
  for (auto c : closure.codes()) {
    if (!T.contains_code(c)) missing.push_back(c);
  }
  if (missing.empty()) {
    verdict.status = SolutionSetStatus::solution_set;
    verdict.certificate = theory.spanning_system();
  } else {
    verdict.status = SolutionSetStatus::not_solution_set;
    Relation gap = Relation::from_codes(T.arity(), T.carrier_size(), std::move(missing));
    verdict.gap_tuple = gap.tuple(0);
    verdict.gap = std::move(gap);
  }
  verdict.closure = std::move(closure);
  return verdict;
}

}  // namespace latclone
