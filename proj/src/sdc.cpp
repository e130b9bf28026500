#include "latclone/sdc.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "latclone/eqsol.hpp"
#include "latclone/error.hpp"
#include "latclone/ppqe.hpp"

namespace latclone {

namespace {

Relation evaluate(const char* text, const TermAlgebra& algebra,
                  std::vector<std::string> free_vars) {
  return eval_formula(parse_formula(text, algebra.mode(), free_vars), algebra);
}

Tuple least_missing(const Relation& rel) {
  const auto total = power_size(rel.carrier_size(), rel.arity());
  Tuple t(rel.arity());
  for (std::uint64_t c = 0; c < total; ++c) {
    if (!rel.contains_code(c)) {
      decode_tuple(c, rel.carrier_size(), t);
      return t;
    }
  }
  throw std::logic_error("witness relation is full");
}

void refute(SdcVerdict& v, const TermAlgebra& algebra, Relation witness, Tuple named_gap,
            const SdcOptions& options) {
  v.holds = false;
  v.gap_tuple = std::move(named_gap);
  if (options.verify > 0) {
    const auto gens = algebra.generators();
    const auto check = is_solution_set(witness, gens, options.limit);
    if (check.status == SolutionSetStatus::solution_set) {
      throw std::logic_error("witness relation is a solution set");
    }
    if (check.status == SolutionSetStatus::not_solution_set) {
      v.gap_tuple = check.gap_tuple;
      v.verified = true;
    }
  }
  v.witness = std::move(witness);
}

void confirm(SdcVerdict& v, const TermAlgebra& algebra, const SdcOptions& options,
             const std::function<PPFormula(const PPFormula&)>& eliminate) {
  v.holds = true;
  std::mt19937_64 rng(options.seed);
  bool ok = true;
  for (std::size_t i = 0; i < options.verify; ++i) {
    const auto phi = random_formula(rng, algebra.mode());
    const auto psi = eliminate(phi);
    ok = ok && psi.quantifier_free() && eval_formula(psi, algebra) == eval_formula(phi, algebra);
    ++v.qe_samples;
  }
  if (!ok) throw std::logic_error("quantifier elimination changed a relation");
  v.verified = options.verify > 0;
}

}  // namespace

Relation witness_lattice_pair(const FiniteLattice& lattice) {
  if (lattice.satisfies_distributive_law()) {
    throw Error(Errc::is_distributive, "pair witness needs a non-distributive lattice");
  }
  return evaluate(kLatticePairFormula, TermAlgebra::lattice(lattice), {"x", "y"});
}

Relation witness_boolean_gap(const FiniteLattice& lattice) {
  if (!lattice.satisfies_distributive_law()) {
    throw Error(Errc::not_distributive, "triple witness needs a distributive lattice");
  }
  if (is_boolean(lattice).boolean) {
    throw Error(Errc::is_boolean, "triple witness needs a non-Boolean lattice");
  }
  return evaluate(kBooleanGapFormula, TermAlgebra::lattice(lattice), {"x", "y", "z"});
}

Relation witness_semilattice(const FiniteSemilattice& semilattice) {
  const auto algebra = TermAlgebra::semilattice(semilattice);
  if (!semilattice.top()) return evaluate(kNoTopFormula, algebra, {"x", "y"});
  if (is_distributive_semilattice(semilattice)) {
    throw Error(Errc::is_distributive_semilattice,
                "semilattice witness needs a non-distributive semilattice");
  }
  return evaluate(kSemilatticeTripleFormula, algebra, {"x", "y", "z"});
}

PairLabels pair_labels(const FiniteLattice& lattice) {
  const auto f = forbidden_sublattice(lattice);
  if (!f) throw Error(Errc::is_distributive, "no N5 or M3 sublattice");
  const auto& e = f->elements;
  return {e[1], e[2], e[3]};
}

TripleLabels triple_labels(const FiniteLattice& lattice) {
  const auto f = forbidden_sublattice(lattice);
  if (!f) throw Error(Errc::is_distributive, "no N5 or M3 sublattice");
  const auto& e = f->elements;
  if (f->kind == ForbiddenKind::N5) return {f->kind, e[1], e[2], e[3], {e[1], e[2], e[3]}};
  return {f->kind, e[1], e[0], e[4], {e[1], e[2], e[3]}};
}

std::pair<Elem, Elem> maximal_pair(const FiniteSemilattice& semilattice) {
  if (semilattice.top()) throw Error(Errc::bad_spec, "semilattice has a greatest element");
  std::vector<Elem> maximal;
  const auto n = semilattice.size();
  for (std::size_t x = 0; x < n; ++x) {
    bool is_max = true;
    for (std::size_t y = 0; y < n && is_max; ++y) {
      is_max = y == x || !semilattice.leq(static_cast<Elem>(x), static_cast<Elem>(y));
    }
    if (is_max) maximal.push_back(static_cast<Elem>(x));
  }
  return {maximal.at(0), maximal.at(1)};
}

SdcVerdict decide_sdc(const FiniteLattice& lattice, Mode mode, const SdcOptions& options) {
  if (mode == Mode::semilattice) return decide_sdc(lattice.meet_reduct(), options);
  SdcVerdict v;
  v.seed = options.seed;
  const auto algebra = TermAlgebra::lattice(lattice);
  if (!lattice.satisfies_distributive_law()) {
    v.route = "non-distributive-lattice";
    refute(v, algebra, witness_lattice_pair(lattice), {lattice.bottom(), lattice.top()},
           options);
  } else if (!is_boolean(lattice).boolean) {
    v.route = "distributive-non-boolean-lattice";
    auto w = witness_boolean_gap(lattice);
    auto gap = least_missing(w);
    refute(v, algebra, std::move(w), std::move(gap), options);
  } else {
    v.route = "boolean-lattice";
    confirm(v, algebra, options,
            [&](const PPFormula& phi) { return eliminate_boolean(phi, lattice); });
  }
  return v;
}

SdcVerdict decide_sdc(const FiniteSemilattice& semilattice, const SdcOptions& options) {
  SdcVerdict v;
  v.seed = options.seed;
  const auto algebra = TermAlgebra::semilattice(semilattice);
  if (!semilattice.top()) {
    v.route = "no-top-semilattice";
    const auto [a, b] = maximal_pair(semilattice);
    refute(v, algebra, witness_semilattice(semilattice), {a, b}, options);
  } else if (!is_distributive_semilattice(semilattice)) {
    v.route = "non-distributive-semilattice";
    auto gap = triple_labels(semilattice_to_lattice(semilattice)).gap;
    refute(v, algebra, witness_semilattice(semilattice), std::move(gap), options);
  } else {
    v.route = "distributive-semilattice";
    confirm(v, algebra, options,
            [&](const PPFormula& phi) { return eliminate_semilattice(phi, semilattice); });
  }
  return v;
}

}  // namespace latclone
