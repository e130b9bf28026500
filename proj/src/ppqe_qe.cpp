#include <algorithm>
#include <stdexcept>

#include "latclone/error.hpp"
#include "latclone/ppqe.hpp"

namespace latclone {

namespace {

constexpr bool subset(VarSet a, VarSet b) { return (a & ~b) == 0; }

Elem meet_of(const TermAlgebra& alg, VarSet vars, std::span<const Elem> x) {
  std::optional<Elem> acc = alg.top();
  for (std::size_t i = 0; vars; ++i, vars >>= 1) {
    if (vars & 1) acc = acc ? alg.meet(*acc, x[i]) : x[i];
  }
  if (!acc) throw Error(Errc::no_greatest_element, "empty meet without a greatest element");
  return *acc;
}

Elem join_of(const TermAlgebra& alg, VarSet vars, std::span<const Elem> x) {
  Elem acc = alg.bottom();
  for (std::size_t i = 0; vars; ++i, vars >>= 1) {
    if (vars & 1) acc = alg.join(acc, x[i]);
  }
  return acc;
}

// (A', B') makes (A, B) redundant.
bool subsumes(const IneqItem& strong, const IneqItem& weak, Mode mode) {
  if (mode == Mode::lattice) return subset(strong.lhs, weak.lhs) && subset(strong.rhs, weak.rhs);
  return subset(strong.lhs, weak.lhs) && subset(weak.rhs, strong.rhs);
}

Term chain(VarSet vars, bool join) {
  std::optional<Term> t;
  for (std::size_t i = 0; vars; ++i, vars >>= 1) {
    if (!(vars & 1)) continue;
    auto v = Term::variable(i);
    t = !t ? v : join ? Term::join(*t, v) : Term::meet(*t, v);
  }
  if (!t) throw std::logic_error("empty side in eliminated inequality");
  return *t;
}

PPFormula eliminate(const PPFormula& formula, Mode mode) {
  for (const auto& a : formula.atoms) {
    if (mode == Mode::semilattice && (a.lhs.uses_join() || a.rhs.uses_join())) {
      throw Error(Errc::join_in_semilattice_mode, "formula uses join over a semilattice");
    }
  }
  PPFormula out;
  out.free_vars = formula.free_vars;
  VarSet used = 0;
  for (const auto& a : formula.atoms) used |= a.lhs.variables() | a.rhs.variables();
  const auto n = formula.free_vars.size();
  if ((used >> n) == 0) {
    out.atoms = formula.atoms;
    return out;
  }
  auto system = to_inequalities(formula.atoms, mode);
  simplify(system);
  for (std::size_t j = formula.bound_vars.size(); j-- > 0;) {
    system = eliminate_variable(system, n + j);
  }
  for (const auto& item : system.items) {
    if ((item.lhs | item.rhs) >> n) throw std::logic_error("bound variable survived elimination");
    auto s = chain(item.lhs, false);
    out.atoms.push_back({s, Term::meet(s, chain(item.rhs, mode == Mode::lattice))});
  }
  return out;
}

}  // namespace

bool IneqSystem::holds(const TermAlgebra& algebra, std::span<const Elem> assignment) const {
  return std::all_of(items.begin(), items.end(), [&](const IneqItem& it) {
    const auto l = meet_of(algebra, it.lhs, assignment);
    const auto r = mode == Mode::lattice ? join_of(algebra, it.rhs, assignment)
                                         : meet_of(algebra, it.rhs, assignment);
    return algebra.leq(l, r);
  });
}

bool is_trivial(const IneqItem& item, Mode mode) noexcept {
  if (mode == Mode::lattice) return (item.lhs & item.rhs) != 0;
  return subset(item.rhs, item.lhs);
}

void simplify(IneqSystem& system) {
  auto& items = system.items;
  std::erase_if(items, [&](const IneqItem& it) { return is_trivial(it, system.mode); });
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::vector<IneqItem> kept;
  for (const auto& it : items) {
    const bool redundant = std::any_of(items.begin(), items.end(), [&](const IneqItem& other) {
      return other != it && subsumes(other, it, system.mode);
    });
    if (!redundant) kept.push_back(it);
  }
  items = std::move(kept);
}

IneqSystem to_inequalities(std::span<const Atom> atoms, Mode mode) {
  IneqSystem sys{mode, {}};
  auto add = [&](VarSet l, VarSet r) {
    IneqItem it{l, r};
    if (!is_trivial(it, mode)) sys.items.push_back(it);
  };
  for (const auto& a : atoms) {
    if (mode == Mode::lattice) {
      for (const auto& [s, t] : {std::pair{&a.lhs, &a.rhs}, std::pair{&a.rhs, &a.lhs}}) {
        const auto meets = s->dnf();
        const auto joins = t->cnf();
        for (auto m : meets) {
          for (auto j : joins) add(m, j);
        }
      }
    } else {
      if (a.lhs.uses_join() || a.rhs.uses_join()) {
        throw Error(Errc::join_in_semilattice_mode, "formula uses join over a semilattice");
      }
      const auto l = a.lhs.variables();
      const auto r = a.rhs.variables();
      for (std::size_t i = 0; i < kMaxVariables; ++i) {
        const VarSet bit = VarSet{1} << i;
        if (r & bit) add(l, bit);
        if (l & bit) add(r, bit);
      }
    }
  }
  std::sort(sys.items.begin(), sys.items.end());
  sys.items.erase(std::unique(sys.items.begin(), sys.items.end()), sys.items.end());
  return sys;
}

Elem residuate_upper(const BooleanStructure& boolean, Elem a, Elem b) {
  return boolean.host().join(boolean.complement(a), b);
}

Elem residuate_lower(const BooleanStructure& boolean, Elem a, Elem b) {
  return boolean.host().meet(boolean.complement(a), b);
}

std::pair<Elem, Elem> residuate_cross(const BooleanStructure& boolean, Elem a, Elem b, Elem c,
                                      Elem d) {
  const auto& l = boolean.host();
  return {l.meet(a, c), l.join(b, d)};
}

IneqItem residuate_symbolic(const SymbolicBound& lo, const SymbolicBound& hi, Mode mode) {
  using K = SymbolicBound::Kind;
  if (lo.kind != K::meet_with_complement || hi.kind != K::join_with_complement) {
    throw std::logic_error("residuate_symbolic needs a∧b′ ≤ c′∨d");
  }
  if (mode == Mode::semilattice && lo.b != 0) {
    throw std::logic_error("semilattice lower bound with a complement");
  }
  return {lo.a | hi.a, lo.b | hi.b};
}

bool helly_condition(std::span<const std::pair<Elem, Elem>> intervals,
                     const FiniteLattice& lattice) {
  for (const auto& [c, d] : intervals) {
    (void)d;
    for (const auto& [c2, d2] : intervals) {
      (void)c2;
      if (!lattice.leq(c, d2)) return false;
    }
  }
  return true;
}

std::vector<IneqItem> helly_condition(std::span<const Interval> intervals, Mode mode) {
  using K = SymbolicBound::Kind;
  std::vector<IneqItem> out;
  for (const auto& i : intervals) {
    if (i.lo.kind == K::bottom) continue;
    for (const auto& j : intervals) {
      if (j.hi.kind == K::top) continue;
      auto item = residuate_symbolic(i.lo, j.hi, mode);
      if (!is_trivial(item, mode)) out.push_back(item);
    }
  }
  return out;
}

IneqSystem eliminate_variable(const IneqSystem& system, std::size_t var) {
  using K = SymbolicBound::Kind;
  const VarSet bit = VarSet{1} << var;
  const auto mode = system.mode;
  IneqSystem out{mode, {}};
  std::vector<Interval> intervals;
  const SymbolicBound bottom{K::bottom, 0, 0};
  const SymbolicBound top{K::top, 0, 0};
  for (const auto& it : system.items) {
    const bool left = it.lhs & bit;
    const bool right = it.rhs & bit;
    const VarSet a = it.lhs & ~bit;
    const VarSet b = it.rhs & ~bit;
    if (!left && !right) {
      out.items.push_back(it);
    } else if (mode == Mode::lattice) {
      if (left && right) continue;
      if (left) {
        intervals.push_back({bottom, {K::join_with_complement, a, b}});
      } else {
        intervals.push_back({{K::meet_with_complement, a, b}, top});
      }
    } else {
      if (right && !left) {
        out.items.push_back({a, b});
        intervals.push_back({{K::meet_with_complement, a, 0}, top});
      } else if (b == 0) {
        intervals.push_back({bottom, top});
      } else {
        intervals.push_back({bottom, {K::join_with_complement, a, b}});
      }
    }
  }
  auto extra = helly_condition(intervals, mode);
  out.items.insert(out.items.end(), extra.begin(), extra.end());
  simplify(out);
  return out;
}

PPFormula eliminate_boolean(const PPFormula& formula, const FiniteLattice& lattice) {
  if (!is_boolean(lattice).boolean) {
    throw Error(Errc::not_boolean, "quantifier elimination needs a Boolean lattice");
  }
  return eliminate(formula, Mode::lattice);
}

PPFormula eliminate_semilattice(const PPFormula& formula, const FiniteLattice& lattice) {
  if (!lattice.satisfies_distributive_law()) {
    throw Error(Errc::not_distributive, "quantifier elimination needs a distributive lattice");
  }
  return eliminate(formula, Mode::semilattice);
}

PPFormula eliminate_semilattice(const PPFormula& formula, const FiniteSemilattice& semilattice) {
  if (!semilattice.top()) {
    throw Error(Errc::not_distributive,
                "semilattice without a greatest element is not the reduct of a lattice");
  }
  return eliminate_semilattice(formula, semilattice_to_lattice(semilattice));
}

}  // namespace latclone
