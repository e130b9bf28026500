#include <algorithm>
#include <bit>

#include "latclone/error.hpp"
#include "latclone/ppqe.hpp"

namespace latclone {

namespace {

// Removes every set that contains another one from the list.
std::vector<VarSet> absorb(std::vector<VarSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VarSet> out;
  for (auto s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [s](VarSet t) {
      return t != s && (t & s) == t;
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<VarSet> cross(const std::vector<VarSet>& l, const std::vector<VarSet>& r) {
  std::vector<VarSet> out;
  out.reserve(l.size() * r.size());
  for (auto a : l) {
    for (auto b : r) out.push_back(a | b);
  }
  return absorb(std::move(out));
}

std::vector<VarSet> merge(std::vector<VarSet> l, const std::vector<VarSet>& r) {
  l.insert(l.end(), r.begin(), r.end());
  return absorb(std::move(l));
}

std::string print(const Term& t, const std::vector<std::string>& names, bool inside_meet) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return names.at(t.var());
    case Term::Kind::meet:
      return print(t.lhs(), names, true) + " /\\ " + print(t.rhs(), names, true);
    case Term::Kind::join: {
      const auto s = print(t.lhs(), names, false) + " \\/ " + print(t.rhs(), names, false);
      return inside_meet ? "(" + s + ")" : s;
    }
  }
  return {};
}

// Printed factors of a meet chain, flattened the way the parser reads them back.
void meet_factors(const Term& t, const std::vector<std::string>& names, std::vector<std::string>& out) {
  if (t.kind() == Term::Kind::meet) {
    meet_factors(t.lhs(), names, out);
    meet_factors(t.rhs(), names, out);
  } else {
    out.push_back(print(t, names, true));
  }
}

}  // namespace

Term Term::variable(std::size_t index) {
  if (index >= kMaxVariables) throw Error(Errc::bad_index, "variable index beyond 32");
  return Term(std::make_shared<const Node>(Node{Kind::variable, index, {}}));
}

Term Term::meet(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::meet, 0, {std::move(lhs), std::move(rhs)}}));
}

Term Term::join(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::join, 0, {std::move(lhs), std::move(rhs)}}));
}

Elem Term::eval(const TermAlgebra& algebra, std::span<const Elem> assignment) const {
  switch (kind()) {
    case Kind::variable: return assignment[var()];
    case Kind::meet: return algebra.meet(lhs().eval(algebra, assignment), rhs().eval(algebra, assignment));
    case Kind::join: return algebra.join(lhs().eval(algebra, assignment), rhs().eval(algebra, assignment));
  }
  return 0;
}

VarSet Term::variables() const {
  if (kind() == Kind::variable) return VarSet{1} << var();
  return lhs().variables() | rhs().variables();
}

bool Term::uses_join() const {
  if (kind() == Kind::variable) return false;
  return kind() == Kind::join || lhs().uses_join() || rhs().uses_join();
}

std::vector<VarSet> Term::dnf() const {
  switch (kind()) {
    case Kind::variable: return {VarSet{1} << var()};
    case Kind::meet: return cross(lhs().dnf(), rhs().dnf());
    case Kind::join: return merge(lhs().dnf(), rhs().dnf());
  }
  return {};
}

std::vector<VarSet> Term::cnf() const {
  switch (kind()) {
    case Kind::variable: return {VarSet{1} << var()};
    case Kind::meet: return merge(lhs().cnf(), rhs().cnf());
    case Kind::join: return cross(lhs().cnf(), rhs().cnf());
  }
  return {};
}

std::vector<std::string> PPFormula::var_names() const {
  auto names = free_vars;
  names.insert(names.end(), bound_vars.begin(), bound_vars.end());
  return names;
}

std::string to_string(const Term& term, const std::vector<std::string>& names) {
  return print(term, names, false);
}

std::string to_string(const PPFormula& formula) {
  const auto names = formula.var_names();
  std::string out;
  if (!formula.bound_vars.empty()) {
    out = "exists";
    for (const auto& b : formula.bound_vars) out += " " + b;
    out += " . ";
  }
  if (formula.atoms.empty()) return out + "true";
  for (std::size_t i = 0; i < formula.atoms.size(); ++i) {
    const auto& atom = formula.atoms[i];
    if (i > 0) out += " & ";
    // s = s /\ t prints back as s <= t.
    std::vector<std::string> l, r;
    meet_factors(atom.lhs, names, l);
    meet_factors(atom.rhs, names, r);
    if (r.size() > l.size() && std::equal(l.begin(), l.end(), r.begin())) {
      std::string rest;
      for (std::size_t k = l.size(); k < r.size(); ++k) rest += (k > l.size() ? " /\\ " : "") + r[k];
      out += to_string(atom.lhs, names) + " <= " + rest;
    } else {
      out += to_string(atom.lhs, names) + " = " + to_string(atom.rhs, names);
    }
  }
  return out;
}

OpTable term_table(const Term& term, const TermAlgebra& algebra, std::size_t arity) {
  if (std::bit_width(term.variables()) > arity) {
    throw Error(Errc::arity_mismatch, "term uses a variable beyond the requested arity");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return OpTable::from_function(
      arity, algebra.size(),
      [&](std::span<const Elem> x) { return term.eval(algebra, x); }, to_string(term, names));
}

Relation eval_formula(const PPFormula& formula, const TermAlgebra& algebra) {
  const auto n = formula.free_vars.size();
  const auto m = formula.bound_vars.size();
  if (n == 0) throw Error(Errc::bad_spec, "formula has no free variables");
  for (const auto& atom : formula.atoms) {
    if (algebra.mode() == Mode::semilattice && (atom.lhs.uses_join() || atom.rhs.uses_join())) {
      throw Error(Errc::join_in_semilattice_mode, "formula uses join over a semilattice");
    }
  }
  const auto A = algebra.size();
  const auto free_total = power_size(A, n);
  const auto bound_total = power_size(A, m);
  std::vector<Elem> assignment(n + m, 0);
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < free_total; ++c) {
    decode_tuple(c, A, std::span<Elem>(assignment).subspan(0, n));
    bool satisfied = false;
    for (std::uint64_t w = 0; w < bound_total && !satisfied; ++w) {
      decode_tuple(w, A, std::span<Elem>(assignment).subspan(n, m));
      satisfied = std::all_of(formula.atoms.begin(), formula.atoms.end(), [&](const Atom& a) {
        return a.lhs.eval(algebra, assignment) == a.rhs.eval(algebra, assignment);
      });
    }
    if (satisfied) codes.push_back(c);
  }
  return Relation::from_codes(n, A, std::move(codes));
}

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

Term random_term(std::mt19937_64& rng, Mode mode, std::size_t vars, std::size_t depth) {
  if (depth == 0 || below(rng, 3) == 0) return Term::variable(below(rng, vars));
  auto l = random_term(rng, mode, vars, depth - 1);
  auto r = random_term(rng, mode, vars, depth - 1);
  if (mode == Mode::lattice && below(rng, 2) == 0) return Term::join(std::move(l), std::move(r));
  return Term::meet(std::move(l), std::move(r));
}

}  // namespace

PPFormula random_formula(std::mt19937_64& rng, Mode mode, const FormulaShape& shape) {
  PPFormula f;
  const auto n = 1 + below(rng, std::max<std::size_t>(shape.max_free, 1));
  const auto m = below(rng, shape.max_bound + 1);
  for (std::size_t i = 0; i < n; ++i) f.free_vars.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m; ++i) f.bound_vars.push_back("u" + std::to_string(i + 1));
  const auto atoms = 1 + below(rng, std::max<std::size_t>(shape.max_atoms, 1));
  for (std::size_t i = 0; i < atoms; ++i) {
    auto lhs = random_term(rng, mode, n + m, shape.max_depth);
    auto rhs = random_term(rng, mode, n + m, shape.max_depth);
    if (below(rng, 2) == 0) {
      f.atoms.push_back({lhs, Term::meet(lhs, rhs)});
    } else {
      f.atoms.push_back({std::move(lhs), std::move(rhs)});
    }
  }
  return f;
}

}  // namespace latclone
