#pragma once

// Brute-force reference implementations. Everything here is computed from
// first principles (an order relation, raw predicates, naive fixpoints) and
// shares no code with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "latclone/algebra.hpp"
#include "latclone/finlat.hpp"
#include "latclone/funclone.hpp"

namespace oracle {

using latclone::Elem;
using Tup = std::vector<int>;

struct Poset {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> le;

  int size() const { return static_cast<int>(names.size()); }

  std::vector<int> lower_bounds(int x, int y) const {
    std::vector<int> out;
    for (int z = 0; z < size(); ++z) {
      if (le[z][x] && le[z][y]) out.push_back(z);
    }
    return out;
  }
  std::vector<int> upper_bounds(int x, int y) const {
    std::vector<int> out;
    for (int z = 0; z < size(); ++z) {
      if (le[x][z] && le[y][z]) out.push_back(z);
    }
    return out;
  }
  // -1 when missing.
  int glb(int x, int y) const {
    for (int z : lower_bounds(x, y)) {
      const auto lb = lower_bounds(x, y);
      if (std::all_of(lb.begin(), lb.end(), [&](int w) { return le[w][z]; })) return z;
    }
    return -1;
  }
  int lub(int x, int y) const {
    for (int z : upper_bounds(x, y)) {
      const auto ub = upper_bounds(x, y);
      if (std::all_of(ub.begin(), ub.end(), [&](int w) { return le[z][w]; })) return z;
    }
    return -1;
  }
};

// Order from strict pairs, closed reflexively and transitively by repeated passes.
inline Poset poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& less) {
  Poset p;
  const auto n = static_cast<int>(names.size());
  p.names = std::move(names);
  p.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) p.le[i][i] = true;
  for (auto [a, b] : less) p.le[a][b] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (p.le[a][b] && p.le[b][c] && !p.le[a][c]) p.le[a][c] = changed = true;
  }
  return p;
}

inline std::vector<int> all_ints(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Calls fn on every tuple of {0..carrier-1}^arity in lexicographic order.
inline void for_each_tuple(int carrier, int arity, const std::function<void(const Tup&)>& fn) {
  Tup t(arity, 0);
  while (true) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && t[i] == carrier - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

inline std::set<Tup> tuples_where(int carrier, int arity, const std::function<bool(const Tup&)>& pred) {
  std::set<Tup> out;
  for_each_tuple(carrier, arity, [&](const Tup& t) {
    if (pred(t)) out.insert(t);
  });
  return out;
}

inline std::set<Tup> as_set(const latclone::Relation& r) {
  std::set<Tup> out;
  for (const auto& t : r.tuples()) out.insert(Tup(t.begin(), t.end()));
  return out;
}

inline latclone::Relation as_relation(const std::set<Tup>& s, int arity, int carrier) {
  std::vector<latclone::Tuple> ts;
  for (const auto& t : s) ts.emplace_back(t.begin(), t.end());
  return latclone::Relation(arity, carrier, ts);
}

// A function table indexed by the base-carrier code of the argument tuple.
using Fn = std::vector<int>;

inline int code_of(const Tup& t, int carrier) {
  int c = 0;
  for (int v : t) c = c * carrier + v;
  return c;
}

inline int power(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// f(g1(x), ..., g_k(x)) over all x, as a table.
inline Fn apply(const Fn& f, const std::vector<Fn>& gs, int carrier, int arity) {
  Fn out(power(carrier, arity));
  for (int c = 0; c < static_cast<int>(out.size()); ++c) {
    Tup args;
    for (const auto& g : gs) args.push_back(g[c]);
    out[c] = f[code_of(args, carrier)];
  }
  return out;
}

// All term functions of the given arity over binary generators: projections
// closed under every generator applied to every ordered pair, until nothing new.
inline std::set<Fn> term_functions(const std::vector<Fn>& binary_ops, int carrier, int arity) {
  std::set<Fn> terms;
  for (int i = 0; i < arity; ++i) {
    Fn p(power(carrier, arity));
    for (int c = 0; c < static_cast<int>(p.size()); ++c) {
      int v = c;
      for (int j = arity - 1; j > i; --j) v /= carrier;
      p[c] = v % carrier;
    }
    terms.insert(p);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Fn> current(terms.begin(), terms.end());
    for (const auto& op : binary_ops)
      for (const auto& a : current)
        for (const auto& b : current)
          if (terms.insert(apply(op, {a, b}, carrier, arity)).second) grew = true;
  }
  return terms;
}

// Sol(Eq(T)) straight from the definition.
inline std::set<Tup> galois_closure(const std::set<Tup>& T, const std::vector<Fn>& binary_ops, int carrier,
                                    int arity) {
  const auto terms = term_functions(binary_ops, carrier, arity);
  const std::vector<Fn> tv(terms.begin(), terms.end());
  std::vector<std::pair<int, int>> equations;
  for (int i = 0; i < static_cast<int>(tv.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(tv.size()); ++j) {
      const bool agree = std::all_of(T.begin(), T.end(), [&](const Tup& t) {
        return tv[i][code_of(t, carrier)] == tv[j][code_of(t, carrier)];
      });
      if (agree) equations.emplace_back(i, j);
    }
  return tuples_where(carrier, arity, [&](const Tup& t) {
    const int c = code_of(t, carrier);
    return std::all_of(equations.begin(), equations.end(),
                       [&](auto e) { return tv[e.first][c] == tv[e.second][c]; });
  });
}

// f ⊥ g by enumerating every n×m matrix.
inline bool commute(const Fn& f, int n, const Fn& g, int m, int carrier) {
  bool ok = true;
  for_each_tuple(carrier, n * m, [&](const Tup& flat) {
    if (!ok) return;
    Tup rows, cols;
    for (int i = 0; i < n; ++i) rows.push_back(g[code_of(Tup(flat.begin() + i * m, flat.begin() + (i + 1) * m), carrier)]);
    for (int j = 0; j < m; ++j) {
      Tup col;
      for (int i = 0; i < n; ++i) col.push_back(flat[i * m + j]);
      cols.push_back(f[code_of(col, carrier)]);
    }
    ok = f[code_of(rows, carrier)] == g[code_of(cols, carrier)];
  });
  return ok;
}

// Every arity-ary table commuting with all the binary operations. Feasible only
// for carrier^(carrier^arity) up to a few hundred thousand.
inline std::set<Fn> centralizer(const std::vector<Fn>& binary_ops, int carrier, int arity) {
  std::set<Fn> out;
  const int cells = power(carrier, arity);
  for_each_tuple(carrier, cells, [&](const Tup& table) {
    if (std::all_of(binary_ops.begin(), binary_ops.end(),
                    [&](const Fn& op) { return commute(table, arity, op, 2, carrier); })) {
      out.insert(table);
    }
  });
  return out;
}

// Least superset of S closed under every listed operation (componentwise).
inline std::set<Tup> closure(std::set<Tup> S, const std::vector<std::pair<Fn, int>>& ops, int carrier) {
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Tup> cur(S.begin(), S.end());
    const int h = cur.empty() ? 0 : static_cast<int>(cur[0].size());
    for (const auto& [f, k] : ops) {
      std::vector<int> pick(k, 0);
      while (true) {
        Tup img(h);
        for (int pos = 0; pos < h; ++pos) {
          Tup args;
          for (int r = 0; r < k; ++r) args.push_back(cur[pick[r]][pos]);
          img[pos] = f[code_of(args, carrier)];
        }
        if (S.insert(img).second) grew = true;
        int r = k - 1;
        while (r >= 0 && pick[r] == static_cast<int>(cur.size()) - 1) pick[r--] = 0;
        if (r < 0) break;
        ++pick[r];
      }
    }
  }
  return S;
}

inline Fn table_of(const latclone::OpTable& op) { return Fn(op.values().begin(), op.values().end()); }

inline Fn binary_table(int carrier, const std::function<int(int, int)>& f) {
  Fn t(carrier * carrier);
  for (int x = 0; x < carrier; ++x)
    for (int y = 0; y < carrier; ++y) t[x * carrier + y] = f(x, y);
  return t;
}

}  // namespace oracle
