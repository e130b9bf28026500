#pragma once

#include <string>
#include <vector>

#include "latclone/finlat.hpp"
#include "oracles.hpp"

namespace fixtures {

using latclone::BinaryTable;
using latclone::Elem;
using latclone::FiniteLattice;
using latclone::FiniteSemilattice;

inline oracle::Poset chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> less;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) less.emplace_back(i - 1, i);
  }
  return oracle::poset(names, less);
}

// Subsets of {a, b, c, ...} indexed by bitmask.
inline oracle::Poset boolean(int atoms) {
  const int n = 1 << atoms;
  std::vector<std::string> names;
  for (int m = 0; m < n; ++m) {
    std::string s;
    for (int i = 0; i < atoms; ++i) {
      if (m & (1 << i)) s += static_cast<char>('a' + i);
    }
    names.push_back(m == 0 ? "0" : m == n - 1 ? "1" : s);
  }
  std::vector<std::pair<int, int>> less;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && (x & y) == x) less.emplace_back(x, y);
  return oracle::poset(names, less);
}

// 0 < p < q < 1, 0 < r < 1
inline oracle::Poset n5() { return oracle::poset({"0", "p", "q", "r", "1"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}); }

inline oracle::Poset m3() {
  return oracle::poset({"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

// 0 < a < c, 0 < b: no top.
inline oracle::Poset fence() { return oracle::poset({"0", "a", "b", "c"}, {{0, 1}, {1, 3}, {0, 2}}); }

// 0 < a, 0 < b: no top.
inline oracle::Poset vee() { return oracle::poset({"0", "a", "b"}, {{0, 1}, {0, 2}}); }

inline BinaryTable table(const oracle::Poset& p, bool join) {
  const int n = p.size();
  std::vector<Elem> data(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) data[x * n + y] = static_cast<Elem>(join ? p.lub(x, y) : p.glb(x, y));
  return BinaryTable(n, std::move(data));
}

inline FiniteLattice lattice(const oracle::Poset& p) { return FiniteLattice(p.names, table(p, false), table(p, true)); }
inline FiniteSemilattice semilattice(const oracle::Poset& p) { return FiniteSemilattice(p.names, table(p, false)); }

inline FiniteLattice C2() { return lattice(chain(2)); }
inline FiniteLattice C3() { return lattice(chain(3)); }
inline FiniteLattice C4() { return lattice(chain(4)); }
inline FiniteLattice B2() { return lattice(boolean(2)); }
inline FiniteLattice B3() { return lattice(boolean(3)); }
inline FiniteLattice N5() { return lattice(n5()); }
inline FiniteLattice M3() { return lattice(m3()); }
inline FiniteSemilattice Fence() { return semilattice(fence()); }
inline FiniteSemilattice Vee() { return semilattice(vee()); }

inline std::vector<std::pair<std::string, FiniteLattice>> all_lattices() {
  return {{"C2", C2()}, {"C3", C3()}, {"C4", C4()}, {"B2", B2()}, {"B3", B3()}, {"N5", N5()}, {"M3", M3()}};
}

inline oracle::Fn meet_fn(const oracle::Poset& p) {
  return oracle::binary_table(p.size(), [&](int x, int y) { return p.glb(x, y); });
}
inline oracle::Fn join_fn(const oracle::Poset& p) {
  return oracle::binary_table(p.size(), [&](int x, int y) { return p.lub(x, y); });
}

}  // namespace fixtures
