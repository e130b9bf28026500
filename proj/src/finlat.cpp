#include "latclone/finlat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "latclone/error.hpp"

namespace latclone {

namespace {

void check_labels(const std::vector<std::string>& names, std::size_t size) {
  if (names.size() != size) {
    throw Error(Errc::bad_spec, "label count does not match table size");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw Error(Errc::bad_spec, "duplicate label '" + n + "'");
  }
}

void check_semilattice_laws(const BinaryTable& t, const char* op) {
  const auto n = t.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto ex = static_cast<Elem>(x);
    if (t(ex, ex) != ex) {
      throw Error(Errc::axiom_violation, std::string(op) + " is not idempotent");
    }
    for (std::size_t y = 0; y < n; ++y) {
      const auto ey = static_cast<Elem>(y);
      if (t(ex, ey) != t(ey, ex)) {
        throw Error(Errc::axiom_violation, std::string(op) + " is not commutative");
      }
      for (std::size_t z = 0; z < n; ++z) {
        const auto ez = static_cast<Elem>(z);
        if (t(t(ex, ey), ez) != t(ex, t(ey, ez))) {
          throw Error(Errc::axiom_violation, std::string(op) + " is not associative");
        }
      }
    }
  }
}

Elem fold_all(const BinaryTable& t) {
  Elem acc = 0;
  for (std::size_t x = 1; x < t.size(); ++x) acc = t(acc, static_cast<Elem>(x));
  return acc;
}

Elem lookup(const std::vector<std::string>& names, const std::string& label) {
  const auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end()) throw Error(Errc::bad_spec, "unknown element '" + label + "'");
  return static_cast<Elem>(it - names.begin());
}

using OrderMatrix = std::vector<std::vector<bool>>;

OrderMatrix order_from_covers(const StructureSpec& spec) {
  const auto n = spec.labels.size();
  OrderMatrix leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [lo, hi] : spec.covers) {
    if (lo >= n || hi >= n) throw Error(Errc::bad_spec, "cover pair index out of range");
    if (lo == hi) throw Error(Errc::bad_spec, "cover pair relates an element to itself");
    leq[lo][hi] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k][j]) leq[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq[i][j] && leq[j][i]) {
        throw Error(Errc::bad_spec, "cover relation has a cycle through '" + spec.labels[i] +
                                        "' and '" + spec.labels[j] + "'");
      }
    }
  }
  return leq;
}

// Greatest lower bound (lower = true) or least upper bound in the order.
std::optional<std::size_t> extremal_bound(const OrderMatrix& leq, std::size_t a, std::size_t b,
                                          bool lower) {
  const auto n = leq.size();
  std::vector<std::size_t> bounds;
  for (std::size_t z = 0; z < n; ++z) {
    const bool ok = lower ? (leq[z][a] && leq[z][b]) : (leq[a][z] && leq[b][z]);
    if (ok) bounds.push_back(z);
  }
  for (auto g : bounds) {
    const bool best = std::all_of(bounds.begin(), bounds.end(), [&](std::size_t z) {
      return lower ? static_cast<bool>(leq[z][g]) : static_cast<bool>(leq[g][z]);
    });
    if (best) return g;
  }
  return std::nullopt;
}

BinaryTable bound_table(const OrderMatrix& leq, const std::vector<std::string>& labels,
                        bool lower) {
  const auto n = leq.size();
  std::vector<Elem> data(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto g = extremal_bound(leq, a, b, lower);
      if (!g) {
        throw Error(Errc::not_a_lattice, std::string("elements '") + labels[a] + "' and '" +
                                             labels[b] + "' have no " +
                                             (lower ? "greatest lower" : "least upper") +
                                             " bound");
      }
      data[a * n + b] = static_cast<Elem>(*g);
    }
  }
  return BinaryTable(n, std::move(data));
}

OrderMatrix order_from_meet(const BinaryTable& meet) {
  const auto n = meet.size();
  OrderMatrix leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      leq[i][j] = meet(static_cast<Elem>(i), static_cast<Elem>(j)) == i;
    }
  }
  return leq;
}

void check_size(const StructureSpec& spec) {
  const auto n = spec.labels.size();
  if (n == 0) throw Error(Errc::bad_spec, "structure has no elements");
  const auto cap = std::min(spec.size_cap, kMaxCarrier);
  if (n > cap) {
    throw Error(Errc::bad_spec, "structure has " + std::to_string(n) +
                                    " elements, above the size cap of " + std::to_string(cap));
  }
  std::set<std::string> seen;
  for (const auto& l : spec.labels) {
    if (!seen.insert(l).second) throw Error(Errc::bad_spec, "duplicate label '" + l + "'");
  }
  if (spec.meet && !spec.covers.empty()) {
    throw Error(Errc::bad_spec, "give either covers or a meet table, not both");
  }
}

BinaryTable meet_from_spec(const StructureSpec& spec) {
  const auto n = spec.labels.size();
  if (!spec.meet) return bound_table(order_from_covers(spec), spec.labels, true);
  const auto& rows = *spec.meet;
  if (rows.size() != n) throw Error(Errc::bad_spec, "meet table must have one row per element");
  std::vector<Elem> data;
  data.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(Errc::bad_spec, "meet table must be square");
    for (auto v : row) {
      if (v >= n) throw Error(Errc::bad_spec, "meet table entry out of range");
      data.push_back(static_cast<Elem>(v));
    }
  }
  return BinaryTable(n, std::move(data));
}

}  // namespace

BinaryTable::BinaryTable(std::size_t size, std::vector<Elem> data)
    : size_(size), data_(std::move(data)) {
  if (data_.size() != size_ * size_) throw Error(Errc::bad_spec, "table is not square");
  for (auto v : data_) {
    if (v >= size_) throw Error(Errc::bad_spec, "table entry out of range");
  }
}

FiniteSemilattice::FiniteSemilattice(std::vector<std::string> names, BinaryTable meet)
    : names_(std::move(names)), meet_(std::move(meet)) {
  if (meet_.size() == 0) throw Error(Errc::bad_spec, "structure has no elements");
  check_labels(names_, meet_.size());
  check_semilattice_laws(meet_, "meet");
  bottom_ = fold_all(meet_);
  for (std::size_t x = 0; x < size(); ++x) {
    bool greatest = true;
    for (std::size_t y = 0; y < size() && greatest; ++y) {
      greatest = leq(static_cast<Elem>(y), static_cast<Elem>(x));
    }
    if (greatest) top_ = static_cast<Elem>(x);
  }
}

Elem FiniteSemilattice::index_of(const std::string& label) const { return lookup(names_, label); }

FiniteLattice::FiniteLattice(std::vector<std::string> names, BinaryTable meet, BinaryTable join)
    : names_(std::move(names)), meet_(std::move(meet)), join_(std::move(join)) {
  if (meet_.size() == 0) throw Error(Errc::bad_spec, "structure has no elements");
  if (meet_.size() != join_.size()) throw Error(Errc::bad_spec, "meet and join sizes differ");
  check_labels(names_, meet_.size());
  check_semilattice_laws(meet_, "meet");
  check_semilattice_laws(join_, "join");
  const auto n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = static_cast<Elem>(i);
      const auto y = static_cast<Elem>(j);
      if (meet_(x, join_(x, y)) != x || join_(x, meet_(x, y)) != x) {
        throw Error(Errc::axiom_violation, "absorption fails for '" + names_[i] + "' and '" +
                                               names_[j] + "'");
      }
      if ((meet_(x, y) == x) != (join_(x, y) == y)) {
        throw Error(Errc::axiom_violation, "meet order and join order disagree");
      }
    }
  }
  bottom_ = fold_all(meet_);
  top_ = fold_all(join_);
  distributive_ = true;
  for (std::size_t i = 0; i < n && distributive_; ++i) {
    for (std::size_t j = 0; j < n && distributive_; ++j) {
      for (std::size_t k = 0; k < n && distributive_; ++k) {
        const auto x = static_cast<Elem>(i), y = static_cast<Elem>(j), z = static_cast<Elem>(k);
        distributive_ = meet_(x, join_(y, z)) == join_(meet_(x, y), meet_(x, z));
      }
    }
  }
}

FiniteSemilattice FiniteLattice::meet_reduct() const { return FiniteSemilattice(names_, meet_); }

Elem FiniteLattice::index_of(const std::string& label) const { return lookup(names_, label); }

FiniteLattice make_lattice(const StructureSpec& spec) {
  check_size(spec);
  auto meet = meet_from_spec(spec);
  // Validate the meet table before deriving an order from it.
  FiniteSemilattice semi(spec.labels, meet);
  auto join = bound_table(order_from_meet(meet), spec.labels, false);
  return FiniteLattice(spec.labels, std::move(meet), std::move(join));
}

FiniteSemilattice make_semilattice(const StructureSpec& spec) {
  check_size(spec);
  return FiniteSemilattice(spec.labels, meet_from_spec(spec));
}

Structure construct(const StructureSpec& spec, StructureKind kind) {
  if (kind == StructureKind::lattice) return make_lattice(spec);
  return make_semilattice(spec);
}

FiniteLattice lattice_from_covers(std::vector<std::string> labels,
                                  std::vector<std::pair<std::size_t, std::size_t>> covers) {
  StructureSpec spec;
  spec.labels = std::move(labels);
  spec.covers = std::move(covers);
  spec.size_cap = kMaxCarrier;
  return make_lattice(spec);
}

std::optional<ForbiddenSublattice> forbidden_sublattice(const FiniteLattice& L) {
  const auto n = L.size();
  if (n < 5) return std::nullopt;
  std::array<std::size_t, 5> idx{0, 1, 2, 3, 4};
  while (true) {
    std::array<Elem, 5> s{};
    for (std::size_t i = 0; i < 5; ++i) s[i] = static_cast<Elem>(idx[i]);
    const auto in_subset = [&](Elem v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    bool closed = true;
    for (std::size_t i = 0; i < 5 && closed; ++i) {
      for (std::size_t j = i + 1; j < 5 && closed; ++j) {
        closed = in_subset(L.meet(s[i], s[j])) && in_subset(L.join(s[i], s[j]));
      }
    }
    if (closed) {
      Elem lo = s[0], hi = s[0];
      for (auto v : s) {
        lo = L.meet(lo, v);
        hi = L.join(hi, v);
      }
      std::vector<Elem> mid;
      for (auto v : s) {
        if (v != lo && v != hi) mid.push_back(v);
      }
      std::vector<std::pair<Elem, Elem>> comparable;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (i != j && L.leq(mid[i], mid[j])) comparable.emplace_back(mid[i], mid[j]);
        }
      }
      if (comparable.empty()) {
        return ForbiddenSublattice{ForbiddenKind::M3, {lo, mid[0], mid[1], mid[2], hi}};
      }
      if (comparable.size() == 1) {
        const auto [low, high] = comparable.front();
        Elem side = 0;
        for (auto v : mid) {
          if (v != low && v != high) side = v;
        }
        return ForbiddenSublattice{ForbiddenKind::N5, {lo, low, high, side, hi}};
      }
    }
    // Next 5-combination in lexicographic order.
    int i = 4;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - 5 + static_cast<std::size_t>(i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (auto j = static_cast<std::size_t>(i) + 1; j < 5; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

DistributivityVerdict is_distributive(const FiniteLattice& L) {
  const auto n = L.size();
  bool found = false;
  std::array<Elem, 3> triple{};
  for (std::size_t i = 0; i < n && !found; ++i) {
    for (std::size_t j = 0; j < n && !found; ++j) {
      for (std::size_t k = 0; k < n && !found; ++k) {
        const auto x = static_cast<Elem>(i), y = static_cast<Elem>(j), z = static_cast<Elem>(k);
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) {
          triple = {x, y, z};
          found = true;
        }
      }
    }
  }
  if (found != forbidden_sublattice(L).has_value()) {
    throw std::logic_error("distributive law scan and N5/M3 search disagree");
  }
  DistributivityVerdict verdict;
  verdict.distributive = !found;
  if (found) verdict.violation = triple;
  return verdict;
}

BooleanStructure::BooleanStructure(FiniteLattice host, std::vector<Elem> complement)
    : host_(std::move(host)), complement_(std::move(complement)) {
  if (complement_.size() != host_.size()) {
    throw Error(Errc::bad_spec, "complement map size does not match the lattice");
  }
  for (std::size_t i = 0; i < host_.size(); ++i) {
    const auto x = static_cast<Elem>(i);
    const auto c = complement_[i];
    if (host_.meet(x, c) != host_.bottom() || host_.join(x, c) != host_.top() ||
        complement_.at(c) != x) {
      throw Error(Errc::not_boolean, "complement map is not a Boolean complement");
    }
  }
}

BooleanVerdict is_boolean(const FiniteLattice& L) {
  BooleanVerdict verdict;
  if (!is_distributive(L).distributive) return verdict;
  std::vector<Elem> complement(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    const auto x = static_cast<Elem>(i);
    bool found = false;
    for (std::size_t j = 0; j < L.size() && !found; ++j) {
      const auto y = static_cast<Elem>(j);
      if (L.meet(x, y) == L.bottom() && L.join(x, y) == L.top()) {
        complement[i] = y;
        found = true;
      }
    }
    if (!found) return verdict;
  }
  verdict.boolean = true;
  verdict.structure.emplace(L, std::move(complement));
  return verdict;
}

Median median(const FiniteLattice& L, Elem x, Elem y, Elem z) {
  const Elem value = L.join(L.join(L.meet(x, y), L.meet(x, z)), L.meet(y, z));
  return {value, L.satisfies_distributive_law()};
}

std::vector<Elem> join_irreducibles(const FiniteLattice& L) {
  std::vector<Elem> result;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const auto x = static_cast<Elem>(i);
    if (x == L.bottom()) continue;
    Elem below = L.bottom();
    for (std::size_t j = 0; j < L.size(); ++j) {
      const auto y = static_cast<Elem>(j);
      if (y != x && L.leq(y, x)) below = L.join(below, y);
    }
    if (below != x) result.push_back(x);
  }
  return result;
}

Embedding birkhoff_embed(const FiniteLattice& L) {
  if (!is_distributive(L).distributive) {
    throw Error(Errc::not_distributive, "only distributive lattices embed into a powerset");
  }
  Embedding e;
  e.atoms = join_irreducibles(L);
  if (e.atoms.size() > 32) throw Error(Errc::bad_spec, "more than 32 join-irreducible elements");
  e.target_atoms = e.atoms.size();
  e.image.resize(L.size(), 0);
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t b = 0; b < e.atoms.size(); ++b) {
      if (L.leq(e.atoms[b], static_cast<Elem>(i))) e.image[i] |= std::uint32_t{1} << b;
    }
  }
  return e;
}

Elem symdiff3(const BooleanStructure& B, Elem x, Elem y, Elem z) {
  const auto& L = B.host();
  const Elem m = median(L, x, y, z).value;
  const Elem all = L.join(L.join(x, y), z);
  const Elem common = L.meet(L.meet(x, y), z);
  return L.join(L.meet(all, B.complement(m)), common);
}

FiniteLattice semilattice_to_lattice(const FiniteSemilattice& M) {
  if (!M.top()) throw Error(Errc::no_greatest_element, "semilattice has no greatest element");
  const auto n = M.size();
  std::vector<Elem> join(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Elem acc = *M.top();
      for (std::size_t x = 0; x < n; ++x) {
        const auto ex = static_cast<Elem>(x);
        if (M.leq(static_cast<Elem>(a), ex) && M.leq(static_cast<Elem>(b), ex)) {
          acc = M.meet(acc, ex);
        }
      }
      join[a * n + b] = acc;
    }
  }
  return FiniteLattice(M.names(), M.meet_table(), BinaryTable(n, std::move(join)));
}

bool is_distributive_semilattice(const FiniteSemilattice& M) {
  const auto n = M.size();
  bool distributive = true;
  for (std::size_t a = 0; a < n && distributive; ++a) {
    for (std::size_t b0 = 0; b0 < n && distributive; ++b0) {
      for (std::size_t b1 = 0; b1 < n && distributive; ++b1) {
        const auto ea = static_cast<Elem>(a);
        const auto e0 = static_cast<Elem>(b0);
        const auto e1 = static_cast<Elem>(b1);
        if (!M.leq(M.meet(e0, e1), ea)) continue;
        bool split = false;
        for (std::size_t a0 = 0; a0 < n && !split; ++a0) {
          if (!M.leq(e0, static_cast<Elem>(a0))) continue;
          for (std::size_t a1 = 0; a1 < n && !split; ++a1) {
            split = M.leq(e1, static_cast<Elem>(a1)) &&
                    M.meet(static_cast<Elem>(a0), static_cast<Elem>(a1)) == ea;
          }
        }
        distributive = split;
      }
    }
  }
  if (M.top() && distributive != is_distributive(semilattice_to_lattice(M)).distributive) {
    throw std::logic_error("semilattice distributivity disagrees with its lattice completion");
  }
  return distributive;
}

}  // namespace latclone
