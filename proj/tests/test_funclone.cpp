#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "latclone/algebra.hpp"
#include "latclone/error.hpp"
#include "latclone/funclone.hpp"

using namespace latclone;
using namespace fixtures;

namespace {

Errc errc_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::bad_spec;
}

OpTable op(std::size_t arity, std::size_t carrier, const oracle::Fn& f) {
  return OpTable(arity, carrier, std::vector<Elem>(f.begin(), f.end()));
}

std::set<oracle::Fn> tables(const std::vector<OpTable>& ops) {
  std::set<oracle::Fn> out;
  for (const auto& o : ops) out.insert(oracle::table_of(o));
  return out;
}

OpTable random_op(std::mt19937_64& rng, std::size_t arity, std::size_t carrier) {
  std::vector<Elem> v(oracle::power(static_cast<int>(carrier), static_cast<int>(arity)));
  for (auto& x : v) x = static_cast<Elem>(rng() % carrier);
  return OpTable(arity, carrier, v);
}

std::vector<OpTable> all_binary(std::size_t carrier) {
  std::vector<OpTable> out;
  const int cells = static_cast<int>(carrier * carrier);
  oracle::for_each_tuple(static_cast<int>(carrier), cells, [&](const oracle::Tup& t) {
    out.emplace_back(2, carrier, std::vector<Elem>(t.begin(), t.end()));
  });
  return out;
}

}  // namespace

TEST_CASE("tuple encoding") {
  const Tuple t{2, 0, 1};
  CHECK(encode_tuple(t, 3) == 2 * 9 + 0 * 3 + 1);
  Tuple back(3);
  decode_tuple(19, 3, back);
  CHECK(back == t);
  CHECK(power_size(5, 3) == 125);
  CHECK(errc_of([] { power_size(2, 41); }) == Errc::limit_exceeded);
}

TEST_CASE("projection examples") {
  const auto id = projection(1, 0, 3);
  CHECK(std::vector<Elem>(id.values().begin(), id.values().end()) == std::vector<Elem>{0, 1, 2});
  const auto e2 = projection(2, 1, 2);
  CHECK(std::vector<Elem>(e2.values().begin(), e2.values().end()) == std::vector<Elem>{0, 1, 0, 1});
  const auto e3 = projection(3, 2, 2);
  oracle::for_each_tuple(2, 3, [&](const oracle::Tup& t) {
    const Tuple a(t.begin(), t.end());
    CHECK(e3(a) == a[2]);
  });
  CHECK(errc_of([] { projection(2, 2, 3); }) == Errc::bad_index);
  CHECK(errc_of([] { projection(0, 0, 3); }) == Errc::bad_index);
}

TEST_CASE("OpTable validation") {
  CHECK(errc_of([] { OpTable(2, 2, {0, 1, 1}); }) == Errc::bad_spec);
  CHECK(errc_of([] { OpTable(1, 2, {0, 2}); }) == Errc::bad_spec);
  const OpTable a(1, 2, {1, 0}, "x1");
  const OpTable b(1, 2, {1, 0});
  CHECK(a == b);
  CHECK(a.provenance() == "x1");
  CHECK(b.with_provenance("t").provenance() == "t");
}

TEST_CASE("compose examples") {
  const auto L = C3();
  const auto alg = TermAlgebra::lattice(L);
  const auto gens = alg.generators();
  const auto& meet = gens[0];
  const auto& join = gens[1];

  const std::vector<OpTable> ps{projection(2, 0, 3), projection(2, 1, 3)};
  CHECK(compose(meet, ps) == meet);

  const std::vector<OpTable> diag{projection(1, 0, 3), projection(1, 0, 3)};
  CHECK(compose(meet, diag) == projection(1, 0, 3));

  const std::vector<OpTable> inner{projection(3, 0, 3), projection(3, 1, 3)};
  const std::vector<OpTable> outer{compose(join, inner), projection(3, 2, 3)};
  const auto h = compose(meet, outer);
  oracle::for_each_tuple(3, 3, [&](const oracle::Tup& t) {
    const Tuple a(t.begin(), t.end());
    CHECK(h(a) == L.meet(L.join(a[0], a[1]), a[2]));
  });

  CHECK(errc_of([&] { compose(meet, std::vector<OpTable>{projection(2, 0, 3)}); }) == Errc::arity_mismatch);
  CHECK(errc_of([&] { compose(meet, std::vector<OpTable>{projection(2, 0, 3), projection(1, 0, 3)}); }) ==
        Errc::arity_mismatch);
  CHECK(errc_of([&] { compose(meet, std::vector<OpTable>{projection(2, 0, 2), projection(2, 1, 2)}); }) ==
        Errc::arity_mismatch);
}

TEST_CASE("property: compose matches the pointwise oracle") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    const std::size_t carrier = 2 + rng() % 4;
    const std::size_t n = 1 + rng() % 3;
    const std::size_t k = 1 + rng() % 3;
    const auto f = random_op(rng, n, carrier);
    std::vector<OpTable> gs;
    std::vector<oracle::Fn> gfs;
    for (std::size_t i = 0; i < n; ++i) {
      gs.push_back(random_op(rng, k, carrier));
      gfs.push_back(oracle::table_of(gs.back()));
    }
    const auto expected = oracle::apply(oracle::table_of(f), gfs, static_cast<int>(carrier), static_cast<int>(k));
    CHECK(oracle::table_of(compose(f, gs)) == expected);
  }
}

TEST_CASE("pad_and_identify examples") {
  const auto alg = TermAlgebra::lattice(C3());
  const auto meet = alg.generators()[0];
  const std::vector<std::size_t> keep{0, 1};
  const auto padded = pad_and_identify(meet, 3, keep);
  oracle::for_each_tuple(3, 3, [&](const oracle::Tup& t) {
    Tuple a(t.begin(), t.end());
    const auto v = padded(a);
    a[2] = static_cast<Elem>((a[2] + 1) % 3);
    CHECK(padded(a) == v);
  });

  const std::vector<std::size_t> same{0, 0};
  CHECK(pad_and_identify(meet, 1, same) == projection(1, 0, 3));

  const std::vector<std::size_t> swap{1, 0};
  CHECK(pad_and_identify(meet, 2, swap) == meet);
  const OpTable left(2, 2, {0, 0, 1, 1});  // x1
  const OpTable skew(2, 3, {0, 1, 2, 0, 0, 0, 1, 1, 1});
  CHECK(pad_and_identify(left, 2, swap) == projection(2, 1, 2));
  const auto t = pad_and_identify(skew, 2, swap);
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) CHECK(t(std::vector<Elem>{x, y}) == skew(std::vector<Elem>{y, x}));

  const std::vector<std::size_t> short_assign{0};
  const std::vector<std::size_t> out_of_range{0, 3};
  CHECK(errc_of([&] { pad_and_identify(meet, 2, short_assign); }) == Errc::bad_assignment);
  CHECK(errc_of([&] { pad_and_identify(meet, 2, out_of_range); }) == Errc::bad_assignment);
}

TEST_CASE("graph examples") {
  const auto id = graph(projection(1, 0, 2));
  CHECK(id.tuples() == std::vector<Tuple>{{0, 0}, {1, 1}});
  const auto meet = TermAlgebra::lattice(C2()).generators()[0];
  CHECK(graph(meet).tuples() == std::vector<Tuple>{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}});
  CHECK(graph(TermAlgebra::lattice(C3()).generators()[1]).size() == 9);
}

TEST_CASE("Relation canonical form") {
  const Relation r(2, 3, {{2, 1}, {0, 2}, {2, 1}, {0, 0}});
  CHECK(r.tuples() == std::vector<Tuple>{{0, 0}, {0, 2}, {2, 1}});
  CHECK(r.contains(Tuple{0, 2}));
  CHECK_FALSE(r.contains(Tuple{1, 1}));
  CHECK(r.subset_of(Relation::full(2, 3)));
  CHECK(Relation::full(2, 3).size() == 9);
  CHECK(r == Relation::from_codes(2, 3, {7, 0, 2}));
  CHECK(errc_of([] { Relation(2, 3, {{0, 3}}); }) == Errc::bad_spec);
  CHECK(errc_of([] { Relation(2, 3, {{0}}); }) == Errc::arity_mismatch);
}

TEST_CASE("commute examples") {
  const auto gens = TermAlgebra::lattice(C2()).generators();
  const auto& meet = gens[0];
  const auto& join = gens[1];
  CHECK(commute(meet, meet).commute);
  CHECK(commute(join, join).commute);

  const auto v = commute(meet, join);
  REQUIRE_FALSE(v.commute);
  REQUIRE(v.witness.has_value());
  // rows of the witness are fed to join, the column results to meet, and vice versa
  auto rows_then_col = [&](const std::vector<Tuple>& m) {
    Tuple col;
    for (const auto& row : m) col.push_back(join(row));
    return meet(col);
  };
  auto cols_then_row = [&](const std::vector<Tuple>& m) {
    Tuple row;
    for (std::size_t j = 0; j < m[0].size(); ++j) {
      Tuple col;
      for (const auto& r : m) col.push_back(r[j]);
      row.push_back(meet(col));
    }
    return join(row);
  };
  CHECK(rows_then_col(*v.witness) != cols_then_row(*v.witness));
  const std::vector<Tuple> textbook{{1, 0}, {0, 1}};
  CHECK(rows_then_col(textbook) != cols_then_row(textbook));

  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(commute(projection(k, i, 2), meet).commute);
      CHECK(commute(join, projection(k, i, 2)).commute);
    }
}

TEST_CASE("commute and preserves agree with the oracle on all binary ops of C2") {
  const auto ops = all_binary(2);
  for (const auto& f : ops)
    for (const auto& g : ops) {
      const bool c = commute(f, g).commute;
      CHECK(c == oracle::commute(oracle::table_of(f), 2, oracle::table_of(g), 2, 2));
      CHECK(c == commute(g, f).commute);
      CHECK(c == preserves(f, graph(g)).preserves);
      CHECK(c == preserves(g, graph(f)).preserves);
    }
}

TEST_CASE("property: commute symmetric on random mixed arities") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    const std::size_t carrier = 2 + rng() % 2;
    const auto f = random_op(rng, 1 + rng() % 2, carrier);
    const auto g = random_op(rng, 1 + rng() % 2, carrier);
    const bool c = commute(f, g).commute;
    CHECK(c == commute(g, f).commute);
    CHECK(c == oracle::commute(oracle::table_of(f), static_cast<int>(f.arity()), oracle::table_of(g),
                               static_cast<int>(g.arity()), static_cast<int>(carrier)));
  }
}

TEST_CASE("preserves examples") {
  const auto L = N5();
  const auto gens = TermAlgebra::lattice(L).generators();
  CHECK(preserves(gens[0], Relation::full(3, 5)).preserves);
  std::vector<Tuple> le;
  for (Elem x = 0; x < 5; ++x)
    for (Elem y = 0; y < 5; ++y)
      if (L.leq(x, y)) le.push_back({x, y});
  const Relation order(2, 5, le);
  CHECK(order.size() == 13);
  CHECK(preserves(gens[0], order).preserves);
  CHECK(preserves(gens[1], order).preserves);

  const OpTable flip(1, 5, {4, 3, 3, 1, 0});
  const auto v = preserves(flip, order);
  REQUIRE_FALSE(v.preserves);
  REQUIRE(v.witness.has_value());
  const auto& arg = (*v.witness)[0];
  CHECK(order.contains(arg));
  CHECK_FALSE(order.contains(Tuple{flip(Tuple{arg[0]}), flip(Tuple{arg[1]})}));
}

TEST_CASE("clone_slice frozen sizes") {
  const auto c2 = TermAlgebra::lattice(C2()).generators();
  const auto s = clone_slice(c2, 2);
  CHECK(s.size() == 4);
  const auto expected_tables = tables({projection(2, 0, 2), projection(2, 1, 2), c2[0], c2[1]});
  CHECK(tables(s) == expected_tables);

  CHECK(clone_slice(TermAlgebra::lattice(C2()).generators(), 3).size() == 18);
  CHECK(clone_slice(TermAlgebra::lattice(C3()).generators(), 3).size() == 18);
  CHECK(clone_slice(TermAlgebra::lattice(B2()).generators(), 3).size() == 18);
  CHECK(clone_slice(TermAlgebra::lattice(N5()).generators(), 2).size() == 4);
  CHECK(clone_slice(TermAlgebra::lattice(M3()).generators(), 2).size() == 4);
  CHECK(clone_slice(TermAlgebra::lattice(C3()).generators(), 1).size() == 1);

  for (const auto& L : {C3(), B2(), N5(), M3()}) {
    const auto meet_only = TermAlgebra::semilattice(L).generators();
    for (std::size_t n = 1; n <= 3; ++n) CHECK(clone_slice(meet_only, n).size() == (1u << n) - 1);
  }
  CHECK(clone_slice(TermAlgebra::semilattice(Fence()).generators(), 3).size() == 7);

  CHECK(errc_of([&] { clone_slice(c2, 3, 10); }) == Errc::limit_exceeded);
}

TEST_CASE("clone_slice matches the naive term-function oracle") {
  for (const auto& p : {chain(3), boolean(2), n5(), m3()}) {
    const auto gens = TermAlgebra::lattice(lattice(p)).generators();
    for (int n = 1; n <= 2; ++n) {
      const auto expected = oracle::term_functions({meet_fn(p), join_fn(p)}, p.size(), n);
      CHECK(tables(clone_slice(gens, n)) == expected);
    }
  }
  const auto p = chain(3);
  CHECK(tables(clone_slice(TermAlgebra::lattice(lattice(p)).generators(), 3)) ==
        oracle::term_functions({meet_fn(p), join_fn(p)}, 3, 3));
}

TEST_CASE("property: clone_slice is closed and canonically sorted") {
  for (const auto& [name, L] : all_lattices()) {
    CAPTURE(name);
    const auto gens = TermAlgebra::lattice(L).generators();
    const auto s = clone_slice(gens, 2);
    CHECK(std::is_sorted(s.begin(), s.end()));
    std::set<OpTable> members(s.begin(), s.end());
    for (const auto& g : gens)
      for (const auto& a : s)
        for (const auto& b : s) CHECK(members.count(compose(g, std::vector<OpTable>{a, b})) == 1);
    for (const auto& m : s) CHECK_FALSE(m.provenance().empty());
  }
}

TEST_CASE("centralizer_slice examples") {
  const auto c2 = TermAlgebra::lattice(C2()).generators();
  const auto k1 = centralizer_slice(c2, 1);
  CHECK(k1.size() == 3);
  CHECK(tables(k1) == std::set<oracle::Fn>{{0, 1}, {0, 0}, {1, 1}});

  const auto meet_c3 = TermAlgebra::semilattice(C3()).generators();
  const auto p = chain(3);
  CHECK(tables(centralizer_slice(meet_c3, 1)) == oracle::centralizer({meet_fn(p)}, 3, 1));

  for (const auto& [name, L] : all_lattices()) {
    const auto gens = TermAlgebra::lattice(L).generators();
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto cs = centralizer_slice(gens, k);
      std::set<OpTable> members(cs.begin(), cs.end());
      for (std::size_t i = 0; i < k; ++i) CHECK(members.count(projection(k, i, L.size())) == 1);
    }
  }
  CHECK(errc_of([&] { centralizer_slice(c2, 2, 2); }) == Errc::limit_exceeded);
}

TEST_CASE("centralizer_slice matches raw enumeration on small carriers") {
  for (const auto& p : {chain(2), chain(3), vee(), n5(), m3(), boolean(2)}) {
    const int n = p.size();
    std::vector<oracle::Fn> ops{meet_fn(p)};
    if (p.lub(0, n - 1) >= 0 && p.glb(1, 2) >= 0) {
      bool lattice_like = true;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) lattice_like = lattice_like && p.lub(x, y) >= 0;
      if (lattice_like) ops.push_back(join_fn(p));
    }
    std::vector<OpTable> gens;
    for (const auto& f : ops) gens.push_back(op(2, n, f));
    CAPTURE(p.names);
    CHECK(tables(centralizer_slice(gens, 1)) == oracle::centralizer(ops, n, 1));
    if (n <= 3)
      CHECK(tables(centralizer_slice(gens, 2)) == oracle::centralizer(ops, n, 2));
  }
}

TEST_CASE("property: centralizer commutes with the whole clone slice") {
  for (const auto& [name, L] : all_lattices()) {
    if (L.size() > 5) continue;
    CAPTURE(name);
    for (bool join : {true, false}) {
      const auto gens = join ? TermAlgebra::lattice(L).generators() : TermAlgebra::semilattice(L).generators();
      for (std::size_t k = 1; k <= 2; ++k) {
        const auto cs = centralizer_slice(gens, k);
        for (std::size_t n = 1; n <= 2; ++n)
          for (const auto& f : clone_slice(gens, n))
            for (const auto& g : cs) CHECK(commute(f, g).commute);
      }
    }
  }
}

TEST_CASE("closure_under examples") {
  const auto gens = TermAlgebra::lattice(C2()).generators();
  const Relation single(2, 2, {{0, 1}});
  CHECK(closure_under(single, gens) == single);
  const Relation pair(2, 2, {{0, 1}, {1, 0}});
  CHECK(closure_under(pair, gens).tuples() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  const std::vector<OpTable> projs{projection(1, 0, 3), projection(2, 1, 3), projection(3, 0, 3)};
  const Relation t(3, 3, {{0, 1, 2}, {2, 2, 0}});
  CHECK(closure_under(t, projs) == t);

  CHECK(errc_of([&] { closure_under(pair, gens, 3); }) == Errc::limit_exceeded);
}

TEST_CASE("property: closure_under matches the fixpoint oracle") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto p = round % 2 ? n5() : chain(3);
    const int n = p.size();
    const int h = 1 + static_cast<int>(rng() % 3);
    std::set<oracle::Tup> seed;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      oracle::Tup t;
      for (int j = 0; j < h; ++j) t.push_back(static_cast<int>(rng() % n));
      seed.insert(t);
    }
    const oracle::Fn unary = {0, static_cast<int>(rng() % n), n - 1, 1 % n, 0};
    oracle::Fn u(unary.begin(), unary.begin() + n);
    const std::vector<std::pair<oracle::Fn, int>> ops{{meet_fn(p), 2}, {u, 1}};
    const std::vector<OpTable> lib_ops{op(2, n, meet_fn(p)), op(1, n, u)};
    CHECK(oracle::as_set(closure_under(oracle::as_relation(seed, h, n), lib_ops)) == oracle::closure(seed, ops, n));
  }
}
