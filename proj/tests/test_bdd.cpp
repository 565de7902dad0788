#include <algorithm>

#include "aigsynth/bdd.hpp"
#include "doctest.h"
#include "formula.hpp"
#include "support.hpp"

using namespace aigsynth::bdd;
using testsupport::Rng;
using testsupport::Table;
using testsupport::Formula;
using testsupport::random_formula;
using testsupport::table_of;

namespace {

Table exists_table(Table t, const std::vector<unsigned>& vars) {
  for (unsigned v : vars) {
    Table shifted;
    for (unsigned row = 0; row < 256; ++row)
      if (t[row] || t[row ^ (1u << v)]) shifted.set(row);
    t = shifted;
  }
  return t;
}

std::vector<unsigned> random_subset(Rng& rng, unsigned n) {
  std::vector<unsigned> out;
  for (unsigned v = 0; v < n; ++v)
    if (rng() & 1) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("constants and variables") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var();
  Bdd X = Bdd::var(m, x), Y = Bdd::var(m, y);
  CHECK((Bdd::one(m) & X) == X);
  CHECK(Bdd::var(m, x) == X);
  bool xy[2] = {true, false};
  CHECK(X.eval(xy));
  CHECK((X & !Y).eval(xy));
  CHECK(Bdd::ite(X, Bdd::one(m), Bdd::zero(m)) == X);
  CHECK((X & !X).is_zero());
  CHECK((X | !X).is_one());
  CHECK(X.node_count() == 1);
  CHECK(Bdd::one(m).node_count() == 0);
  bool none[1] = {false};
  CHECK(Bdd::one(m).eval(std::span<const bool>(none, 0)));
  CHECK_THROWS_AS(m.var(99), std::out_of_range);
}

TEST_CASE("eval with a missing assignment throws") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var();
  NodeRef f = m.apply_and(m.var(x), m.var(y));
  CHECK(m.eval(f, {{x, true}, {y, true}}));
  CHECK_THROWS_AS(m.eval(f, std::unordered_map<VarId, bool>{{x, true}}), std::out_of_range);
}

TEST_CASE("mixed managers are rejected") {
  Manager a, b;
  a.new_var();
  b.new_var();
  Bdd x = Bdd::var(a, 0), y = Bdd::var(b, 0);
  CHECK_THROWS_AS(x & y, std::invalid_argument);
}

TEST_CASE("canonicity against truth tables") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    Manager m;
    for (int v = 0; v < 8; ++v) m.new_var();
    unsigned n = 5;
    Formula a = random_formula(m, rng, 0, n, 5), b = random_formula(m, rng, 0, n, 5);
    CHECK(table_of(a.f) == a.t);
    CHECK((a.f == b.f) == (a.t == b.t));
  }
}

TEST_CASE("boolean algebra") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Manager m;
    for (int v = 0; v < 8; ++v) m.new_var();
    Bdd f = random_formula(m, rng, 0, 8, 6).f, g = random_formula(m, rng, 0, 8, 6).f;
    CHECK((f & g) == (g & f));
    CHECK((f | !f).is_one());
    CHECK(!!f == f);
    CHECK(!(f & g) == ((!f) | (!g)));
    CHECK(f.implies(g) == ((!f) | g));
    CHECK(f.iff(g) == !(f ^ g));
  }
}

TEST_CASE("quantification") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var();
  Bdd X = Bdd::var(m, x), Y = Bdd::var(m, y);
  std::vector<VarId> xs{x};
  Bdd cx = Bdd::cube(m, xs);
  CHECK((X & Y).exists(cx) == Y);
  CHECK((X | Y).forall(cx) == Y);
  CHECK(X.and_exists(Y, cx) == Y);

  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    Manager n;
    for (int v = 0; v < 8; ++v) n.new_var();
    Formula f = random_formula(n, rng, 0, 6, 6), g = random_formula(n, rng, 0, 6, 6);
    auto vars = random_subset(rng, 6);
    std::vector<VarId> ids(vars.begin(), vars.end());
    Bdd cube = Bdd::cube(n, ids);
    Bdd ex = f.f.exists(cube);
    CHECK(table_of(ex) == exists_table(f.t, vars));
    CHECK(f.f.forall(cube) == !(!f.f).exists(cube));
    CHECK(f.f.and_exists(g.f, cube) == (f.f & g.f).exists(cube));
    CHECK(f.f.and_exists(Bdd::one(n), cube) == ex);
    for (VarId v : ids) {
      auto support = n.support(ex.node());
      CHECK(std::find(support.begin(), support.end(), v) == support.end());
    }
  }
}

TEST_CASE("vector composition") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var(), z = m.new_var();
  Bdd X = Bdd::var(m, x), Y = Bdd::var(m, y), Z = Bdd::var(m, z);
  std::vector<std::optional<Bdd>> subst(3);
  subst[x] = Y & Z;
  CHECK(X.compose(subst) == (Y & Z));
  std::vector<std::optional<Bdd>> identity{X, Y, Z};
  Bdd f = (X ^ Y) | Z;
  CHECK(f.compose(identity) == f);
  CHECK(f.compose({}) == f);

  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    Manager n;
    for (int v = 0; v < 8; ++v) n.new_var();
    Formula f4 = random_formula(n, rng, 0, 4, 5);
    std::vector<std::optional<Bdd>> sub(4);
    std::vector<Table> sub_t(4);
    for (unsigned v = 0; v < 4; ++v) {
      if (rng() % 4 == 0) continue;  // left alone
      Formula s = random_formula(n, rng, 4, 4, 4);
      sub[v] = s.f;
      sub_t[v] = s.t;
    }
    Table got = table_of(f4.f.compose(sub));
    for (unsigned row = 0; row < 256; ++row) {
      unsigned src = row & 0xf0;
      for (unsigned v = 0; v < 4; ++v) {
        bool bit = sub[v] ? sub_t[v][row] : ((row >> v) & 1);
        if (bit) src |= 1u << v;
      }
      CHECK(got[row] == f4.t[src]);
    }
  }
}

TEST_CASE("cofactor and restrict") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Manager m;
    for (int v = 0; v < 8; ++v) m.new_var();
    Formula f = random_formula(m, rng, 0, 6, 6), care = random_formula(m, rng, 0, 6, 6);
    VarId v = static_cast<VarId>(rng() % 6);
    Bdd hi = f.f.cofactor(v, true), lo = f.f.cofactor(v, false);
    Bdd V = Bdd::var(m, v);
    CHECK(Bdd::ite(V, hi, lo) == f.f);
    Bdd r = f.f.restrict(care.f);
    CHECK(((r ^ f.f) & care.f).is_zero());
  }
}

TEST_CASE("reference counting and garbage collection") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var();
  m.collect_garbage();
  NodeRef f = m.apply_and(m.var(x), m.var(y));
  m.ref(f);
  m.deref(f);
  CHECK(m.collect_garbage() >= 1);

  Bdd keep = Bdd::var(m, x) | Bdd::var(m, y);
  m.collect_garbage();
  CHECK(m.collect_garbage() == 0);
  bool tf[2] = {true, false};
  CHECK(keep.eval(tf));
  CHECK(keep == (Bdd::var(m, y) | Bdd::var(m, x)));
  VarId z = m.new_var();
  CHECK_THROWS_AS(m.deref(m.var(z)), std::logic_error);
}

TEST_CASE("live nodes survive collection") {
  Rng rng(6);
  Manager m;
  for (int v = 0; v < 8; ++v) m.new_var();
  std::vector<Formula> kept;
  for (int i = 0; i < 50; ++i) {
    kept.push_back(random_formula(m, rng, 0, 8, 6));
    random_formula(m, rng, 0, 8, 6);  // garbage
  }
  m.collect_garbage();
  for (const auto& k : kept) {
    CHECK(m.valid(k.f.node()));
    CHECK(table_of(k.f) == k.t);
  }
}

TEST_CASE("adjacent swap preserves functions") {
  Rng rng(8);
  Manager m;
  for (int v = 0; v < 8; ++v) m.new_var();
  std::vector<Formula> fs;
  for (int i = 0; i < 20; ++i) fs.push_back(random_formula(m, rng, 0, 8, 6));
  for (int i = 0; i < 40; ++i) {
    m.swap_adjacent(static_cast<std::uint32_t>(rng() % 7));
    for (const auto& f : fs) CHECK(table_of(f.f) == f.t);
  }
  auto order = m.order();
  std::sort(order.begin(), order.end());
  for (VarId v = 0; v < 8; ++v) CHECK(order[v] == v);
}

TEST_CASE("sifting") {
  SUBCASE("already minimal") {
    Manager m;
    VarId a = m.new_var(), b = m.new_var();
    Bdd f = Bdd::var(m, a) & Bdd::var(m, b);
    std::size_t before = f.node_count();
    m.sift_reorder();
    CHECK(f.node_count() == before);
  }
  SUBCASE("interleaving-sensitive function shrinks") {
    Manager m;
    VarId x[3], y[3];
    for (auto& v : x) v = m.new_var();
    for (auto& v : y) v = m.new_var();
    Bdd f = Bdd::zero(m);
    for (int i = 0; i < 3; ++i) f |= Bdd::var(m, x[i]) & Bdd::var(m, y[i]);
    std::size_t before = f.node_count();
    m.collect_garbage();
    m.sift_reorder();
    CHECK(f.node_count() < before);
    CHECK(f.node_count() == 6);  // optimal interleaved size
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
      bool vals[6];
      for (auto& b : vals) b = rng() & 1;
      bool expect = (vals[0] && vals[3]) || (vals[1] && vals[4]) || (vals[2] && vals[5]);
      CHECK(f.eval(vals) == expect);
    }
  }
  SUBCASE("never grows and never changes semantics") {
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
      Manager m;
      for (int v = 0; v < 8; ++v) m.new_var();
      Formula f = random_formula(m, rng, 0, 8, 7);
      m.collect_garbage();
      std::size_t before = m.live_node_count();
      m.sift_reorder();
      CHECK(m.live_node_count() <= before);
      CHECK(table_of(f.f) == f.t);
    }
  }
}

TEST_CASE("automatic reordering and limits") {
  Manager::Options o;
  o.auto_reorder = true;
  o.reorder_floor = 10;
  Manager m(o);
  VarId x[6], y[6];
  for (auto& v : x) v = m.new_var();
  for (auto& v : y) v = m.new_var();
  Bdd f = Bdd::zero(m);
  for (int i = 0; i < 6; ++i) f |= Bdd::var(m, x[i]) & Bdd::var(m, y[i]);
  f = f & Bdd::one(m);
  CHECK(m.reorder_count() >= 1);
  CHECK(f.node_count() < 60);

  Manager::Options small;
  small.max_nodes = 8;
  Manager tiny(small);
  for (int v = 0; v < 12; ++v) tiny.new_var();
  auto build = [&] {
    Bdd g = Bdd::zero(tiny);
    for (VarId v = 0; v < 12; v += 2) g = g ^ (Bdd::var(tiny, v) & Bdd::var(tiny, v + 1));
    return g;
  };
  CHECK_THROWS_AS(build(), ResourceExhausted);

  Manager::Options late;
  late.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  Manager expired(late);
  for (int v = 0; v < 24; ++v) expired.new_var();
  // Separated pairs need thousands of nodes, enough to reach a clock sample.
  CHECK_THROWS_AS(
      [&] {
        Bdd g = Bdd::zero(expired);
        for (VarId v = 0; v < 12; ++v) g = g ^ (Bdd::var(expired, v) & Bdd::var(expired, v + 12));
      }(),
      ResourceExhausted);
}

TEST_CASE("pick_minterm and dot") {
  Manager m;
  VarId x = m.new_var(), y = m.new_var();
  Bdd f = Bdd::var(m, x) & !Bdd::var(m, y);
  auto mt = m.pick_minterm(f.node());
  REQUIRE(mt);
  CHECK((*mt)[x]);
  CHECK_FALSE((*mt)[y]);
  CHECK_FALSE(m.pick_minterm(kZero));
  CHECK(m.to_dot(f.node()).find("digraph") != std::string::npos);
}
