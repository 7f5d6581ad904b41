#include <doctest.h>

#include <algorithm>

#include "stablelab/lattice.hpp"
#include "test_util.hpp"

using namespace stablelab;
using namespace stablelab::testutil;

TEST_SUITE_BEGIN("lattice");

namespace {

// Independent greatest-lower-bound oracle: collect all lower bounds, pick
// the one that dominates every other, fail if ambiguous.
int oracle_meet(const FinPoset& p, int a, int b) {
  std::vector<int> lower;
  for (int c = 0; c < p.n; ++c)
    if (p.le(c, a) && p.le(c, b)) lower.push_back(c);
  for (int c : lower) {
    bool greatest = true;
    for (int d : lower)
      if (!p.le(d, c)) greatest = false;
    if (greatest) return c;
  }
  return -1;
}

int oracle_join(const FinPoset& p, int a, int b) {
  std::vector<int> upper;
  for (int c = 0; c < p.n; ++c)
    if (p.le(a, c) && p.le(b, c)) upper.push_back(c);
  for (int c : upper) {
    bool least = true;
    for (int d : upper)
      if (!p.le(c, d)) least = false;
    if (least) return c;
  }
  return -1;
}

bool dual_distributive(const FinLattice& L) {
  for (int a = 0; a < L.n(); ++a)
    for (int x = 0; x < L.n(); ++x)
      for (int y = 0; y < L.n(); ++y)
        if (L.join(a, L.meet(x, y)) != L.meet(L.join(a, x), L.join(a, y))) return false;
  return true;
}

}  // namespace

TEST_CASE("poset validation reports the first violation") {
  CHECK(find_poset_violation(2, {1, 1, 0, 1}) == std::nullopt);

  auto anti = find_poset_violation(2, {1, 1, 1, 1});
  REQUIRE(anti.has_value());
  CHECK(anti->kind == PosetViolationKind::Antisymmetry);
  CHECK(anti->i == 0);
  CHECK(anti->j == 1);

  // 0 <= 1 <= 2 but not 0 <= 2.
  auto trans = find_poset_violation(3, {1, 1, 0, 0, 1, 1, 0, 0, 1});
  REQUIRE(trans.has_value());
  CHECK(trans->kind == PosetViolationKind::Transitivity);
  CHECK(trans->i == 0);
  CHECK(trans->j == 1);
  CHECK(trans->k == 2);

  auto refl = find_poset_violation(1, {0});
  REQUIRE(refl.has_value());
  CHECK(refl->kind == PosetViolationKind::Reflexivity);

  CHECK_THROWS_AS(check_poset(2, {1, 1, 1, 1}), ValidationError);
}

TEST_CASE("diamond lattice structure") {
  FinLattice D4 = diamond4();
  CHECK(D4.bottom == 0);
  CHECK(D4.top == 3);
  CHECK(D4.meet(1, 2) == 0);
  CHECK(D4.join(1, 2) == 3);
  CHECK(D4.distributive);
}

TEST_CASE("pentagon is a non-distributive lattice with the expected witness") {
  FinLattice N5 = n5();
  CHECK_FALSE(N5.distributive);
  REQUIRE(N5.distributivity_witness.has_value());
  // c /\ (a \/ b) = c while (c /\ a) \/ (c /\ b) = a.
  auto w = *N5.distributivity_witness;
  CHECK(w.a == 3);
  CHECK(w.x == 1);
  CHECK(w.y == 2);
  CHECK(N5.meet(w.a, N5.join(w.x, w.y)) == 3);
  CHECK(N5.join(N5.meet(w.a, w.x), N5.meet(w.a, w.y)) == 1);
}

TEST_CASE("two incomparable points do not form a lattice") {
  auto fail = find_lattice_failure(antichain_poset(2));
  REQUIRE(fail.has_value());
  CHECK(fail->a == 0);
  CHECK(fail->b == 1);
  CHECK(fail->missing_meet);
  CHECK_THROWS_AS(complete_lattice(antichain_poset(2)), ValidationError);
}

TEST_CASE("implication agrees with the brute-force maximum") {
  FinLattice C3 = chain(3);
  CHECK(heyting_implies(C3, 1, 0) == 0);

  FinLattice D4 = diamond4();
  CHECK(heyting_implies(D4, 1, 2) == 2);

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    for (int a = 0; a < L.n(); ++a) {
      CHECK(heyting_implies(L, a, a) == L.top);
      for (int b = 0; b < L.n(); ++b) {
        int r = heyting_implies(L, a, b);
        // max over candidates, checked pairwise
        CHECK(L.le(L.meet(r, a), b));
        for (int c = 0; c < L.n(); ++c)
          CHECK(L.le(L.meet(c, a), b) == L.le(c, r));
      }
    }
  }
  CHECK_THROWS_AS(heyting_implies(n5(), 1, 0), ValidationError);
}

TEST_CASE("downset lattice of small generating posets") {
  CHECK(birkhoff(antichain_poset(0)).n() == 1);

  FinLattice four = birkhoff(antichain_poset(2));
  CHECK(four.n() == 4);
  CHECK(find_lattice_isomorphism(four, diamond4()).has_value());

  // x < z, y < z yields two atoms and a single coatom below the top.
  FinLattice five = birkhoff(poset_from_pairs(3, {{0, 2}, {1, 2}}));
  CHECK(five.n() == 5);
  CHECK(find_lattice_isomorphism(five, p5()).has_value());
  auto covers = cover_pairs(five.poset);
  int atoms = 0, coatoms = 0;
  for (auto [a, b] : covers) {
    if (a == five.bottom) ++atoms;
    if (b == five.top) ++coatoms;
  }
  CHECK(atoms == 2);
  CHECK(coatoms == 1);

  CHECK_THROWS_AS(birkhoff(antichain_poset(4), 8), CapExceeded);
}

TEST_CASE("opposite is an involution and swaps the shape") {
  CHECK(find_lattice_isomorphism(opposite(chain(2)), chain(2)).has_value());

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    FinLattice twice = opposite(opposite(L));
    CHECK(same_lattice(twice, L));
    CHECK(opposite(L).distributive == L.distributive);
    CHECK(opposite(L).bottom == L.top);
    CHECK(opposite(L).top == L.bottom);
  }

  FinLattice P5op = opposite(p5());
  int atoms = 0, coatoms = 0;
  for (auto [a, b] : cover_pairs(P5op.poset)) {
    if (a == P5op.bottom) ++atoms;
    if (b == P5op.top) ++coatoms;
  }
  CHECK(atoms == 1);
  CHECK(coatoms == 2);
}

TEST_CASE("lattice enumeration by unlabeled base poset") {
  CHECK(enumerate_distributive_lattices(0).size() == 1);
  CHECK(enumerate_distributive_lattices(0)[0].n() == 1);

  auto two = enumerate_distributive_lattices(2);
  REQUIRE(two.size() == 4);
  std::vector<int> sizes;
  for (const FinLattice& L : two) sizes.push_back(L.n());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{1, 2, 3, 4});

  CHECK(enumerate_distributive_lattices(3).size() == 9);
  CHECK(enumerate_posets(3).size() == 5);
  CHECK_THROWS_AS(enumerate_distributive_lattices(kMaxBaseSize + 1), CapExceeded);
}

TEST_CASE("canonical keys identify isomorphic posets") {
  FinPoset a = poset_from_pairs(3, {{0, 1}});
  FinPoset b = poset_from_pairs(3, {{2, 0}});
  CHECK(canonical_poset_key(a) == canonical_poset_key(b));
  CHECK(canonical_poset_key(a) != canonical_poset_key(chain_poset(3)));
}

TEST_CASE("tables agree with the bound-scan oracle across the sweep") {
  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    for (int a = 0; a < L.n(); ++a)
      for (int b = 0; b < L.n(); ++b) {
        CHECK(L.meet(a, b) == oracle_meet(L.poset, a, b));
        CHECK(L.join(a, b) == oracle_join(L.poset, a, b));
        CHECK(L.le(L.bottom, a));
        CHECK(L.le(a, L.top));
      }
    CHECK(L.distributive);
    CHECK(dual_distributive(L));
    CHECK(find_poset_violation(L.poset.n, L.poset.leq) == std::nullopt);
  }
  // The two distributive laws stand or fall together.
  CHECK(dual_distributive(n5()) == n5().distributive);
}

TEST_CASE("monotone map checks") {
  FinLattice D4 = diamond4();
  FinLattice C2 = chain(2);
  MonotoneMap f{&D4, &C2, {0, 0, 1, 1}};
  CHECK(monotonicity_violation(f) == std::nullopt);

  MonotoneMap bad{&D4, &C2, {1, 0, 0, 1}};
  CHECK(monotonicity_violation(bad).has_value());

  // x |-> x /\ a preserves joins on the diamond.
  MonotoneMap dia{&D4, &D4, {0, 1, 0, 1}};
  CHECK(check_join_preserving(dia).ok);
  MonotoneMap not_jp{&D4, &D4, {1, 1, 1, 1}};
  CHECK_FALSE(check_join_preserving(not_jp).ok);
  CHECK(check_join_preserving(not_jp).bottom_failed);
}

TEST_SUITE_END();
