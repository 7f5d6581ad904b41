#include <doctest.h>

#include <algorithm>

#include "stablelab/filter.hpp"
#include "test_util.hpp"

using namespace stablelab;
using namespace stablelab::testutil;

TEST_SUITE_BEGIN("filter");

TEST_CASE("filter recognition with diagnostics") {
  FinLattice D4 = diamond4();
  CHECK(is_filter(D4, bit(3)));
  CHECK(is_filter(D4, D4.carrier_mask()));

  auto v = filter_violation(D4, bit(1) | bit(2) | bit(3));
  REQUIRE(v.has_value());
  CHECK(v->kind == FilterViolation::Kind::NotMeetClosed);
  CHECK(v->w == 1);
  CHECK(v->v == 2);

  auto empty = filter_violation(D4, 0);
  REQUIRE(empty.has_value());
  CHECK(empty->kind == FilterViolation::Kind::Empty);

  auto not_upper = filter_violation(D4, bit(1));
  REQUIRE(not_upper.has_value());
  CHECK(not_upper->kind == FilterViolation::Kind::NotUpper);

  CHECK_THROWS_AS(make_filter(D4, 0), ValidationError);
}

TEST_CASE("principal filters and order reversal") {
  FinLattice D4 = diamond4();
  CHECK(principal_filter(D4, 1).members == (bit(1) | bit(3)));
  CHECK(principal_filter(D4, D4.top).members == bit(D4.top));
  CHECK(principal_filter(D4, D4.bottom).members == D4.carrier_mask());

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    FilterLattice FL = enumerate_filters(L);
    CHECK(FL.filters[FL.bottom()] == bit(L.top));
    for (int a = 0; a < L.n(); ++a)
      for (int b = 0; b < L.n(); ++b) {
        bool reversed = (principal_filter(L, b).members & ~principal_filter(L, a).members) == 0;
        CHECK(L.le(a, b) == reversed);
      }
  }
}

TEST_CASE("filter enumeration routes agree") {
  CHECK(enumerate_filters(chain(2)).size() == 2);
  CHECK(enumerate_filters(diamond4()).size() == 4);

  FinLattice P5 = p5();
  FilterLattice FL = enumerate_filters(P5);
  CHECK(FL.size() == 5);
  CHECK(find_lattice_isomorphism(FL.order, opposite(P5)).has_value());

  for (const FinLattice& L : enumerate_distributive_lattices(3))
    CHECK(enumerate_filters(L).order.distributive);

  // Non-distributive carriers still have a filter lattice (of their
  // opposite shape), only the exponential is off the table.
  FinLattice N5 = n5();
  FilterLattice FN = enumerate_filters(N5);
  CHECK(FN.size() == 5);
  CHECK(find_lattice_isomorphism(FN.order, opposite(N5)).has_value());
  CHECK_FALSE(FN.order.distributive);
  CHECK_THROWS_AS(filter_heyting(FN.at(0), FN.at(1)), ValidationError);
}

TEST_CASE("meets, joins, and the unit filter") {
  FinLattice D4 = diamond4();
  Filter ua = principal_filter(D4, 1), ub = principal_filter(D4, 2);
  CHECK(filter_join(ua, ub).members == D4.carrier_mask());
  CHECK(filter_meet(ua, ub).members == bit(3));

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    FilterLattice FL = enumerate_filters(L);
    Filter unit = principal_filter(L, L.top);
    for (int i = 0; i < FL.size(); ++i) {
      CHECK(filter_join(FL.at(i), unit).members == FL.filters[i]);
      CHECK(filter_meet(FL.at(i), FL.at(FL.top())).members == FL.filters[i]);
    }
  }

  FinLattice other = diamond4();
  other.poset.leq[1] = 0;  // corrupt a copy so the carriers differ
  Filter foreign{&other, bit(3)};
  CHECK_THROWS_AS(filter_join(ua, foreign), CarrierMismatch);
}

TEST_CASE("exponentials satisfy the adjunction in the locale") {
  FinLattice D4 = diamond4();
  CHECK(filter_heyting(principal_filter(D4, 1), principal_filter(D4, 3)).members ==
        principal_filter(D4, 2).members);
  CHECK(filter_heyting(principal_filter(D4, 1), principal_filter(D4, 1)).members ==
        D4.carrier_mask());

  FinLattice C3 = chain(3);
  CHECK(filter_heyting(principal_filter(C3, 1), principal_filter(C3, 2)).members == bit(2));

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    FilterLattice FL = enumerate_filters(L);
    for (int i = 0; i < FL.size(); ++i)
      for (int j = 0; j < FL.size(); ++j) {
        Bitset exp = filter_heyting(FL.at(i), FL.at(j)).members;
        for (int g = 0; g < FL.size(); ++g) {
          bool lhs = (FL.filters[g] & FL.filters[i] & ~FL.filters[j]) == 0;
          bool rhs = (FL.filters[g] & ~exp) == 0;
          CHECK(lhs == rhs);
        }
        // The locale's own implication computes the same filter.
        int via_order = heyting_implies(FL.order, i, j);
        CHECK(FL.filters[via_order] == exp);
      }
  }
}

TEST_CASE("compact elements are the principal filters") {
  FinLattice D4 = diamond4();
  FilterLattice FL = enumerate_filters(D4);
  CHECK(compact_elements(FL).size() == 4);

  FilterLattice FC2 = enumerate_filters(chain(2));
  CHECK(compact_elements(FC2).size() == 2);

  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    FilterLattice F = enumerate_filters(L);
    std::vector<int> compacts = compact_elements(F);
    REQUIRE(static_cast<int>(compacts.size()) == F.size());
    // Ordered by inclusion they form the opposite of the carrier.
    CHECK(find_lattice_isomorphism(F.order, opposite(L)).has_value());
  }
}

TEST_CASE("coherent reconstruction") {
  CHECK(coherent_reconstruct(chain(1)).ok);
  CHECK(coherent_reconstruct(chain(3)).ok);
  CoherenceReport rep = coherent_reconstruct(diamond4());
  CHECK(rep.ok);
  CHECK(rep.joins_of_compacts);
  CHECK(rep.compacts_sublattice);
  CHECK(!rep.orientation_note.empty());
  CHECK(rep.isomorphism.size() == 4);
}

TEST_CASE("extension of the principal embedding is the identity") {
  for (const FinLattice& W : enumerate_distributive_lattices(2)) {
    FinLattice opp = opposite(W);
    FilterLattice FL = enumerate_filters(W);
    MonotoneMap emb{&opp, &FL.order, {}};
    emb.table.resize(W.n());
    for (int w = 0; w < W.n(); ++w) emb.table[w] = FL.index_of(W.up_set(w));
    ScottExtension ext = scott_extend(emb);
    REQUIRE(ext.domain_filters == FL.filters);
    for (int i = 0; i < FL.size(); ++i) CHECK(ext.sigma[i] == i);
  }
}

TEST_CASE("extension of meet-with-a on the diamond") {
  FinLattice D4 = diamond4();
  MonotoneMap f{&D4, &D4, {0, 1, 0, 1}};  // x |-> x /\ a
  ScottExtension ext = scott_extend(f);
  for (int x = 0; x < 4; ++x) CHECK(ext.sigma[ext.principal[x]] == D4.meet(x, 1));

  // sigma -| nerve on every pair.
  for (int i = 0; i < ext.domain_order.n(); ++i)
    for (int y = 0; y < 4; ++y)
      CHECK(D4.le(ext.sigma[i], y) == ext.domain_order.le(i, ext.nerve[y]));

  MonotoneMap broken{&D4, &D4, {1, 1, 1, 1}};
  CHECK_THROWS_AS(scott_extend(broken), ValidationError);
}

TEST_CASE("stable map recognition") {
  FinLattice D4 = diamond4();
  FinLattice C2 = chain(2);
  MonotoneMap id{&D4, &D4, {0, 1, 2, 3}};
  CHECK(is_stable_map(id).ok);

  MonotoneMap f{&D4, &C2, {0, 0, 1, 1}};
  CHECK(is_stable_map(f).ok);

  MonotoneMap to_bottom{&D4, &D4, {0, 0, 0, 0}};
  StableCheck sc = is_stable_map(to_bottom);
  CHECK_FALSE(sc.ok);
  CHECK(sc.top_failed);
}

TEST_CASE("preimages of filters along stable maps") {
  FinLattice D4 = diamond4();
  FinLattice C2 = chain(2);

  MonotoneMap id{&D4, &D4, {0, 1, 2, 3}};
  for (int w = 0; w < 4; ++w)
    CHECK(preimage(id, principal_filter(D4, w)).members == D4.up_set(w));

  MonotoneMap to_top{&D4, &D4, {3, 3, 3, 3}};
  CHECK(preimage(to_top, principal_filter(D4, 2)).members == D4.carrier_mask());

  MonotoneMap f{&D4, &C2, {0, 0, 1, 1}};
  CHECK(preimage(f, principal_filter(C2, 1)).members == (bit(2) | bit(3)));

  MonotoneMap unstable{&D4, &D4, {0, 0, 0, 0}};
  CHECK_THROWS_AS(preimage(unstable, principal_filter(D4, 0)), ValidationError);
}

TEST_CASE("stable maps are recovered from their preimage action") {
  FinLattice D4 = diamond4();
  FinLattice C2 = chain(2);

  MonotoneMap id{&D4, &D4, {0, 1, 2, 3}};
  DualityRoundtrip r1 = duality_roundtrip(id);
  CHECK(r1.equal);
  CHECK(r1.adjunction_ok);
  CHECK(r1.compacts_preserved);

  MonotoneMap f{&D4, &C2, {0, 0, 1, 1}};
  CHECK(duality_roundtrip(f).equal);

  MonotoneMap to_top{&D4, &C2, {1, 1, 1, 1}};
  CHECK(duality_roundtrip(to_top).equal);
}

TEST_SUITE_END();
