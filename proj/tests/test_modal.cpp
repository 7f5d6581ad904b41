#include <doctest.h>

#include <algorithm>
#include <vector>

#include "stablelab/modal.hpp"
#include "test_util.hpp"

using namespace stablelab;
using namespace stablelab::testutil;

TEST_SUITE_BEGIN("modal");

namespace {

std::vector<std::uint8_t> rel_from_rows(const std::vector<Bitset>& rows, int n) {
  std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) rel[static_cast<size_t>(w) * n + v] = has_bit(rows[w], v) ? 1 : 0;
  return rel;
}

bool law_holds(const FinLattice& L, const std::vector<std::uint8_t>& rel) {
  auto at = [&](int w, int v) { return rel[static_cast<size_t>(w) * L.n() + v] != 0; };
  for (int w = 0; w < L.n(); ++w)
    for (int v = 0; v < L.n(); ++v) {
      if (!at(w, v)) continue;
      for (int w2 = 0; w2 < L.n(); ++w2)
        for (int v2 = 0; v2 < L.n(); ++v2)
          if (L.le(w2, w) && L.le(v, v2) && !at(w2, v2)) return false;
    }
  return true;
}

bool cond_ii(const FinLattice& L, const std::vector<std::uint8_t>& rel) {
  for (int w = 0; w < L.n(); ++w)
    if (!rel[static_cast<size_t>(w) * L.n() + L.top]) return false;
  return true;
}

bool cond_iv(const FinLattice& L, const std::vector<std::uint8_t>& rel) {
  for (int v = 0; v < L.n(); ++v)
    if ((rel[static_cast<size_t>(L.top) * L.n() + v] != 0) != (v == L.top)) return false;
  return true;
}

bool cond_i(const FinLattice& L, const std::vector<std::uint8_t>& rel) {
  auto at = [&](int w, int v) { return rel[static_cast<size_t>(w) * L.n() + v] != 0; };
  for (int w = 0; w < L.n(); ++w)
    for (int v1 = 0; v1 < L.n(); ++v1)
      for (int v2 = 0; v2 < L.n(); ++v2)
        if (at(w, v1) && at(w, v2) && !at(w, L.meet(v1, v2))) return false;
  return true;
}

bool cond_iii(const FinLattice& L, const std::vector<std::uint8_t>& rel) {
  auto at = [&](int w, int v) { return rel[static_cast<size_t>(w) * L.n() + v] != 0; };
  for (int w1 = 0; w1 < L.n(); ++w1)
    for (int w2 = 0; w2 < L.n(); ++w2)
      for (int v = 0; v < L.n(); ++v) {
        if (!at(L.meet(w1, w2), v)) continue;
        bool found = false;
        for (int v1 = 0; v1 < L.n() && !found; ++v1)
          for (int v2 = 0; v2 < L.n() && !found; ++v2)
            if (at(w1, v1) && at(w2, v2) && L.le(L.meet(v1, v2), v)) found = true;
        if (!found) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("the order itself is a stable bimodule") {
  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    StableBimodule B = order_bimodule(L);
    CHECK(bimodule_violation(L, B.rel) == std::nullopt);
  }
}

TEST_CASE("classic violations are reported in order") {
  FinLattice D4 = diamond4();

  std::vector<std::uint8_t> full(16, 1);
  auto v = bimodule_violation(D4, full);
  REQUIRE(v.has_value());
  CHECK(v->cond == BimoduleViolation::Cond::IV);

  std::vector<std::uint8_t> empty(16, 0);
  auto e = bimodule_violation(D4, empty);
  REQUIRE(e.has_value());
  CHECK(e->cond == BimoduleViolation::Cond::II);

  CHECK_THROWS_AS(check_stable_bimodule(D4, full), ValidationError);
}

TEST_CASE("condition (ii) is redundant given the law and (iv)") {
  FinLattice C3 = chain(3);
  for (Bitset mask = 0; mask < (Bitset{1} << 9); ++mask) {
    std::vector<std::uint8_t> rel(9);
    for (int p = 0; p < 9; ++p) rel[p] = has_bit(mask, p) ? 1 : 0;
    if (law_holds(C3, rel) && cond_iv(C3, rel)) CHECK(cond_ii(C3, rel));
  }
}

TEST_CASE("breaking a single condition breaks a modal operator") {
  // Meet-closure of the relation rows fails at one world: the diamond
  // image of a filter stops being a filter.
  FinLattice P5 = p5();
  auto rel_i = rel_from_rows({full_mask(5), full_mask(5), full_mask(5),
                              bit(1) | bit(2) | bit(3) | bit(4), bit(4)},
                             5);
  CHECK(law_holds(P5, rel_i));
  auto vi = bimodule_violation(P5, rel_i);
  REQUIRE(vi.has_value());
  CHECK(vi->cond == BimoduleViolation::Cond::I);
  Bitset dia_img = diamond_set(P5, rel_i, P5.up_set(3));
  CHECK(filter_violation(P5, dia_img).has_value());

  // The meet decomposition fails: the box image of the unit filter is no
  // longer meet-closed.
  FinLattice D4 = diamond4();
  auto rel_iii = rel_from_rows({bit(2) | bit(3), bit(3), bit(3), bit(3)}, 4);
  CHECK(law_holds(D4, rel_iii));
  auto viii = bimodule_violation(D4, rel_iii);
  REQUIRE(viii.has_value());
  CHECK(viii->cond == BimoduleViolation::Cond::III);
  Bitset box_img = box_set(D4, rel_iii, bit(3));
  CHECK(filter_violation(D4, box_img).has_value());

  // A top world related below itself empties the box image.
  std::vector<std::uint8_t> full(16, 1);
  CHECK(cond_iv(D4, full) == false);
  CHECK(box_set(D4, full, D4.up_set(1)) == 0);
}

TEST_CASE("bimodules on a three-chain are the antitone filter rows") {
  // Rows must shrink upward, end in {top}, and on a chain nothing more is
  // required: 3 + 2 + 1 choices.
  int count = 0;
  enumerate_stable_bimodules(chain(3), [&](const StableBimodule&) { ++count; });
  CHECK(count == 6);
}

TEST_CASE("upset enumeration matches the literal relation scan") {
  for (const FinLattice& L : enumerate_distributive_lattices(2)) {
    std::vector<std::vector<std::uint8_t>> by_dfs;
    enumerate_stable_bimodules(L, [&](const StableBimodule& B) { by_dfs.push_back(B.rel); });

    std::vector<std::vector<std::uint8_t>> by_scan;
    const int pairs = L.n() * L.n();
    for (Bitset mask = 0; mask < (Bitset{1} << pairs); ++mask) {
      std::vector<std::uint8_t> rel(pairs);
      for (int p = 0; p < pairs; ++p) rel[p] = has_bit(mask, p) ? 1 : 0;
      if (!bimodule_violation(L, rel)) by_scan.push_back(rel);
    }
    std::sort(by_dfs.begin(), by_dfs.end());
    std::sort(by_scan.begin(), by_scan.end());
    CHECK(by_dfs == by_scan);
  }
}

TEST_CASE("identity bimodule leaves filters alone") {
  for (const FinLattice& L : enumerate_distributive_lattices(3)) {
    StableBimodule B = order_bimodule(L);
    FilterLattice FL = enumerate_filters(L);
    for (int i = 0; i < FL.size(); ++i) {
      CHECK(diamond_r(L, B, FL.at(i)).members == FL.filters[i]);
      CHECK(box_r(L, B, FL.at(i)).members == FL.filters[i]);
    }
    CHECK(box_r(L, B, FL.at(FL.top())).members == L.carrier_mask());
  }
}

TEST_CASE("adjunction on filters for the identity bimodule") {
  FinLattice C3 = chain(3);
  AdjunctionOnFiltersReport rep = check_adjunction_on_filters(C3, order_bimodule(C3));
  CHECK(rep.ok);
  CHECK(rep.pairs_checked == 9);
}

TEST_CASE("a broken relation fails the filter-level checks") {
  FinLattice D4 = diamond4();
  auto rel_iii = rel_from_rows({bit(2) | bit(3), bit(3), bit(3), bit(3)}, 4);
  StableBimodule B{4, rel_iii};  // deliberately unvalidated
  AdjunctionOnFiltersReport rep = check_adjunction_on_filters(D4, B);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("right adjoints by exhaustive maximum") {
  FinLattice D4 = diamond4();
  std::vector<int> id{0, 1, 2, 3};
  CHECK(right_adjoint_of(D4, id) == id);

  // x |-> x /\ a pairs with y |-> a => y.
  std::vector<int> dia{0, 1, 0, 1};
  std::vector<int> box = right_adjoint_of(D4, dia);
  for (int y = 0; y < 4; ++y) CHECK(box[y] == heyting_implies(D4, 1, y));

  FinLattice C3 = chain(3);
  CHECK(right_adjoint_of(C3, {0, 0, 2}) == std::vector<int>{1, 1, 2});

  CHECK_THROWS_AS(right_adjoint_of(C3, {1, 1, 2}), ValidationError);
}

TEST_CASE("bimodules induced by adjunctions") {
  FinLattice C3 = chain(3);
  LatticeAdjunction idA = make_adjunction(C3, {0, 1, 2}, {0, 1, 2});
  ModalFrame MF = bimodule_from_adjunction(C3, idA);
  CHECK(MF.bimodule.rel == opposite(C3).poset.leq);

  FinLattice D4 = diamond4();
  std::vector<int> dia{0, 1, 0, 1};
  LatticeAdjunction A = make_adjunction(D4, dia, right_adjoint_of(D4, dia));
  ModalFrame MD = bimodule_from_adjunction(D4, A);
  CHECK(bimodule_violation(MD.frame, MD.bimodule.rel) == std::nullopt);

  // v R w iff w lies in the diamond image of the principal filter of v.
  for (int v = 0; v < 4; ++v) {
    Bitset img = diamond_set(MD.frame, MD.bimodule.rel, MD.frame.up_set(v));
    for (int w = 0; w < 4; ++w) CHECK(MD.bimodule.at(v, w) == has_bit(img, w));
  }

  // box of a principal is the principal of the implication.
  CHECK(box_set(MD.frame, MD.bimodule.rel, MD.frame.up_set(0)) ==
        MD.frame.up_set(heyting_implies(D4, 1, 0)));
}

TEST_CASE("both squares commute on principals") {
  FinLattice C3 = chain(3);
  CHECK(modal_embedding_check(C3, make_adjunction(C3, {0, 1, 2}, {0, 1, 2})).ok);
  CHECK(modal_embedding_check(C3, make_adjunction(C3, {0, 0, 2}, {1, 1, 2})).ok);

  FinLattice D4 = diamond4();
  std::vector<int> dia{0, 1, 0, 1};
  CHECK(modal_embedding_check(D4, make_adjunction(D4, dia, right_adjoint_of(D4, dia))).ok);
}

TEST_CASE("single-bit mutations are classified correctly") {
  // Flipping one bit of a valid bimodule either yields another valid one
  // or the checker names a condition that an independent re-evaluation
  // confirms broken.
  for (const FinLattice& L : enumerate_distributive_lattices(2)) {
    enumerate_stable_bimodules(L, [&](const StableBimodule& B) {
      const int pairs = L.n() * L.n();
      for (int p = 0; p < pairs; ++p) {
        std::vector<std::uint8_t> rel = B.rel;
        rel[p] ^= 1;
        auto v = bimodule_violation(L, rel);
        if (!v) {
          CHECK(law_holds(L, rel));
          CHECK(cond_i(L, rel));
          CHECK(cond_ii(L, rel));
          CHECK(cond_iii(L, rel));
          CHECK(cond_iv(L, rel));
          continue;
        }
        switch (v->cond) {
          case BimoduleViolation::Cond::Law:
            CHECK_FALSE(law_holds(L, rel));
            break;
          case BimoduleViolation::Cond::I:
            CHECK_FALSE(cond_i(L, rel));
            break;
          case BimoduleViolation::Cond::II:
            CHECK_FALSE(cond_ii(L, rel));
            break;
          case BimoduleViolation::Cond::III:
            CHECK_FALSE(cond_iii(L, rel));
            break;
          case BimoduleViolation::Cond::IV:
            CHECK_FALSE(cond_iv(L, rel));
            break;
        }
      }
    });
  }
}

TEST_SUITE_END();
