#include "stablelab/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stablelab {

Bitset FinPoset::up_set(int w) const {
  Bitset s = 0;
  for (int v = 0; v < n; ++v)
    if (le(w, v)) s |= bit(v);
  return s;
}

Bitset FinPoset::down_set(int w) const {
  Bitset s = 0;
  for (int v = 0; v < n; ++v)
    if (le(v, w)) s |= bit(v);
  return s;
}

std::string PosetViolation::to_string() const {
  switch (kind) {
    case PosetViolationKind::NotSquare:
      return "table is not square";
    case PosetViolationKind::Reflexivity:
      return "reflexivity violated at " + std::to_string(i);
    case PosetViolationKind::Antisymmetry:
      return "antisymmetry violated by (" + std::to_string(i) + "," + std::to_string(j) + ")";
    case PosetViolationKind::Transitivity:
      return "transitivity violated by (" + std::to_string(i) + "," + std::to_string(j) + "," +
             std::to_string(k) + ")";
  }
  return "unknown violation";
}

std::optional<PosetViolation> find_poset_violation(int n, const std::vector<std::uint8_t>& leq) {
  if (n < 0 || leq.size() != static_cast<size_t>(n) * n)
    return PosetViolation{PosetViolationKind::NotSquare};
  auto at = [&](int a, int b) { return leq[static_cast<size_t>(a) * n + b] != 0; };
  for (int i = 0; i < n; ++i)
    if (!at(i, i)) return PosetViolation{PosetViolationKind::Reflexivity, i};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && at(i, j) && at(j, i))
        return PosetViolation{PosetViolationKind::Antisymmetry, i, j};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!at(i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (at(j, k) && !at(i, k))
          return PosetViolation{PosetViolationKind::Transitivity, i, j, k};
    }
  return std::nullopt;
}

FinPoset check_poset(int n, std::vector<std::uint8_t> leq) {
  if (n > kMaxElements) throw CapExceeded("poset larger than " + std::to_string(kMaxElements));
  if (auto v = find_poset_violation(n, leq)) throw ValidationError(v->to_string());
  return FinPoset{n, std::move(leq)};
}

std::string LatticeFailure::to_string() const {
  return std::string("no ") + (missing_meet ? "meet" : "join") + " for (" + std::to_string(a) +
         "," + std::to_string(b) + ")";
}

bool same_lattice(const FinLattice& a, const FinLattice& b) {
  if (&a == &b) return true;
  return a.poset.n == b.poset.n && a.poset.leq == b.poset.leq && a.meet_table == b.meet_table &&
         a.join_table == b.join_table;
}

namespace {

// Greatest lower bound of {a,b} by exhaustive scan; -1 if none.
int scan_meet(const FinPoset& p, int a, int b) {
  int best = -1;
  for (int c = 0; c < p.n; ++c) {
    if (!p.le(c, a) || !p.le(c, b)) continue;
    if (best == -1 || p.le(best, c)) best = c;
  }
  if (best == -1) return -1;
  for (int c = 0; c < p.n; ++c)
    if (p.le(c, a) && p.le(c, b) && !p.le(c, best)) return -1;
  return best;
}

int scan_join(const FinPoset& p, int a, int b) {
  int best = -1;
  for (int c = 0; c < p.n; ++c) {
    if (!p.le(a, c) || !p.le(b, c)) continue;
    if (best == -1 || p.le(c, best)) best = c;
  }
  if (best == -1) return -1;
  for (int c = 0; c < p.n; ++c)
    if (p.le(a, c) && p.le(b, c) && !p.le(best, c)) return -1;
  return best;
}

}  // namespace

std::optional<LatticeFailure> find_lattice_failure(const FinPoset& poset) {
  if (poset.n == 0) return LatticeFailure{-1, -1, true};
  for (int a = 0; a < poset.n; ++a)
    for (int b = a; b < poset.n; ++b) {
      if (scan_meet(poset, a, b) == -1) return LatticeFailure{a, b, true};
      if (scan_join(poset, a, b) == -1) return LatticeFailure{a, b, false};
    }
  return std::nullopt;
}

FinLattice complete_lattice(const FinPoset& poset) {
  if (auto v = find_poset_violation(poset.n, poset.leq)) throw ValidationError(v->to_string());
  if (auto f = find_lattice_failure(poset)) throw ValidationError(f->to_string());
  const int n = poset.n;
  FinLattice L;
  L.poset = poset;
  L.meet_table.resize(static_cast<size_t>(n) * n);
  L.join_table.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      L.meet_table[static_cast<size_t>(a) * n + b] = scan_meet(poset, a, b);
      L.join_table[static_cast<size_t>(a) * n + b] = scan_join(poset, a, b);
    }
  L.bottom = 0;
  L.top = 0;
  for (int a = 0; a < n; ++a) {
    L.bottom = L.meet(L.bottom, a);
    L.top = L.join(L.top, a);
  }
  L.up_masks.resize(n);
  L.down_masks.resize(n);
  for (int a = 0; a < n; ++a) {
    L.up_masks[a] = poset.up_set(a);
    L.down_masks[a] = poset.down_set(a);
  }
  L.distributive = true;
  for (int a = 0; a < n && L.distributive; ++a)
    for (int x = 0; x < n && L.distributive; ++x)
      for (int y = 0; y < n; ++y) {
        if (L.meet(a, L.join(x, y)) != L.join(L.meet(a, x), L.meet(a, y))) {
          L.distributive = false;
          L.distributivity_witness = DistributivityWitness{a, x, y};
          break;
        }
      }
  return L;
}

int heyting_implies(const FinLattice& H, int a, int b) {
  if (!H.distributive) throw ValidationError("heyting_implies requires a distributive lattice");
  // Join of all candidates; distributivity makes the join a candidate again.
  int c = H.bottom;
  for (int x = 0; x < H.n(); ++x)
    if (H.le(H.meet(x, a), b)) c = H.join(c, x);
  return c;
}

FinLattice opposite(const FinLattice& L) {
  const int n = L.n();
  FinPoset p;
  p.n = n;
  p.leq.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p.leq[static_cast<size_t>(a) * n + b] = L.le(b, a) ? 1 : 0;
  return complete_lattice(p);
}

std::optional<std::pair<int, int>> monotonicity_violation(const MonotoneMap& f) {
  const FinLattice& s = *f.source;
  const FinLattice& t = *f.target;
  for (int a = 0; a < s.n(); ++a)
    for (int b = 0; b < s.n(); ++b)
      if (s.le(a, b) && !t.le(f.apply(a), f.apply(b))) return std::make_pair(a, b);
  return std::nullopt;
}

std::string JoinPreservationCheck::to_string() const {
  if (ok) return "join-preserving";
  if (bottom_failed) return "bottom not preserved";
  return "join not preserved at (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

JoinPreservationCheck check_join_preserving(const MonotoneMap& f) {
  const FinLattice& s = *f.source;
  const FinLattice& t = *f.target;
  if (f.apply(s.bottom) != t.bottom) return {false, true};
  for (int a = 0; a < s.n(); ++a)
    for (int b = 0; b < s.n(); ++b)
      if (f.apply(s.join(a, b)) != t.join(f.apply(a), f.apply(b))) return {false, false, a, b};
  return {};
}

std::vector<Bitset> birkhoff_downsets(const FinPoset& base, int max_elements) {
  const int k = base.n;
  if (k > 25) throw CapExceeded("downset scan infeasible beyond 25 generators");
  std::vector<Bitset> downs;
  for (Bitset s = 0; s < (Bitset{1} << k); ++s) {
    bool down = true;
    for (int i : BitRange(s)) {
      if ((base.down_set(i) & ~s) != 0) {
        down = false;
        break;
      }
    }
    if (down) {
      downs.push_back(s);
      if (static_cast<int>(downs.size()) > max_elements)
        throw CapExceeded("downset count exceeds cap " + std::to_string(max_elements));
    }
  }
  std::sort(downs.begin(), downs.end(), [](Bitset a, Bitset b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });
  return downs;
}

FinLattice birkhoff(const FinPoset& base, int max_elements) {
  std::vector<Bitset> downs = birkhoff_downsets(base, max_elements);
  const int n = static_cast<int>(downs.size());
  FinPoset p;
  p.n = n;
  p.leq.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.leq[static_cast<size_t>(a) * n + b] = (downs[a] & ~downs[b]) == 0 ? 1 : 0;
  FinLattice L = complete_lattice(p);
  // Meets and joins of downsets must be intersection and union.
  auto index_of = [&](Bitset s) {
    return static_cast<int>(std::find(downs.begin(), downs.end(), s) - downs.begin());
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (L.meet(a, b) != index_of(downs[a] & downs[b]) ||
          L.join(a, b) != index_of(downs[a] | downs[b]))
        throw std::logic_error("birkhoff tables disagree with set operations");
    }
  if (!L.distributive) throw std::logic_error("birkhoff produced a non-distributive lattice");
  return L;
}

namespace {

std::uint64_t pack_leq(const FinPoset& p, const std::vector<int>& perm) {
  std::uint64_t key = 0;
  int pos = 0;
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b, ++pos)
      if (p.le(perm[a], perm[b])) key |= std::uint64_t{1} << pos;
  return key;
}

}  // namespace

std::uint64_t canonical_poset_key(const FinPoset& p) {
  if (p.n > 8) throw CapExceeded("canonical form capped at 8 elements");
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, pack_leq(p, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<FinPoset> enumerate_posets(int size) {
  if (size > kMaxBaseSize) throw CapExceeded("base poset size capped at " + std::to_string(kMaxBaseSize));
  const int n = size;
  std::vector<std::pair<int, int>> off_diag;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) off_diag.emplace_back(a, b);
  std::map<std::uint64_t, FinPoset> classes;
  const std::uint64_t limit = std::uint64_t{1} << off_diag.size();
  for (std::uint64_t sel = 0; sel < limit; ++sel) {
    std::vector<std::uint8_t> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
    for (size_t t = 0; t < off_diag.size(); ++t)
      if ((sel >> t) & 1)
        leq[static_cast<size_t>(off_diag[t].first) * n + off_diag[t].second] = 1;
    if (find_poset_violation(n, leq)) continue;
    FinPoset p{n, std::move(leq)};
    classes.emplace(canonical_poset_key(p), std::move(p));
  }
  std::vector<FinPoset> out;
  out.reserve(classes.size());
  for (auto& [key, p] : classes) out.push_back(std::move(p));
  return out;
}

std::vector<FinLattice> enumerate_distributive_lattices(int max_base_size) {
  if (max_base_size < 0 || max_base_size > kMaxBaseSize)
    throw CapExceeded("max base size must be in 0.." + std::to_string(kMaxBaseSize));
  std::vector<FinLattice> out;
  for (int k = 0; k <= max_base_size; ++k)
    for (const FinPoset& p : enumerate_posets(k)) out.push_back(birkhoff(p));
  return out;
}

namespace {

struct IsoSearch {
  const FinPoset& a;
  const FinPoset& b;
  std::vector<int> map_ab;
  std::vector<std::uint8_t> used;

  bool compatible(int x, int y) const {
    if (popcount(a.up_set(x)) != popcount(b.up_set(y))) return false;
    if (popcount(a.down_set(x)) != popcount(b.down_set(y))) return false;
    for (int x2 = 0; x2 < static_cast<int>(map_ab.size()); ++x2) {
      int y2 = map_ab[x2];
      if (a.le(x, x2) != b.le(y, y2)) return false;
      if (a.le(x2, x) != b.le(y2, y)) return false;
    }
    return true;
  }

  bool extend() {
    int x = static_cast<int>(map_ab.size());
    if (x == a.n) return true;
    for (int y = 0; y < b.n; ++y) {
      if (used[y] || !compatible(x, y)) continue;
      map_ab.push_back(y);
      used[y] = 1;
      if (extend()) return true;
      used[y] = 0;
      map_ab.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> find_poset_isomorphism(const FinPoset& a, const FinPoset& b) {
  if (a.n != b.n) return std::nullopt;
  IsoSearch s{a, b, {}, std::vector<std::uint8_t>(b.n, 0)};
  if (!s.extend()) return std::nullopt;
  return s.map_ab;
}

std::optional<std::vector<int>> find_lattice_isomorphism(const FinLattice& a, const FinLattice& b) {
  auto iso = find_poset_isomorphism(a.poset, b.poset);
  if (!iso) return std::nullopt;
  // An order isomorphism between lattices maps the tables along; verify.
  const auto& m = *iso;
  for (int x = 0; x < a.n(); ++x)
    for (int y = 0; y < a.n(); ++y) {
      if (m[a.meet(x, y)] != b.meet(m[x], m[y]) || m[a.join(x, y)] != b.join(m[x], m[y]))
        throw std::logic_error("order isomorphism failed to transport lattice tables");
    }
  return iso;
}

std::vector<int> join_irreducibles(const FinLattice& L) {
  std::vector<int> out;
  for (int x = 0; x < L.n(); ++x) {
    if (x == L.bottom) continue;
    int lower_covers = 0;
    for (int y = 0; y < L.n(); ++y) {
      if (y == x || !L.le(y, x)) continue;
      bool covered = true;
      for (int z = 0; z < L.n(); ++z)
        if (z != x && z != y && L.le(y, z) && L.le(z, x)) {
          covered = false;
          break;
        }
      if (covered) ++lower_covers;
    }
    if (lower_covers == 1) out.push_back(x);
  }
  return out;
}

std::vector<int> meet_irreducibles(const FinLattice& L) {
  std::vector<int> out;
  for (int x = 0; x < L.n(); ++x) {
    if (x == L.top) continue;
    int upper_covers = 0;
    for (int y = 0; y < L.n(); ++y) {
      if (y == x || !L.le(x, y)) continue;
      bool covers = true;
      for (int z = 0; z < L.n(); ++z)
        if (z != x && z != y && L.le(x, z) && L.le(z, y)) {
          covers = false;
          break;
        }
      if (covers) ++upper_covers;
    }
    if (upper_covers == 1) out.push_back(x);
  }
  return out;
}

std::vector<std::pair<int, int>> cover_pairs(const FinPoset& p) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b) {
      if (a == b || !p.le(a, b)) continue;
      bool covered = true;
      for (int c = 0; c < p.n; ++c)
        if (c != a && c != b && p.le(a, c) && p.le(c, b)) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

}  // namespace stablelab
