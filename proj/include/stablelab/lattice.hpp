#ifndef STABLELAB_LATTICE_HPP
#define STABLELAB_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "stablelab/common.hpp"

namespace stablelab {

/// A finite partial order on indices 0..n-1, stored as a full n-by-n
/// boolean table. leq[a*n+b] holds iff a is below b.
struct FinPoset {
  int n = 0;
  std::vector<std::uint8_t> leq;

  bool le(int a, int b) const { return leq[static_cast<size_t>(a) * n + b] != 0; }

  // Up-set / down-set of one element as a bit-set. O(n) scans; sizes are tiny.
  Bitset up_set(int w) const;
  Bitset down_set(int w) const;
};

enum class PosetViolationKind { NotSquare, Reflexivity, Antisymmetry, Transitivity };

struct PosetViolation {
  PosetViolationKind kind;
  int i = -1, j = -1, k = -1;
  std::string to_string() const;
};

// First poset axiom violated by the table, in the fixed order
// reflexivity, antisymmetry, transitivity (ascending indices).
std::optional<PosetViolation> find_poset_violation(int n, const std::vector<std::uint8_t>& leq);

// Validated constructor; throws ValidationError naming the violation.
FinPoset check_poset(int n, std::vector<std::uint8_t> leq);

struct LatticeFailure {
  int a = -1, b = -1;
  bool missing_meet = true;  // else missing join
  std::string to_string() const;
};

struct DistributivityWitness {
  int a = -1, x = -1, y = -1;
};

/// A finite lattice: poset plus total meet/join tables, top and bottom,
/// and a recomputed distributivity certificate. Doubles as a finite
/// Heyting algebra when distributive.
struct FinLattice {
  FinPoset poset;
  std::vector<int> meet_table;
  std::vector<int> join_table;
  int bottom = 0;
  int top = 0;
  bool distributive = false;
  std::optional<DistributivityWitness> distributivity_witness;
  // Cached up/down sets; sweeps hit these constantly.
  std::vector<Bitset> up_masks;
  std::vector<Bitset> down_masks;

  int n() const { return poset.n; }
  bool le(int a, int b) const { return poset.le(a, b); }
  int meet(int a, int b) const { return meet_table[static_cast<size_t>(a) * n() + b]; }
  int join(int a, int b) const { return join_table[static_cast<size_t>(a) * n() + b]; }
  Bitset up_set(int w) const { return up_masks[w]; }
  Bitset down_set(int w) const { return down_masks[w]; }
  Bitset carrier_mask() const { return full_mask(n()); }
};

// Structural equality of the full tables. Filter operations use this to
// detect carrier mismatches, so copies of one lattice are interchangeable.
bool same_lattice(const FinLattice& a, const FinLattice& b);

// First pair lacking a meet or join, if any.
std::optional<LatticeFailure> find_lattice_failure(const FinPoset& poset);

// Builds the lattice by exhaustive bound scan over the validated poset;
// throws ValidationError (via find_lattice_failure) when a pair has no
// greatest lower or least upper bound. The distributivity certificate is
// computed by an exhaustive triple check, never taken on trust.
FinLattice complete_lattice(const FinPoset& poset);

// Relative pseudocomplement max{c : c /\ a <= b}; requires a distributive
// carrier (throws ValidationError otherwise). Satisfies the adjunction
// c /\ a <= b  iff  c <= (a => b).
int heyting_implies(const FinLattice& H, int a, int b);

// Order reversed, meet/join and top/bottom swapped; certificate recomputed.
FinLattice opposite(const FinLattice& L);

/// A table-backed monotone map between two lattices the caller keeps alive.
struct MonotoneMap {
  const FinLattice* source = nullptr;
  const FinLattice* target = nullptr;
  std::vector<int> table;

  int apply(int a) const { return table[a]; }
};

// First monotonicity violation (a <= b with f(a) !<= f(b)), if any.
std::optional<std::pair<int, int>> monotonicity_violation(const MonotoneMap& f);

struct JoinPreservationCheck {
  bool ok = true;
  bool bottom_failed = false;
  int a = -1, b = -1;
  std::string to_string() const;
};

// Checks f(0)=0 and f(a v b) = f(a) v f(b) exhaustively.
JoinPreservationCheck check_join_preserving(const MonotoneMap& f);

// Birkhoff construction: the distributive lattice of downsets of `base`,
// ordered by inclusion, elements sorted by (popcount, bit pattern).
// Throws CapExceeded when the downset count exceeds max_elements.
FinLattice birkhoff(const FinPoset& base, int max_elements = kMaxElements);

// The downset bit-sets backing birkhoff(base), in element-index order.
std::vector<Bitset> birkhoff_downsets(const FinPoset& base, int max_elements = kMaxElements);

// Canonical form of a poset: the minimum leq bit-string over all index
// permutations, packed into one word. Caps at 8 elements (throws
// CapExceeded beyond); correctness over cleverness at these sizes.
std::uint64_t canonical_poset_key(const FinPoset& p);

// All posets on exactly `size` elements, one representative per
// isomorphism class, sorted by canonical key.
std::vector<FinPoset> enumerate_posets(int size);

// birkhoff(P) for every unlabeled poset P on <= max_base_size elements,
// ordered by (base size, canonical key). Hard cap keeps the exhaustive
// poset scan tractable.
constexpr int kMaxBaseSize = 5;
std::vector<FinLattice> enumerate_distributive_lattices(int max_base_size);

// Backtracking isomorphism search (order-profile pruning); returns the
// element mapping A -> B when one exists.
std::optional<std::vector<int>> find_poset_isomorphism(const FinPoset& a, const FinPoset& b);
std::optional<std::vector<int>> find_lattice_isomorphism(const FinLattice& a, const FinLattice& b);

// Join-irreducible elements: x != bottom with a unique lower cover.
std::vector<int> join_irreducibles(const FinLattice& L);
// Meet-irreducible elements, dually.
std::vector<int> meet_irreducibles(const FinLattice& L);

// Cover relation pairs (a,b) with a covered by b, in ascending order.
std::vector<std::pair<int, int>> cover_pairs(const FinPoset& p);

}  // namespace stablelab

#endif
