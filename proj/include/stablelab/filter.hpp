#ifndef STABLELAB_FILTER_HPP
#define STABLELAB_FILTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "stablelab/lattice.hpp"

namespace stablelab {

/// A validated filter: non-empty, upward-closed, meet-closed subset of a
/// lattice. The carrier pointer is non-owning; the lattice must outlive
/// every filter taken over it.
struct Filter {
  const FinLattice* carrier = nullptr;
  Bitset members = 0;

  bool contains(int w) const { return has_bit(members, w); }
  // Least element; every filter over a finite lattice is principal.
  int generator() const { return first_bit(members); }
};

struct FilterViolation {
  enum class Kind { Empty, NotUpper, NotMeetClosed } kind;
  int w = -1, v = -1;
  std::string to_string() const;
};

// First violated filter clause, or nullopt when S is a filter. Checks the
// raw definition (non-empty, upper, filtered: every two members have a
// member below both) and the sub-meet-semilattice characterization, and
// insists the two agree.
std::optional<FilterViolation> filter_violation(const FinLattice& W, Bitset S);
bool is_filter(const FinLattice& W, Bitset S);
Filter make_filter(const FinLattice& W, Bitset S);  // throws ValidationError

// The up-set of w; order-reversing: w <= v iff up(v) is contained in up(w).
Filter principal_filter(const FinLattice& W, int w);

/// The filter locale Filt(W): all filters ordered by inclusion, with the
/// lattice structure rebuilt by bound scan and cross-checked against the
/// intersection and pairwise-meet join formulas. Filters are sorted by (popcount, bit
/// pattern) for deterministic indexing.
struct FilterLattice {
  const FinLattice* carrier = nullptr;
  std::vector<Bitset> filters;
  FinLattice order;

  int size() const { return static_cast<int>(filters.size()); }
  int index_of(Bitset f) const;
  Filter at(int i) const { return Filter{carrier, filters[i]}; }
  int bottom() const { return order.bottom; }  // the filter {top_W}
  int top() const { return order.top; }        // all of W
};

// Enumerates all filters of W two ways (full subset scan vs principal
// up-sets) and requires agreement; the scan route is skipped above
// kFilterScanLimit elements where 2^n becomes infeasible.
constexpr int kFilterScanLimit = 20;
FilterLattice enumerate_filters(const FinLattice& W);

// Meet = intersection; join = upward closure of pairwise meets; Heyting
// exponential per the forcing-style clause. Results are validated.
// All three throw CarrierMismatch when the carriers differ.
Filter filter_meet(const Filter& f1, const Filter& f2);
Filter filter_join(const Filter& f1, const Filter& f2);
Filter filter_heyting(const Filter& f1, const Filter& f2);

// Compact elements computed from the raw definition (scan of all directed
// subsets), despite the finite-scale degeneracy. Returns indices into FL.
std::vector<int> compact_elements(const FilterLattice& FL);

struct CoherenceReport {
  bool ok = false;
  std::string failure;
  bool joins_of_compacts = false;   // every element is a join of compacts
  bool compacts_sublattice = false; // compacts closed under meet/join
  std::vector<int> compact_indices;
  // Mapping Filt(W) -> Filt(opposite(compacts)) exhibiting the isomorphism.
  std::vector<int> isomorphism;
  std::string orientation_note;
};

// Verifies, at finite scale, that Filt(W) is a coherent frame and
// reconstructs it from its compact elements. The literal reading
// "L = Filt(K(L))" reverses the order of principals, so the isomorphism
// exhibited is L = Filt(opposite(K(L))); the report notes the orientation.
CoherenceReport coherent_reconstruct(const FinLattice& W);

/// Scott-continuous extension data for a join-preserving f : W -> L.
/// The extension lives on the filters of opposite(W) (the locale in which
/// the principal embedding of W is covariant); sigma(S) is the join of the
/// f-image of S, and nerve is its right adjoint, found by exhaustive max.
struct ScottExtension {
  FinLattice opposite_source;
  std::vector<Bitset> domain_filters;  // filters of opposite_source
  FinLattice domain_order;
  std::vector<int> principal;  // source element w -> index of its principal filter
  std::vector<int> sigma;      // domain filter index -> target element
  std::vector<int> nerve;      // target element -> domain filter index
};

// Throws ValidationError with a witness pair when f fails to preserve
// finite joins.
ScottExtension scott_extend(const MonotoneMap& f);

struct StableCheck {
  bool ok = true;
  bool top_failed = false;
  int a = -1, b = -1;
  std::string to_string() const;
};

// A monotone map is stable just if it preserves finite meets (including
// the empty meet, i.e. the top element). Exhaustive check.
StableCheck is_stable_map(const MonotoneMap& f);

// {v in W : f(v) in F} for stable f : W -> W' and F a filter over W'.
// Refuses non-stable maps up front rather than returning a non-filter.
Filter preimage(const MonotoneMap& f, const Filter& F);

struct DualityRoundtrip {
  std::vector<int> preimage_table;  // Filt(W') index -> Filt(W) index
  std::vector<int> left_adjoint;    // Filt(W) index -> Filt(W') index
  bool adjunction_ok = false;
  bool compacts_preserved = false;  // left adjoint maps principals to principals
  std::vector<int> recovered;       // element map W -> W'
  bool equal = false;               // recovered == f.table
};

// Recovers a stable map from the meet-preserving action of its preimage on
// filter lattices: take the left adjoint (exhaustive min scan), restrict
// to principal filters, translate back through the principal embedding.
DualityRoundtrip duality_roundtrip(const MonotoneMap& f);

}  // namespace stablelab

#endif
