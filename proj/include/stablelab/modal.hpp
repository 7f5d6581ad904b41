#ifndef STABLELAB_MODAL_HPP
#define STABLELAB_MODAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stablelab/filter.hpp"
#include "stablelab/lattice.hpp"

namespace stablelab {

/// A relation table over one frame, rel[w*n+v] meaning w R v. Stored
/// against the frame's own order (already opposed when built from a
/// Heyting algebra), so consumers see a single orientation.
struct StableBimodule {
  int n = 0;
  std::vector<std::uint8_t> rel;

  bool at(int w, int v) const { return rel[static_cast<size_t>(w) * n + v] != 0; }
};

struct BimoduleViolation {
  enum class Cond { Law, I, II, III, IV } cond;
  int w = -1, v = -1, w2 = -1, v2 = -1;
  std::string to_string() const;
};

// First failing condition in the fixed order: bimodule law, then the
// stability conditions (i)-(iv), each with a witness tuple.
std::optional<BimoduleViolation> bimodule_violation(const FinLattice& frame,
                                                    const std::vector<std::uint8_t>& rel);

// Validated constructor; throws ValidationError naming the condition.
StableBimodule check_stable_bimodule(const FinLattice& frame, std::vector<std::uint8_t> rel);

// The identity bimodule: R is the frame order itself.
StableBimodule order_bimodule(const FinLattice& frame);

// Raw clause kernels, usable on unvalidated relations (negative tests
// exhibit non-filters through these).
Bitset diamond_set(const FinLattice& frame, const std::vector<std::uint8_t>& rel, Bitset F);
Bitset box_set(const FinLattice& frame, const std::vector<std::uint8_t>& rel, Bitset F);

// {w : exists v. v R w and v in F} and {w : forall v. w R v implies v in F},
// validated as filters (guaranteed for a checked bimodule).
Filter diamond_r(const FinLattice& frame, const StableBimodule& B, const Filter& F);
Filter box_r(const FinLattice& frame, const StableBimodule& B, const Filter& F);

struct AdjunctionOnFiltersReport {
  bool ok = true;
  long long pairs_checked = 0;
  std::string failure;  // names the filter pair or law on failure
};

// For all filters F, G: diamond(F) <= G iff F <= box(G); diamond preserves
// pairwise-meet joins and the bottom filter; box preserves intersections
// Also cross-checks the clause-level operators against the Scott-continuous
// extension of w |-> {v : w R v}.
AdjunctionOnFiltersReport check_adjunction_on_filters(const FinLattice& frame,
                                                      const StableBimodule& B);

/// A join-preserving dia and meet-preserving box on one algebra with
/// dia(x) <= y iff x <= box(y).
struct LatticeAdjunction {
  const FinLattice* algebra = nullptr;
  std::vector<int> dia;
  std::vector<int> box;
};

// First broken adjunction requirement, if any.
std::optional<std::string> adjunction_violation(const LatticeAdjunction& A);
LatticeAdjunction make_adjunction(const FinLattice& H, std::vector<int> dia,
                                  std::vector<int> box);  // throws ValidationError

// box(y) = join of {x : dia(x) <= y}; throws ValidationError with a witness
// when dia does not preserve bottom and binary joins.
std::vector<int> right_adjoint_of(const FinLattice& H, const std::vector<int>& dia);

struct ModalFrame {
  FinLattice frame;  // opposite of the source algebra
  StableBimodule bimodule;
};

// rel[x][y] = [y <=_H dia(x)] over the opposite frame; the result passes
// all stability conditions, with the canonical witnesses y_i = y /\ dia(x_i)
// for condition (iii) verified along the way.
ModalFrame bimodule_from_adjunction(const FinLattice& H, const LatticeAdjunction& A);

struct EmbeddingReport {
  bool ok = true;
  long long instances = 0;
  std::string failure;
};

// Both commuting squares on principals: the lifted diamond of the induced
// bimodule sends the principal of z to the principal of dia(z), and dually
// for box.
EmbeddingReport modal_embedding_check(const FinLattice& H, const LatticeAdjunction& A);

// All stable bimodules on the frame, via upset enumeration of the
// order-compatible relations filtered by check_stable_bimodule, in
// deterministic order.
void enumerate_stable_bimodules(const FinLattice& frame,
                                const std::function<void(const StableBimodule&)>& yield);

// All join-preserving endotables on H (extensions of monotone maps on the
// join-irreducibles), deterministic order.
void enumerate_join_preserving_maps(const FinLattice& H, const FinLattice& L,
                                    const std::function<void(const std::vector<int>&)>& yield);

// All stable maps H -> L (extensions of monotone maps on meet-irreducibles
// filtered by is_stable_map), deterministic order.
void enumerate_stable_maps(const FinLattice& H, const FinLattice& L,
                           const std::function<void(const MonotoneMap&)>& yield);

}  // namespace stablelab

#endif
