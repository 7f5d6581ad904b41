#ifndef STABLELAB_SEMANTICS_HPP
#define STABLELAB_SEMANTICS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablelab/filter.hpp"
#include "stablelab/formula.hpp"
#include "stablelab/lattice.hpp"
#include "stablelab/modal.hpp"

namespace stablelab {

struct UnboundAtom : Error {
  explicit UnboundAtom(const std::string& name) : Error("unbound atom '" + name + "'") {}
};

struct MissingBimodule : Error {
  MissingBimodule() : Error("formula has modalities but the model carries no bimodule") {}
};

/// A stable model: distributive frame, valuation of atoms into filters,
/// and an optional stable bimodule for the modalities. The frame's top
/// element is the inconsistent world: it forces every formula.
struct StableModel {
  FinLattice frame;
  std::map<std::string, Bitset> valuation;
  std::optional<StableBimodule> bimodule;
};

// Validates distributivity, every valuation filter, and the bimodule.
StableModel make_stable_model(FinLattice frame, std::map<std::string, Bitset> valuation,
                              std::optional<StableBimodule> bimodule = std::nullopt);

// The forcing clauses, evaluated for all worlds at once with one memo
// entry per subformula. In lenient mode unbound atoms denote the bottom
// filter {1} (true only at the top world); strict mode throws UnboundAtom.
Bitset forcing_set(const StableModel& M, const Formula& f, bool lenient_atoms = false);
bool force(const StableModel& M, int w, const Formula& f, bool lenient_atoms = false);

// Interpretation by the filter-locale operations (the algebraic route;
// independent of the clause recursion above).
Filter eval_filter(const StableModel& M, const Formula& f, bool lenient_atoms = false);

/// Interpretation of atoms as elements of a finite Heyting algebra.
struct HeytingAssignment {
  const FinLattice* algebra = nullptr;
  std::map<std::string, int> elements;
};

// Structural evaluation via meet/join/implication; modalities require an
// adjunction on the same algebra.
int heyting_eval(const HeytingAssignment& asg, const Formula& f,
                 const LatticeAdjunction* adj = nullptr);

/// Comparison Kripke model over the same data: plain poset, upper-set
/// valuation, optional order-compatible relation.
struct KripkeModel {
  FinPoset frame;
  std::map<std::string, Bitset> valuation;
  std::optional<std::vector<std::uint8_t>> rel;
};

KripkeModel make_kripke_model(FinPoset frame, std::map<std::string, Bitset> valuation,
                              std::optional<std::vector<std::uint8_t>> rel = std::nullopt);
// The standard clauses: bot never holds, disjunction is pointwise.
Bitset kripke_forcing_set(const KripkeModel& K, const Formula& f);
bool kripke_force(const KripkeModel& K, int w, const Formula& f);

// The stable model over the opposite order whose atoms denote the
// principal down-sets of their algebra values; with an adjunction, the
// induced bimodule is installed as well.
StableModel build_upset_model(const HeytingAssignment& asg,
                              const LatticeAdjunction* adj = nullptr);

struct SearchOutcome {
  bool found = false;
  std::optional<StableModel> model;
  int world = -1;
  long long models_checked = 0;
};

// First (model, world) refuting f, sweeping lattices in canonical order,
// valuations in filter order (first atom slowest), worlds ascending.
// Propositional only; throws CapExceeded when the formula has more atoms
// than vars_cap or contains modalities.
SearchOutcome countermodel_search(const Formula& f, int max_base_size, int vars_cap = 2);

// Human-readable clause trace for one world, naming the disjunction
// witnesses v1, v2. `names` labels worlds (indices when empty).
std::string explain_force(const StableModel& M, int w, const Formula& f,
                          const std::vector<std::string>& names = {},
                          bool lenient_atoms = false);

}  // namespace stablelab

#endif
