#ifndef STABLELAB_SUITES_HPP
#define STABLELAB_SUITES_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablelab/semantics.hpp"

namespace stablelab {

struct SweepConfig {
  int max_base = 4;          // base poset size for the lattice universe
  int random_formulas = 200; // seeded random formulas per formula sweep
  int formula_depth = 4;
  std::uint32_t seed = 0x5eedf11;
};

struct Counterexample {
  std::string law;
  nlohmann::json model;  // ModelFile document when a model is involved
  std::string world;
  std::string formula;
  std::string detail;

  nlohmann::json to_json() const;
};

/// Machine-readable outcome of one law suite; stable across runs except
/// for the duration.
struct Report {
  std::string suite;
  long long instances = 0;
  bool pass = true;
  std::optional<Counterexample> first;
  double duration_ms = 0;

  nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const SweepConfig& cfg = {});

// The fixed soundness corpus: twelve intuitionistic theorems over {p,q}.
std::vector<FormulaPtr> curated_theorems();
// Curated formulas of the meet-implication fragment (atoms, top, &, ->).
std::vector<FormulaPtr> curated_fragment();
// Valid modal schemata for adjunction models (unit, counit, and friends).
std::vector<FormulaPtr> curated_modal();

// Deterministic random formula; fragment_only restricts connectives to
// {atoms, top, &, ->}, allow_modal adds dia/box.
FormulaPtr random_formula(std::mt19937& rng, int max_depth,
                          const std::vector<std::string>& atom_names, bool fragment_only = false,
                          bool allow_modal = false);

std::vector<FormulaPtr> seeded_formulas(int count, int max_depth, std::uint32_t seed,
                                        bool fragment_only = false, bool allow_modal = false);

}  // namespace stablelab

#endif
