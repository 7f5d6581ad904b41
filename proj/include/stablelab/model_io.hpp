#ifndef STABLELAB_MODEL_IO_HPP
#define STABLELAB_MODEL_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "stablelab/semantics.hpp"

namespace stablelab {

/// A stable model together with the element names used by the file format.
struct LoadedModel {
  StableModel model;
  std::vector<std::string> names;

  int index_of(const std::string& name) const;  // -1 when unknown
};

std::vector<std::string> default_names(int n);

// Model file schema: elements (names), order (pairs, reflexive-transitive
// closure taken on load), valuation (atom -> member names), optional
// bimodule (pairs, validated as given). Unknown fields are rejected; every
// validation failure names the invariant and a witness.
LoadedModel parse_model(const std::string& text);
LoadedModel load_model(const std::string& path);

// Round-trip inverse of parse_model on validated models: the order is
// emitted as the cover relation, the bimodule as its full pair list.
nlohmann::json model_to_json(const StableModel& M, const std::vector<std::string>& names);

enum class DotWhat { Hasse, Bimodule, Filters };
DotWhat dot_what_from_string(const std::string& s);  // throws Error on unknown

// Deterministic DOT text: the Hasse diagram (cover edges only), the
// bimodule as labeled edges, or the filter lattice.
std::string export_dot(const LoadedModel& M, DotWhat what);

}  // namespace stablelab

#endif
