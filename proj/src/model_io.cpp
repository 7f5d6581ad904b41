#include "stablelab/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace stablelab {

using nlohmann::json;

int LoadedModel::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::vector<std::pair<int, int>> read_pairs(const json& j, const char* field,
                                            const LoadedModel& m) {
  if (!j.is_array()) fail(std::string(field) + " must be a list of [name,name] pairs");
  std::vector<std::pair<int, int>> out;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      fail(std::string(field) + " entries must be [name,name] pairs");
    int a = m.index_of(p[0].get<std::string>());
    int b = m.index_of(p[1].get<std::string>());
    if (a < 0) fail(std::string(field) + " names unknown element '" + p[0].get<std::string>() + "'");
    if (b < 0) fail(std::string(field) + " names unknown element '" + p[1].get<std::string>() + "'");
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

LoadedModel parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model file parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("model file must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "elements" && key != "order" && key != "valuation" && key != "bimodule")
      fail("unknown field '" + key + "'");
  if (!doc.contains("elements") || !doc.contains("order") || !doc.contains("valuation"))
    fail("model file needs elements, order, and valuation");

  LoadedModel m;
  if (!doc["elements"].is_array() || doc["elements"].empty())
    fail("elements must be a non-empty list of names");
  for (const json& e : doc["elements"]) {
    if (!e.is_string()) fail("element names must be strings");
    std::string name = e.get<std::string>();
    if (m.index_of(name) >= 0) fail("duplicate element '" + name + "'");
    m.names.push_back(std::move(name));
  }
  const int n = static_cast<int>(m.names.size());
  if (n > kMaxElements) fail("too many elements");

  std::vector<std::uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
  for (auto [a, b] : read_pairs(doc["order"], "order", m))
    leq[static_cast<size_t>(a) * n + b] = 1;
  // Reflexive-transitive closure of the generating pairs.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[static_cast<size_t>(i) * n + k] && leq[static_cast<size_t>(k) * n + j])
          leq[static_cast<size_t>(i) * n + j] = 1;

  if (auto v = find_poset_violation(n, leq)) {
    if (v->kind == PosetViolationKind::Antisymmetry)
      fail("order is not antisymmetric: cycle through '" + m.names[v->i] + "' and '" +
           m.names[v->j] + "'");
    fail("order: " + v->to_string());
  }
  FinPoset poset{n, std::move(leq)};
  if (auto f = find_lattice_failure(poset))
    fail("frame is not a lattice: no " + std::string(f->missing_meet ? "meet" : "join") +
         " for ('" + m.names[f->a] + "','" + m.names[f->b] + "')");
  FinLattice frame = complete_lattice(poset);
  if (!frame.distributive) {
    const auto& w = *frame.distributivity_witness;
    fail("frame not distributive: witness (" + m.names[w.a] + "," + m.names[w.x] + "," +
         m.names[w.y] + ")");
  }

  if (!doc["valuation"].is_object()) fail("valuation must map atoms to element lists");
  std::map<std::string, Bitset> valuation;
  for (const auto& [atom, members] : doc["valuation"].items()) {
    if (!members.is_array()) fail("valuation '" + atom + "' must be a list of element names");
    Bitset S = 0;
    for (const json& e : members) {
      if (!e.is_string()) fail("valuation '" + atom + "' entries must be names");
      int i = m.index_of(e.get<std::string>());
      if (i < 0) fail("valuation '" + atom + "' names unknown element '" + e.get<std::string>() + "'");
      S |= bit(i);
    }
    if (auto v = filter_violation(frame, S)) {
      std::string why;
      switch (v->kind) {
        case FilterViolation::Kind::Empty:
          why = "empty";
          break;
        case FilterViolation::Kind::NotUpper:
          why = "contains " + m.names[v->w] + " but not " + m.names[v->v];
          break;
        case FilterViolation::Kind::NotMeetClosed:
          why = "missing " + m.names[v->w] + "&" + m.names[v->v];
          break;
      }
      fail("valuation '" + atom + "' is not a filter: " + why);
    }
    valuation[atom] = S;
  }

  std::optional<StableBimodule> bimodule;
  if (doc.contains("bimodule")) {
    std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
    for (auto [a, b] : read_pairs(doc["bimodule"], "bimodule", m))
      rel[static_cast<size_t>(a) * n + b] = 1;
    if (auto v = bimodule_violation(frame, rel)) {
      auto nm = [&](int i) { return i >= 0 && i < n ? m.names[i] : std::string("?"); };
      std::string why;
      switch (v->cond) {
        case BimoduleViolation::Cond::Law:
          why = "law fails: " + nm(v->w) + " R " + nm(v->v) + " forces " + nm(v->w2) + " R " +
                nm(v->v2);
          break;
        case BimoduleViolation::Cond::I:
          why = "condition (i) fails at w=" + nm(v->w) + ", v1=" + nm(v->v) + ", v2=" + nm(v->v2);
          break;
        case BimoduleViolation::Cond::II:
          why = "condition (ii) fails: " + nm(v->w) + " R top missing";
          break;
        case BimoduleViolation::Cond::III:
          why = "condition (iii) fails at w1=" + nm(v->w) + ", w2=" + nm(v->w2) + ", v=" + nm(v->v);
          break;
        case BimoduleViolation::Cond::IV:
          why = "condition (iv) fails: top R " + nm(v->v);
          break;
      }
      fail("bimodule invalid: " + why);
    }
    bimodule = StableBimodule{n, std::move(rel)};
  }

  m.model = make_stable_model(std::move(frame), std::move(valuation), std::move(bimodule));
  return m;
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

json model_to_json(const StableModel& M, const std::vector<std::string>& names) {
  json doc;
  doc["elements"] = names;
  json order = json::array();
  for (auto [a, b] : cover_pairs(M.frame.poset)) order.push_back({names[a], names[b]});
  doc["order"] = order;
  json valuation = json::object();
  for (const auto& [atom, S] : M.valuation) {
    json list = json::array();
    for (int i : BitRange(S)) list.push_back(names[i]);
    valuation[atom] = list;
  }
  doc["valuation"] = valuation;
  if (M.bimodule) {
    json rel = json::array();
    for (int w = 0; w < M.frame.n(); ++w)
      for (int v = 0; v < M.frame.n(); ++v)
        if (M.bimodule->at(w, v)) rel.push_back({names[w], names[v]});
    doc["bimodule"] = rel;
  }
  return doc;
}

DotWhat dot_what_from_string(const std::string& s) {
  if (s == "hasse") return DotWhat::Hasse;
  if (s == "bimodule") return DotWhat::Bimodule;
  if (s == "filters") return DotWhat::Filters;
  throw Error("unknown export target '" + s + "' (expected hasse, bimodule, or filters)");
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const LoadedModel& M, DotWhat what) {
  const FinLattice& W = M.model.frame;
  std::ostringstream out;
  switch (what) {
    case DotWhat::Hasse: {
      out << "digraph hasse {\n  rankdir=BT;\n";
      for (int i = 0; i < W.n(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(M.names[i]) << "\"];\n";
      for (auto [a, b] : cover_pairs(W.poset)) out << "  n" << a << " -> n" << b << ";\n";
      out << "}\n";
      break;
    }
    case DotWhat::Bimodule: {
      if (!M.model.bimodule) throw Error("model has no bimodule");
      out << "digraph bimodule {\n";
      for (int i = 0; i < W.n(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(M.names[i]) << "\"];\n";
      for (int w = 0; w < W.n(); ++w)
        for (int v = 0; v < W.n(); ++v)
          if (M.model.bimodule->at(w, v))
            out << "  n" << w << " -> n" << v << " [label=\"R\"];\n";
      out << "}\n";
      break;
    }
    case DotWhat::Filters: {
      FilterLattice FL = enumerate_filters(W);
      out << "digraph filters {\n  rankdir=BT;\n";
      for (int i = 0; i < FL.size(); ++i) {
        std::string label = "{";
        bool first = true;
        for (int e : BitRange(FL.filters[i])) {
          if (!first) label += ",";
          label += M.names[e];
          first = false;
        }
        label += "}";
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"];\n";
      }
      for (auto [a, b] : cover_pairs(FL.order.poset)) out << "  n" << a << " -> n" << b << ";\n";
      out << "}\n";
      break;
    }
  }
  return out.str();
}

}  // namespace stablelab
