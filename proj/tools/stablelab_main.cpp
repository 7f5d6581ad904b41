#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablelab/model_io.hpp"
#include "stablelab/suites.hpp"

namespace {

constexpr int kExitValid = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

int env_max_base(int fallback) {
  const char* v = std::getenv("STABLELAB_MAX_BASE");
  if (!v) return fallback;
  try {
    return std::stoi(v);
  } catch (...) {
    throw stablelab::Error("STABLELAB_MAX_BASE must be an integer");
  }
}

int cmd_force(const std::string& model_path, const std::string& world,
              const std::string& formula_text, bool explain, bool lenient) {
  stablelab::LoadedModel m = stablelab::load_model(model_path);
  int w = m.index_of(world);
  if (w < 0) throw stablelab::Error("unknown world '" + world + "'");
  stablelab::FormulaPtr f = stablelab::parse(formula_text);
  bool holds = stablelab::force(m.model, w, *f, lenient);
  std::cout << (holds ? "true" : "false") << "\n";
  if (explain) std::cout << stablelab::explain_force(m.model, w, *f, m.names, lenient);
  return holds ? kExitValid : kExitRefuted;
}

int cmd_search(const std::string& formula_text, int max_base, int vars) {
  stablelab::FormulaPtr f = stablelab::parse(formula_text);
  stablelab::SearchOutcome out = stablelab::countermodel_search(*f, max_base, vars);
  if (!out.found) {
    std::cout << "exhausted\n";
    return kExitRefuted;
  }
  const stablelab::StableModel& M = *out.model;
  nlohmann::json doc;
  doc["model"] = stablelab::model_to_json(M, stablelab::default_names(M.frame.n()));
  doc["world"] = "w" + std::to_string(out.world);
  std::cout << doc.dump(2) << "\n";
  return kExitValid;
}

int cmd_verify(const std::string& suite, int max_base) {
  stablelab::SweepConfig cfg;
  cfg.max_base = max_base;
  bool all_pass = true;
  std::vector<std::string> names =
      suite == "all" ? stablelab::suite_names() : std::vector<std::string>{suite};
  for (const std::string& name : names) {
    stablelab::Report rep = stablelab::run_suite(name, cfg);
    std::cout << rep.to_json().dump(2) << "\n";
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? kExitValid : kExitRefuted;
}

int cmd_export_dot(const std::string& model_path, const std::string& what) {
  stablelab::LoadedModel m = stablelab::load_model(model_path);
  std::cout << stablelab::export_dot(m, stablelab::dot_what_from_string(what));
  return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stablelab: finite stable semantics for intuitionistic modal logic"};
  app.require_subcommand(1);

  int default_base = 4;
  try {
    default_base = env_max_base(4);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string model_path, world, formula, suite = "all", what = "hasse";
  bool explain = false, lenient = false;
  int max_base = default_base, vars = 2;

  CLI::App* force = app.add_subcommand("force", "evaluate a formula at a world of a model file");
  force->add_option("model", model_path, "model file (JSON)")->required();
  force->add_option("world", world, "world name")->required();
  force->add_option("formula", formula, "formula text")->required();
  force->add_flag("--explain", explain, "print the clause trace with witnesses");
  force->add_flag("--lenient-atoms", lenient,
                  "unbound atoms denote the bottom filter instead of erroring");

  CLI::App* search = app.add_subcommand("search", "search for a countermodel");
  search->add_option("formula", formula, "formula text")->required();
  search->add_option("--max-base", max_base, "base poset size cap");
  search->add_option("--vars", vars, "atom count cap");

  CLI::App* verify = app.add_subcommand("verify", "run a law suite over the enumerated universe");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--max-base", max_base, "base poset size cap");

  CLI::App* export_dot = app.add_subcommand("export-dot", "emit a DOT diagram of a model file");
  export_dot->add_option("model", model_path, "model file (JSON)")->required();
  export_dot->add_option("--what", what, "hasse, bimodule, or filters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitValid : kExitUsage;
  }

  try {
    if (force->parsed()) return cmd_force(model_path, world, formula, explain, lenient);
    if (search->parsed()) return cmd_search(formula, max_base, vars);
    if (verify->parsed()) return cmd_verify(suite, max_base);
    if (export_dot->parsed()) return cmd_export_dot(model_path, what);
  } catch (const stablelab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
