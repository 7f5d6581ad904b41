#ifndef STABLELAB_FORMULA_HPP
#define STABLELAB_FORMULA_HPP

#include <memory>
#include <set>
#include <string>

#include "stablelab/common.hpp"

namespace stablelab {

enum class Conn { Atom, Top, Bot, And, Or, Imp, Dia, Box };

/// Immutable formula tree. Negation is sugar for `p -> bot` and has no
/// node of its own.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Conn kind;
  std::string atom;       // Atom only
  FormulaPtr left, right; // binary: both; Dia/Box: left only
};

FormulaPtr f_atom(std::string name);
FormulaPtr f_top();
FormulaPtr f_bot();
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_imp(FormulaPtr l, FormulaPtr r);
FormulaPtr f_dia(FormulaPtr sub);
FormulaPtr f_box(FormulaPtr sub);
inline FormulaPtr f_not(FormulaPtr f) { return f_imp(std::move(f), f_bot()); }

bool equal(const Formula& a, const Formula& b);
bool has_modality(const Formula& f);
int depth(const Formula& f);
std::set<std::string> atoms(const Formula& f);

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Grammar: prefix dia/box bind tightest, then &, then |, then a
// right-associative ->. `~p` desugars to `p -> bot`. ASCII keywords with
// the unicode connectives accepted as aliases.
FormulaPtr parse(const std::string& text);

// Minimal-parentheses rendering; parse(print(f)) is structurally f.
std::string print(const Formula& f);

}  // namespace stablelab

#endif
