#include "stablelab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace stablelab {

FormulaPtr f_atom(std::string name) {
  return std::make_shared<Formula>(Formula{Conn::Atom, std::move(name), nullptr, nullptr});
}
FormulaPtr f_top() { return std::make_shared<Formula>(Formula{Conn::Top, "", nullptr, nullptr}); }
FormulaPtr f_bot() { return std::make_shared<Formula>(Formula{Conn::Bot, "", nullptr, nullptr}); }
FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Conn::And, "", std::move(l), std::move(r)});
}
FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Conn::Or, "", std::move(l), std::move(r)});
}
FormulaPtr f_imp(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Conn::Imp, "", std::move(l), std::move(r)});
}
FormulaPtr f_dia(FormulaPtr sub) {
  return std::make_shared<Formula>(Formula{Conn::Dia, "", std::move(sub), nullptr});
}
FormulaPtr f_box(FormulaPtr sub) {
  return std::make_shared<Formula>(Formula{Conn::Box, "", std::move(sub), nullptr});
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Conn::Atom:
      return a.atom == b.atom;
    case Conn::Top:
    case Conn::Bot:
      return true;
    case Conn::Dia:
    case Conn::Box:
      return equal(*a.left, *b.left);
    default:
      return equal(*a.left, *b.left) && equal(*a.right, *b.right);
  }
}

bool has_modality(const Formula& f) {
  switch (f.kind) {
    case Conn::Dia:
    case Conn::Box:
      return true;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      return has_modality(*f.left) || has_modality(*f.right);
    default:
      return false;
  }
}

int depth(const Formula& f) {
  switch (f.kind) {
    case Conn::Atom:
    case Conn::Top:
    case Conn::Bot:
      return 0;
    case Conn::Dia:
    case Conn::Box:
      return 1 + depth(*f.left);
    default:
      return 1 + std::max(depth(*f.left), depth(*f.right));
  }
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind) {
    case Conn::Atom:
      out.insert(f.atom);
      break;
    case Conn::Dia:
    case Conn::Box:
      out = atoms(*f.left);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp: {
      out = atoms(*f.left);
      auto r = atoms(*f.right);
      out.insert(r.begin(), r.end());
      break;
    }
    default:
      break;
  }
  return out;
}

namespace {

enum class Tok { Atom, Top, Bot, Dia, Box, Not, And, Or, Imp, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& src;
  size_t i = 0;

  bool starts_with(const char* s) const {
    size_t len = std::char_traits<char>::length(s);
    return src.compare(i, len, s) == 0;
  }

  Token next() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    size_t start = i;
    if (i >= src.size()) return {Tok::End, "", start};

    struct Sym {
      const char* text;
      Tok kind;
    };
    static const Sym symbols[] = {
        {"->", Tok::Imp}, {"\xE2\x86\x92", Tok::Imp},            // ->
        {"&", Tok::And},  {"\xE2\x88\xA7", Tok::And},            // and
        {"|", Tok::Or},   {"\xE2\x88\xA8", Tok::Or},             // or
        {"<>", Tok::Dia}, {"\xE2\x99\xA6", Tok::Dia},            // diamond
        {"[]", Tok::Box}, {"\xE2\x96\xA1", Tok::Box},            // box
        {"~", Tok::Not},  {"\xC2\xAC", Tok::Not},                // not
        {"\xE2\x8A\xA4", Tok::Top}, {"\xE2\x8A\xA5", Tok::Bot},  // top, bot
        {"(", Tok::LParen}, {")", Tok::RParen},
    };
    for (const Sym& s : symbols) {
      if (starts_with(s.text)) {
        i += std::char_traits<char>::length(s.text);
        return {s.kind, s.text, start};
      }
    }
    if (std::isalpha(static_cast<unsigned char>(src[i]))) {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      i = j;
      if (word == "top") return {Tok::Top, word, start};
      if (word == "bot") return {Tok::Bot, word, start};
      if (word == "dia") return {Tok::Dia, word, start};
      if (word == "box") return {Tok::Box, word, start};
      return {Tok::Atom, word, start};
    }
    throw ParseError("unexpected character '" + src.substr(i, 1) + "'", start);
  }
};

struct Parser {
  Lexer lex;
  Token look;

  explicit Parser(const std::string& src) : lex{src} { look = lex.next(); }

  Token advance() {
    Token t = look;
    look = lex.next();
    return t;
  }

  FormulaPtr parse_formula() { return parse_imp(); }

  FormulaPtr parse_imp() {
    FormulaPtr l = parse_or();
    if (look.kind == Tok::Imp) {
      advance();
      return f_imp(std::move(l), parse_imp());  // right-associative
    }
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (look.kind == Tok::Or) {
      advance();
      l = f_or(std::move(l), parse_and());
    }
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (look.kind == Tok::And) {
      advance();
      l = f_and(std::move(l), parse_unary());
    }
    return l;
  }

  FormulaPtr parse_unary() {
    switch (look.kind) {
      case Tok::Dia:
        advance();
        return f_dia(parse_unary());
      case Tok::Box:
        advance();
        return f_box(parse_unary());
      case Tok::Not:
        advance();
        return f_not(parse_unary());
      default:
        return parse_primary();
    }
  }

  FormulaPtr parse_primary() {
    switch (look.kind) {
      case Tok::Atom:
        return f_atom(advance().text);
      case Tok::Top:
        advance();
        return f_top();
      case Tok::Bot:
        advance();
        return f_bot();
      case Tok::LParen: {
        advance();
        FormulaPtr f = parse_formula();
        if (look.kind != Tok::RParen) throw ParseError("expected ')'", look.pos);
        advance();
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", look.pos);
      default:
        throw ParseError("unexpected token '" + look.text + "'", look.pos);
    }
  }
};

// Precedence levels, loosest first.
enum Level { kImp = 0, kOr = 1, kAnd = 2, kPrefix = 3 };

int level_of(const Formula& f) {
  switch (f.kind) {
    case Conn::Imp:
      return kImp;
    case Conn::Or:
      return kOr;
    case Conn::And:
      return kAnd;
    case Conn::Dia:
    case Conn::Box:
      return kPrefix;
    default:
      return kPrefix + 1;
  }
}

void print_at(const Formula& f, int context, std::string& out) {
  int self = level_of(f);
  bool parens = self < context;
  if (parens) out += "(";
  switch (f.kind) {
    case Conn::Atom:
      out += f.atom;
      break;
    case Conn::Top:
      out += "top";
      break;
    case Conn::Bot:
      out += "bot";
      break;
    case Conn::And:
      print_at(*f.left, kAnd, out);
      out += " & ";
      print_at(*f.right, kAnd + 1, out);
      break;
    case Conn::Or:
      print_at(*f.left, kOr, out);
      out += " | ";
      print_at(*f.right, kOr + 1, out);
      break;
    case Conn::Imp:
      print_at(*f.left, kImp + 1, out);
      out += " -> ";
      print_at(*f.right, kImp, out);
      break;
    case Conn::Dia:
      out += "dia ";
      print_at(*f.left, kPrefix, out);
      break;
    case Conn::Box:
      out += "box ";
      print_at(*f.left, kPrefix, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

FormulaPtr parse(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.parse_formula();
  if (p.look.kind != Tok::End) throw ParseError("trailing input '" + p.look.text + "'", p.look.pos);
  return f;
}

std::string print(const Formula& f) {
  std::string out;
  print_at(f, kImp, out);
  return out;
}

}  // namespace stablelab
