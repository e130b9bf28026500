#include <algorithm>
#include <cctype>
#include <map>

#include "latclone/error.hpp"
#include "latclone/ppqe.hpp"

namespace latclone {

namespace {

enum class Tok { ident, meet, join, eq, le, amp, dot, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::meet: return "'/\\'";
    case Tok::join: return "'\\/'";
    case Tok::eq: return "'='";
    case Tok::le: return "'<='";
    case Tok::amp: return "'&'";
    case Tok::dot: return "'.'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c >= 0x80) throw SyntaxError(i, "non-ASCII character");
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "/\\") {
      out.push_back({Tok::meet, two, i});
      i += 2;
    } else if (two == "\\/") {
      out.push_back({Tok::join, two, i});
      i += 2;
    } else if (two == "<=") {
      out.push_back({Tok::le, two, i});
      i += 2;
    } else if (c == '=' || c == '&' || c == '.' || c == '(' || c == ')') {
      const Tok k = c == '=' ? Tok::eq
                    : c == '&' ? Tok::amp
                    : c == '.' ? Tok::dot
                    : c == '(' ? Tok::lparen
                               : Tok::rparen;
      out.push_back({k, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw SyntaxError(i, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

bool is_keyword(const std::string& s) { return s == "exists" || s == "true"; }

class Parser {
 public:
  Parser(std::vector<Token> toks, Mode mode) : toks_(std::move(toks)), mode_(mode) {}

  std::vector<std::string> bound;
  std::vector<std::pair<std::string, std::size_t>> seen;  // name, first position

  void prefix() {
    while (peek().kind == Tok::ident && peek().text == "exists") {
      next();
      std::size_t count = 0;
      while (peek().kind == Tok::ident) {
        const auto& t = next();
        if (is_keyword(t.text)) throw SyntaxError(t.pos, "keyword used as variable");
        if (std::find(bound.begin(), bound.end(), t.text) != bound.end()) {
          throw SyntaxError(t.pos, "variable '" + t.text + "' quantified twice");
        }
        bound.push_back(t.text);
        ++count;
      }
      if (count == 0) throw SyntaxError(peek().pos, "expected variable after 'exists'");
      expect(Tok::dot);
    }
  }

  std::vector<Atom> body() {
    std::vector<Atom> atoms;
    if (peek().kind == Tok::ident && peek().text == "true" && toks_[pos_ + 1].kind == Tok::end) {
      next();
    } else {
      atoms = conj();
    }
    expect(Tok::end);
    return atoms;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok k) {
    if (peek().kind != k) {
      throw SyntaxError(peek().pos, std::string("expected ") + describe(k) + ", found " +
                                        describe(peek().kind));
    }
    return next();
  }

  std::vector<Atom> conj() {
    auto atoms = group_or_atom();
    while (peek().kind == Tok::amp) {
      next();
      auto more = group_or_atom();
      atoms.insert(atoms.end(), more.begin(), more.end());
    }
    return atoms;
  }

  // "(" opens either a parenthesized conjunction or a parenthesized term.
  std::vector<Atom> group_or_atom() {
    if (peek().kind == Tok::lparen) {
      const auto saved = pos_;
      const auto saved_seen = seen.size();
      try {
        next();
        auto atoms = conj();
        expect(Tok::rparen);
        const auto k = peek().kind;
        if (k == Tok::amp || k == Tok::rparen || k == Tok::end) return atoms;
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
      seen.resize(saved_seen);
    }
    return {atom()};
  }

  Atom atom() {
    auto lhs = term();
    const auto k = peek().kind;
    if (k != Tok::eq && k != Tok::le) {
      throw SyntaxError(peek().pos, std::string("expected '=' or '<=' after term, found ") +
                                        describe(k));
    }
    next();
    auto rhs = term();
    if (k == Tok::le) return {lhs, Term::meet(lhs, std::move(rhs))};
    return {std::move(lhs), std::move(rhs)};
  }

  Term term() {
    auto t = meet_chain();
    while (peek().kind == Tok::join) {
      if (mode_ == Mode::semilattice) {
        throw Error(Errc::join_in_semilattice_mode,
                    "join at position " + std::to_string(peek().pos) + " in semilattice mode");
      }
      next();
      t = Term::join(std::move(t), meet_chain());
    }
    return t;
  }

  Term meet_chain() {
    auto t = factor();
    while (peek().kind == Tok::meet) {
      next();
      t = Term::meet(std::move(t), factor());
    }
    return t;
  }

  Term factor() {
    if (peek().kind == Tok::lparen) {
      next();
      auto t = term();
      expect(Tok::rparen);
      return t;
    }
    if (peek().kind != Tok::ident) {
      throw SyntaxError(peek().pos, std::string("expected variable or '(', found ") +
                                        describe(peek().kind));
    }
    const auto& t = next();
    if (is_keyword(t.text)) throw SyntaxError(t.pos, "keyword '" + t.text + "' used as variable");
    std::size_t i = 0;
    while (i < seen.size() && seen[i].first != t.text) ++i;
    if (i == seen.size()) seen.emplace_back(t.text, t.pos);
    if (i >= kMaxVariables) throw SyntaxError(t.pos, "more than 32 variables");
    return Term::variable(i);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Mode mode_;
};

Term remap(const Term& t, const std::vector<std::size_t>& index) {
  switch (t.kind()) {
    case Term::Kind::variable: return Term::variable(index[t.var()]);
    case Term::Kind::meet: return Term::meet(remap(t.lhs(), index), remap(t.rhs(), index));
    case Term::Kind::join: return Term::join(remap(t.lhs(), index), remap(t.rhs(), index));
  }
  return t;
}

}  // namespace

PPFormula parse_formula(const std::string& text, Mode mode,
                        const std::optional<std::vector<std::string>>& declared) {
  Parser p(lex(text), mode);
  p.prefix();
  auto atoms = p.body();

  PPFormula f;
  f.bound_vars = p.bound;
  if (declared) {
    for (const auto& d : *declared) {
      if (std::find(p.bound.begin(), p.bound.end(), d) != p.bound.end()) {
        throw Error(Errc::bad_spec, "variable '" + d + "' is both free and bound");
      }
      if (std::count(declared->begin(), declared->end(), d) > 1) {
        throw Error(Errc::bad_spec, "variable '" + d + "' declared twice");
      }
    }
    f.free_vars = *declared;
    for (const auto& [name, pos] : p.seen) {
      const bool known =
          std::find(f.free_vars.begin(), f.free_vars.end(), name) != f.free_vars.end() ||
          std::find(p.bound.begin(), p.bound.end(), name) != p.bound.end();
      if (!known) {
        throw Error(Errc::unknown_variable,
                    "unknown variable '" + name + "' at position " + std::to_string(pos));
      }
    }
  } else {
    for (const auto& [name, pos] : p.seen) {
      if (std::find(p.bound.begin(), p.bound.end(), name) == p.bound.end()) {
        f.free_vars.push_back(name);
      }
    }
  }
  if (f.var_count() > kMaxVariables) throw Error(Errc::bad_spec, "more than 32 variables");

  const auto names = f.var_names();
  std::vector<std::size_t> index;
  for (const auto& [name, pos] : p.seen) {
    index.push_back(static_cast<std::size_t>(std::find(names.begin(), names.end(), name) -
                                             names.begin()));
  }
  for (auto& a : atoms) f.atoms.push_back({remap(a.lhs, index), remap(a.rhs, index)});
  return f;
}

}  // namespace latclone
