// Copyright 2026 the fuzzydb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fuzzydb/error.hpp"
#include "fuzzydb/fquery.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

Condition Condition::make_atom(fuzzydb::Atom a) {
  Condition c;
  c.kind = Kind::Atom;
  c.atom = std::move(a);
  return c;
}

Condition Condition::make_and(Condition l, Condition r) {
  Condition c;
  c.kind = Kind::And;
  c.children.push_back(std::move(l));
  c.children.push_back(std::move(r));
  return c;
}

Condition Condition::make_or(Condition l, Condition r) {
  Condition c;
  c.kind = Kind::Or;
  c.children.push_back(std::move(l));
  c.children.push_back(std::move(r));
  return c;
}

Condition Condition::make_not(Condition inner) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(inner));
  return c;
}

namespace {

enum class Tok {
  Ident, Number, String, Label, TrapOpen, LBracket, RBracket, LBrace, RBrace,
  LParen, RParen, Comma, Slash, Hash, PlusMinus, Star, End,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0;
  std::size_t line = 1, column = 1;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "'text'";
    case Tok::Label: return "$label";
    case Tok::TrapOpen: return "$[";
    case Tok::LBracket: return "[";
    case Tok::RBracket: return "]";
    case Tok::LBrace: return "{";
    case Tok::RBrace: return "}";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Comma: return ",";
    case Tok::Slash: return "/";
    case Tok::Hash: return "#";
    case Tok::PlusMinus: return "+-";
    case Tok::Star: return "*";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t first_line) : src_(src), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      const char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
      if (ident_start(c)) {
        t.kind = Tok::Ident;
        t.text = take_ident();
      } else if (digit(c) || (c == '.' && digit(next)) ||
                 (c == '-' && (digit(next) || next == '.'))) {
        t.kind = Tok::Number;
        t.text = take_number(t);
      } else if (c == '$') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '[') {
          ++pos_;
          t.kind = Tok::TrapOpen;
        } else if (pos_ < src_.size() && ident_start(src_[pos_])) {
          t.kind = Tok::Label;
          t.text = take_ident();
        } else {
          throw SyntaxError("expected a label name or '[' after '$'", t.line, t.column + 1,
                            {"label name", "["});
        }
      } else if (c == '\'') {
        t.kind = Tok::String;
        t.text = take_string(t);
      } else if (c == '+' && next == '-') {
        pos_ += 2;
        t.kind = Tok::PlusMinus;
      } else {
        ++pos_;
        switch (c) {
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '/': t.kind = Tok::Slash; break;
          case '#': t.kind = Tok::Hash; break;
          case '*': t.kind = Tok::Star; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  std::string take_ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string take_number(Token& t) {
    const std::size_t start = pos_;
    if (src_[pos_] == '-') ++pos_;
    while (pos_ < src_.size() && digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && digit(src_[p])) {
        pos_ = p;
        while (pos_ < src_.size() && digit(src_[pos_])) ++pos_;
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    const auto v = parse_number(text);
    if (!v) throw SyntaxError("malformed number '" + text + "'", t.line, t.column, {"number"});
    t.number = *v;
    return text;
  }

  std::string take_string(const Token& t) {
    ++pos_;
    std::string out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_++];
      if (c == '\'') {
        if (pos_ < src_.size() && src_[pos_] == '\'') {
          out += '\'';
          ++pos_;
          continue;
        }
        return out;
      }
      if (c == '\n') break;
      out += c;
    }
    throw SyntaxError("unterminated text literal", t.line, t.column, {"'"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t line_start_ = 0;
};

constexpr std::string_view kKeywords[] = {"SELECT", "FROM", "WHERE", "AND",     "OR",
                                          "NOT",    "FEQ",  "THOLD", "CDEG",    "UNKNOWN",
                                          "UNDEFINED", "NULL"};

bool is_keyword(std::string_view word) {
  return std::any_of(std::begin(kKeywords), std::end(kKeywords),
                     [&](std::string_view k) { return iequals(word, k); });
}

class Parser {
 public:
  Parser(std::vector<Token> toks, bool allow_single_pair)
      : toks_(std::move(toks)), allow_single_pair_(allow_single_pair) {}

  QueryAst query() {
    QueryAst q;
    keyword("SELECT");
    std::vector<const Token*> cdeg_tokens;
    do {
      q.projection.push_back(projection(cdeg_tokens));
    } while (accept(Tok::Comma));
    keyword("FROM");
    q.table = identifier();
    if (peek_keyword("WHERE")) {
      ++pos_;
      q.where = or_expr();
    }
    if (peek().kind != Tok::End) {
      fail(q.where ? std::vector<std::string>{"AND", "OR", "end of input"}
                   : std::vector<std::string>{"WHERE", "end of input"});
    }
    const auto cols = q.where ? atom_columns(*q.where) : std::vector<std::string>{};
    for (std::size_t i = 0, k = 0; i < q.projection.size(); ++i) {
      if (q.projection[i].kind != Projection::Kind::Cdeg) continue;
      const Token* at = cdeg_tokens[k++];
      if (std::find(cols.begin(), cols.end(), q.projection[i].column) == cols.end()) {
        throw SyntaxError("CDEG(" + q.projection[i].column +
                              ") names a column without a condition in WHERE",
                          at->line, at->column);
      }
    }
    return q;
  }

  FuzzyConstant constant() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Label: ++pos_; return {LabelRef{t.text}};
      case Tok::String: ++pos_; return {TextLiteral{t.text}};
      case Tok::Number: {
        ++pos_;
        if (allow_single_pair_ && accept(Tok::Slash)) {
          const Token& name = peek();
          const std::string label = identifier_any();
          return {Simple{pair(t, t.number, label, name)}};
        }
        return {Crisp{t.number}};
      }
      case Tok::LBracket: {
        ++pos_;
        const double lo = number();
        expect(Tok::Comma);
        const double hi = number();
        expect(Tok::RBracket);
        if (!(lo <= hi)) throw SyntaxError("interval requires n <= m", t.line, t.column);
        return {Interval{lo, hi}};
      }
      case Tok::Hash: {
        ++pos_;
        const double d = number();
        double margin = 0.0;
        if (accept(Tok::PlusMinus)) margin = number();
        if (!(margin >= 0.0)) throw SyntaxError("margin must be >= 0", t.line, t.column);
        return {Approx{d, margin}};
      }
      case Tok::TrapOpen: {
        ++pos_;
        double c[4];
        for (int i = 0; i < 4; ++i) {
          if (i) expect(Tok::Comma);
          c[i] = number();
        }
        expect(Tok::RBracket);
        try {
          return {Trapezoid{c[0], c[1], c[2], c[3]}};
        } catch (const Error& e) {
          throw SyntaxError(e.what(), t.line, t.column);
        }
      }
      case Tok::LBrace: {
        ++pos_;
        std::vector<PossPair> pairs;
        std::set<std::string> seen;
        do {
          const Token& p = peek();
          const double v = number();
          expect(Tok::Slash);
          const Token& name = peek();
          const std::string label = identifier_any();
          if (!seen.insert(label).second) {
            throw SyntaxError("label '" + label + "' repeated in distribution", name.line, name.column);
          }
          pairs.push_back(pair(p, v, label, name));
        } while (accept(Tok::Comma));
        expect(Tok::RBrace);
        return {PossDist{std::move(pairs)}};
      }
      case Tok::Ident:
        if (iequals(t.text, "UNKNOWN")) { ++pos_; return {Unknown{}}; }
        if (iequals(t.text, "UNDEFINED")) { ++pos_; return {Undefined{}}; }
        if (iequals(t.text, "NULL")) { ++pos_; return {Null{}}; }
        [[fallthrough]];
      default:
        fail({"$label", "number", "'text'", "[", "#", "$[", "{", "UNKNOWN", "UNDEFINED", "NULL"});
    }
  }

  std::vector<FuzzyConstant> constant_list() {
    std::vector<FuzzyConstant> out;
    if (peek().kind == Tok::End) return out;
    do {
      out.push_back(constant());
    } while (accept(Tok::Comma));
    if (peek().kind != Tok::End) fail({",", "end of input"});
    return out;
  }

  void end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind != Tok::End && t.text.empty()) found = "'" + describe(t.kind) + "'";
    throw SyntaxError("unexpected " + found, t.line, t.column, std::move(expected));
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(Tok k) {
    if (!accept(k)) fail({describe(k)});
  }

  bool peek_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && iequals(peek().text, kw);
  }

  void keyword(std::string_view kw) {
    if (!peek_keyword(kw)) fail({std::string(kw)});
    ++pos_;
  }

  std::string identifier() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail({"identifier"});
    return toks_[pos_++].text;
  }

  // Label names inside distributions may collide with keywords.
  std::string identifier_any() {
    if (peek().kind != Tok::Ident) fail({"label name"});
    return toks_[pos_++].text;
  }

  double number() {
    if (peek().kind != Tok::Number) fail({"number"});
    return toks_[pos_++].number;
  }

  PossPair pair(const Token& at, double p, const std::string& label, const Token&) const {
    if (!(p > 0.0 && p <= 1.0)) {
      throw SyntaxError("possibility must be in (0, 1]", at.line, at.column);
    }
    return PossPair{p, label};
  }

  Projection projection(std::vector<const Token*>& cdeg_tokens) {
    if (accept(Tok::Star)) return {Projection::Kind::Star, {}};
    if (peek_keyword("CDEG")) {
      cdeg_tokens.push_back(&peek());
      ++pos_;
      expect(Tok::LParen);
      Projection p;
      if (accept(Tok::Star)) {
        p.kind = Projection::Kind::CdegStar;
        cdeg_tokens.pop_back();
      } else {
        p.kind = Projection::Kind::Cdeg;
        p.column = identifier();
      }
      expect(Tok::RParen);
      return p;
    }
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail({"*", "identifier", "CDEG"});
    return {Projection::Kind::Column, identifier()};
  }

  Condition or_expr() {
    Condition left = and_expr();
    while (peek_keyword("OR")) {
      ++pos_;
      left = Condition::make_or(std::move(left), and_expr());
    }
    return left;
  }

  Condition and_expr() {
    Condition left = not_expr();
    while (peek_keyword("AND")) {
      ++pos_;
      left = Condition::make_and(std::move(left), not_expr());
    }
    return left;
  }

  Condition not_expr() {
    if (peek_keyword("NOT")) {
      ++pos_;
      return Condition::make_not(not_expr());
    }
    if (accept(Tok::LParen)) {
      Condition inner = or_expr();
      if (!accept(Tok::RParen)) fail({")", "AND", "OR"});
      return inner;
    }
    return Condition::make_atom(atom());
  }

  Atom atom() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail({"identifier", "NOT", "("});
    Atom a;
    a.column = identifier();
    keyword("FEQ");
    a.constant = constant();
    if (peek_keyword("THOLD")) {
      ++pos_;
      const Token& t = peek();
      const double th = number();
      if (!(th >= 0.0 && th <= 1.0)) {
        throw SyntaxError("threshold must be in [0, 1]", t.line, t.column);
      }
      a.threshold = th;
    }
    return a;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool allow_single_pair_;
};

std::string quote_text(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

void print_cond(std::ostringstream& out, const Condition& c);

void print_child(std::ostringstream& out, const Condition& c, bool parens) {
  if (parens) out << '(';
  print_cond(out, c);
  if (parens) out << ')';
}

void print_cond(std::ostringstream& out, const Condition& c) {
  using K = Condition::Kind;
  switch (c.kind) {
    case K::Atom:
      out << c.atom.column << " FEQ " << render_constant(c.atom.constant);
      if (c.atom.threshold) out << " THOLD " << format_number(*c.atom.threshold);
      break;
    case K::Not: {
      const auto k = c.children[0].kind;
      out << "NOT ";
      print_child(out, c.children[0], k == K::And || k == K::Or);
      break;
    }
    case K::And:
      print_child(out, c.children[0], c.children[0].kind == K::Or);
      out << " AND ";
      print_child(out, c.children[1], c.children[1].kind == K::Or || c.children[1].kind == K::And);
      break;
    case K::Or:
      print_child(out, c.children[0], false);
      out << " OR ";
      print_child(out, c.children[1], c.children[1].kind == K::Or);
      break;
  }
}

std::string pair_text(const PossPair& p) { return format_number(p.possibility()) + "/" + p.label(); }

}  // namespace

QueryAst parse_query(std::string_view text) {
  Parser p{Lexer{text, 1}.run(), false};
  return p.query();
}

FuzzyConstant parse_constant(std::string_view text, bool allow_single_pair) {
  Parser p{Lexer{text, 1}.run(), allow_single_pair};
  auto c = p.constant();
  p.end();
  return c;
}

std::vector<FuzzyConstant> parse_constant_list(std::string_view text, bool allow_single_pair,
                                               std::size_t line) {
  Parser p{Lexer{text, line}.run(), allow_single_pair};
  return p.constant_list();
}

std::string print_condition(const Condition& c) {
  std::ostringstream out;
  print_cond(out, c);
  return out.str();
}

std::string print_query(const QueryAst& q) {
  std::ostringstream out;
  out << "SELECT ";
  for (std::size_t i = 0; i < q.projection.size(); ++i) {
    if (i) out << ", ";
    const auto& p = q.projection[i];
    switch (p.kind) {
      case Projection::Kind::Star: out << '*'; break;
      case Projection::Kind::Column: out << p.column; break;
      case Projection::Kind::Cdeg: out << "CDEG(" << p.column << ')'; break;
      case Projection::Kind::CdegStar: out << "CDEG(*)"; break;
    }
  }
  out << " FROM " << q.table;
  if (q.where) {
    out << " WHERE ";
    print_cond(out, *q.where);
  }
  return out.str();
}

std::string render_constant(const FuzzyConstant& c) {
  struct Visitor {
    std::string operator()(const Unknown&) const { return "UNKNOWN"; }
    std::string operator()(const Undefined&) const { return "UNDEFINED"; }
    std::string operator()(const Null&) const { return "NULL"; }
    std::string operator()(const LabelRef& l) const { return "$" + l.name; }
    std::string operator()(const Crisp& v) const { return format_number(v.value); }
    std::string operator()(const Interval& i) const {
      return "[" + format_number(i.lo) + ", " + format_number(i.hi) + "]";
    }
    std::string operator()(const Approx& a) const {
      return "#" + format_number(a.center) + "+-" + format_number(a.margin);
    }
    std::string operator()(const Trapezoid& t) const {
      return "$[" + format_number(t.alpha()) + ", " + format_number(t.beta()) + ", " +
             format_number(t.gamma()) + ", " + format_number(t.delta()) + "]";
    }
    std::string operator()(const PossDist& d) const {
      std::string out = "{";
      for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        if (i) out += ", ";
        out += pair_text(d.pairs[i]);
      }
      return out + "}";
    }
    std::string operator()(const Simple& s) const { return pair_text(s.pair); }
    std::string operator()(const TextLiteral& t) const { return quote_text(t.value); }
  };
  return std::visit(Visitor{}, c.value);
}

std::string render_cell(const CellValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return quote_text(*s);
  if (const auto* f2 = std::get_if<FuzzyValue2>(&v)) {
    return std::visit([](const auto& x) { return render_constant(FuzzyConstant{x}); }, f2->get());
  }
  const auto& f3 = std::get<FuzzyValue3>(v);
  if (const auto* s = std::get_if<Simple>(&f3.get())) {
    if (s->pair.possibility() == 1.0) return "$" + s->pair.label();
  }
  return std::visit([](const auto& x) { return render_constant(FuzzyConstant{x}); }, f3.get());
}

}  // namespace fuzzydb
