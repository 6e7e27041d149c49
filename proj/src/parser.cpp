#include "sstl/parser.hpp"

#include "sstl/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace sstl {

void FormulaScript::define(std::string name, Formula f) {
  if (index_.contains(name)) throw EvaluationError("formula '" + name + "' defined twice");
  index_.emplace(name, entries_.size());
  entries_.emplace_back(std::move(name), std::move(f));
}

bool FormulaScript::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

const Formula& FormulaScript::get(std::string_view name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) throw EvaluationError("no formula named '" + std::string(name) + "'");
  return entries_[it->second].second;
}

namespace {

enum class Tok {
  Number,
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bang,
  Amp,
  Pipe,
  Arrow,
  Plus,
  Minus,
  Star,
  Slash,
  Ge,
  Gt,
  Le,
  Lt,
  EqEq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      push(Tok::Number, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    const auto two = src.substr(i, 2);
    if (two == "->") { push(Tok::Arrow, 2); continue; }
    if (two == ">=") { push(Tok::Ge, 2); continue; }
    if (two == "<=") { push(Tok::Le, 2); continue; }
    if (two == "==") { push(Tok::EqEq, 2); continue; }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Pipe, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_comparison(Tok t) {
  return t == Tok::Ge || t == Tok::Gt || t == Tok::Le || t == Tok::Lt || t == Tok::EqEq;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const FormulaScript* defs)
      : tokens_(std::move(tokens)), defs_(defs) {}

  Formula parse_all() {
    auto f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  bool keyword_with_bounds(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word && peek(1).kind == Tok::LBracket;
  }

  Formula formula() {
    auto lhs = disjunction();
    if (accept(Tok::Arrow)) return make_implies(lhs, formula());
    return lhs;
  }

  Formula disjunction() {
    auto f = conjunction();
    while (accept(Tok::Pipe)) f = make_or(f, conjunction());
    return f;
  }

  Formula conjunction() {
    auto f = binary();
    while (accept(Tok::Amp)) f = make_and(f, binary());
    return f;
  }

  Formula binary() {
    auto f = unary();
    for (;;) {
      if (keyword_with_bounds("U")) {
        const Token& at = next();
        const auto b = time_bounds(at);
        f = make_until(f, unary(), b);
      } else if (keyword_with_bounds("S")) {
        const Token& at = next();
        const auto b = distance_bounds(at);
        f = make_surround(f, unary(), b);
      } else {
        return f;
      }
    }
  }

  Formula unary() {
    if (accept(Tok::Bang)) return make_not(unary());
    if (keyword_with_bounds("F")) {
      const Token& at = next();
      const auto b = time_bounds(at);
      return make_eventually(unary(), b);
    }
    if (keyword_with_bounds("G")) {
      const Token& at = next();
      const auto b = time_bounds(at);
      return make_globally(unary(), b);
    }
    if (keyword_with_bounds("somewhere")) {
      const Token& at = next();
      const auto b = distance_bounds(at);
      return make_somewhere(unary(), b);
    }
    if (keyword_with_bounds("everywhere")) {
      const Token& at = next();
      const auto b = distance_bounds(at);
      return make_everywhere(unary(), b);
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false") &&
        !is_comparison(peek(1).kind)) {
      next();
      return make_constant(t.text == "true");
    }

    // An atom and a parenthesised formula can both start with '(' or a
    // name; try the atom first and fall back.
    const std::size_t start = pos_;
    std::optional<ParseError> atom_error;
    try {
      return atom();
    } catch (const ParseError& e) {
      atom_error = e;
    }
    const std::size_t atom_reach = pos_;
    pos_ = start;

    if (t.kind == Tok::LParen) {
      next();
      try {
        auto f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError& e) {
        // Report whichever reading got further into the input.
        if (pos_ >= atom_reach) throw;
        throw *atom_error;
      }
    }
    if (t.kind == Tok::Ident && !is_comparison(peek(1).kind)) {
      if (defs_ != nullptr && defs_->contains(t.text)) {
        next();
        return defs_->get(t.text);
      }
      if (atom_reach == start + 1) fail_at(t, "unknown formula or missing comparison after '" + t.text + "'");
    }
    throw *atom_error;
  }

  Formula atom() {
    auto lhs = expr();
    Comparison op;
    switch (peek().kind) {
      case Tok::Ge: op = Comparison::Ge; break;
      case Tok::Gt: op = Comparison::Gt; break;
      case Tok::Le: op = Comparison::Le; break;
      case Tok::Lt: op = Comparison::Lt; break;
      case Tok::EqEq: op = Comparison::Eq; break;
      default: fail("expected comparison operator");
    }
    next();
    auto rhs = expr();
    return make_atom(std::move(lhs), op, std::move(rhs));
  }

  Expr expr() {
    auto e = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        e = make_binary(ArithOp::Add, e, term());
      } else if (accept(Tok::Minus)) {
        e = make_binary(ArithOp::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    auto e = factor();
    for (;;) {
      if (accept(Tok::Star)) {
        e = make_binary(ArithOp::Mul, e, factor());
      } else if (accept(Tok::Slash)) {
        e = make_binary(ArithOp::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    const Token& t = peek();
    if (accept(Tok::Minus)) return make_negate(factor());
    if (t.kind == Tok::Number) {
      next();
      return make_number(number_value(t));
    }
    if (t.kind == Tok::Ident) {
      if (peek(1).kind == Tok::LBracket) fail("operator '" + t.text + "' inside arithmetic");
      next();
      return make_variable(t.text);
    }
    if (accept(Tok::LParen)) {
      auto e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("expected number, variable or '('");
  }

  static double number_value(const Token& t) {
    char* end = nullptr;
    const double v = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size() || !std::isfinite(v)) {
      fail_at(t, "malformed number '" + t.text + "'");
    }
    return v;
  }

  Time time_value() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) fail("time bound must be nonnegative");
    if (t.kind != Tok::Number) fail("expected a time bound");
    next();
    try {
      return parse_time(t.text);
    } catch (const std::invalid_argument& e) {
      fail_at(t, e.what());
    }
  }

  double distance_value() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) fail("distance bound must be nonnegative");
    if (t.kind == Tok::Ident && t.text == "inf") {
      next();
      return std::numeric_limits<double>::infinity();
    }
    if (t.kind != Tok::Number) fail("expected a distance bound");
    next();
    return number_value(t);
  }

  TimeBounds time_bounds(const Token& op) {
    expect(Tok::LBracket, "'['");
    const Time lo = time_value();
    expect(Tok::Comma, "','");
    const Time hi = time_value();
    expect(Tok::RBracket, "']'");
    if (lo > hi) fail_at(op, "time interval [" + to_string(lo) + "," + to_string(hi) + "] is reversed");
    return {lo, hi};
  }

  DistanceBounds distance_bounds(const Token& op) {
    expect(Tok::LBracket, "'['");
    const double lo = distance_value();
    if (std::isinf(lo)) fail_at(op, "distance lower bound must be finite");
    expect(Tok::Comma, "','");
    const double hi = distance_value();
    expect(Tok::RBracket, "']'");
    if (lo > hi) fail_at(op, "distance interval is reversed");
    return {lo, hi};
  }

  std::vector<Token> tokens_;
  const FormulaScript* defs_;
  std::size_t pos_ = 0;
};

Formula parse_at(std::string_view text, const FormulaScript* defs, std::size_t line,
                 std::size_t column_offset) {
  auto tokens = lex(text, line);
  if (column_offset) {
    for (auto& t : tokens) t.column += column_offset;
  }
  return Parser(std::move(tokens), defs).parse_all();
}

} // namespace

Formula parse_formula(std::string_view text, const FormulaScript* definitions) {
  return parse_at(text, definitions, 1, 0);
}

FormulaScript parse_script(std::string_view text) {
  FormulaScript script;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const auto def = line.find(":=");
    if (def == std::string_view::npos) throw ParseError("expected 'name := formula'", line_no, 1);
    std::string_view name = line.substr(0, def);
    const auto nb = name.find_first_not_of(" \t");
    const auto ne = name.find_last_not_of(" \t");
    name = name.substr(nb, ne - nb + 1);
    const bool valid = !name.empty() &&
                       (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                       name.find_first_not_of(
                           "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") ==
                           std::string_view::npos;
    if (!valid) throw ParseError("invalid formula name '" + std::string(name) + "'", line_no, nb + 1);
    if (script.contains(name)) {
      throw ParseError("formula '" + std::string(name) + "' defined twice", line_no, nb + 1);
    }
    auto f = parse_at(line.substr(def + 2), &script, line_no, def + 2);
    script.define(std::string(name), std::move(f));
    if (end == text.size()) break;
  }
  return script;
}

FormulaScript read_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open formula file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

} // namespace sstl
