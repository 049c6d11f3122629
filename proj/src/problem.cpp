#include "charclass/problem.hpp"

#include <cctype>

#include "charclass/error.hpp"

namespace charclass {

namespace {

bool is_keyword(std::string_view s) { return s == "vars" || s == "gens" || s == "affine" || s == "homvar"; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  void skip_space() {
    for (;;) {
      if (pos_ >= text_.size()) return;
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        return;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  /// Next significant character; the Unicode minus sign reads as '-'.
  char peek() {
    skip_space();
    if (pos_ >= text_.size()) return '\0';
    if (text_.compare(pos_, 3, "\xE2\x88\x92") == 0) return '-';
    return text_[pos_];
  }

  void take() {
    if (text_.compare(pos_, 3, "\xE2\x88\x92") == 0) {
      advance(3);
      col_ -= 2;
    } else {
      advance(1);
    }
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'" + found());
    take();
  }

  bool accept(char c) {
    if (peek() != c) return false;
    take();
    return true;
  }

  std::string ident() {
    char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected identifier" + found());
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance(1);
    return std::string(text_.substr(start, pos_ - start));
  }

  BigInt integer() {
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected integer" + found());
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("implicit multiplication is not allowed; write '*'");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::string found() {
    if (at_end()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  void advance(std::size_t k) {
    for (std::size_t i = 0; i < k && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class ExprParser {
 public:
  ExprParser(Lexer& lex, const RingPtr<BigInt>& ring) : lex_(lex), ring_(ring) {}

  Polynomial<BigInt> sum() {
    Polynomial<BigInt> acc(ring_);
    bool neg = false;
    if (lex_.accept('-')) neg = true;
    else lex_.accept('+');
    Polynomial<BigInt> t = term();
    acc = neg ? acc - t : acc + t;
    for (;;) {
      if (lex_.accept('+')) acc += term();
      else if (lex_.accept('-')) acc -= term();
      else return acc;
    }
  }

 private:
  Polynomial<BigInt> term() {
    Polynomial<BigInt> acc = factor();
    while (lex_.accept('*')) acc *= factor();
    return acc;
  }

  Polynomial<BigInt> factor() {
    Polynomial<BigInt> base = primary();
    if (lex_.accept('^')) {
      BigInt e = lex_.integer();
      if (e > 1000) lex_.fail("exponent too large");
      Polynomial<BigInt> r = Polynomial<BigInt>::constant(ring_, 1);
      for (int k = 0; k < e.convert_to<int>(); ++k) r *= base;
      return r;
    }
    return base;
  }

  Polynomial<BigInt> primary() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.take();
      auto inner = sum();
      lex_.expect(')');
      return inner;
    }
    if (c == '-') {
      lex_.take();
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial<BigInt>::constant(ring_, lex_.integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int line = lex_.line(), col = lex_.col();
      std::string name = lex_.ident();
      int idx = ring_->index_of(name);
      if (idx < 0) throw ParseError("undeclared variable '" + name + "'", line, col);
      if (lex_.peek() == '(' || std::isdigit(static_cast<unsigned char>(lex_.peek())))
        lex_.fail("implicit multiplication is not allowed; write '*'");
      return Polynomial<BigInt>::variable(ring_, idx);
    }
    lex_.fail("expected expression" + lex_.found());
  }

  Lexer& lex_;
  const RingPtr<BigInt>& ring_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text, bool affine) {
  Lexer lex(text);
  ProblemFile out;
  out.affine = affine;
  std::vector<std::pair<int, int>> gen_pos;
  bool have_gens = false;

  while (!lex.at_end()) {
    int line = lex.line(), col = lex.col();
    std::string word = lex.ident();
    if (word == "vars") {
      if (out.ring) throw ParseError("duplicate 'vars' declaration", line, col);
      std::vector<std::string> names;
      do {
        int l = lex.line(), c = lex.col();
        std::string v = lex.ident();
        if (is_keyword(v)) throw ParseError("keyword '" + v + "' used as a variable", l, c);
        for (const auto& existing : names)
          if (existing == v) throw ParseError("duplicate variable '" + v + "'", l, c);
        names.push_back(v);
      } while (lex.accept(','));
      lex.expect(';');
      if (static_cast<int>(names.size()) > kMaxVars)
        throw ParseError("at most " + std::to_string(kMaxVars) + " variables are supported", line, col);
      out.ring = make_ring<BigInt>(std::move(names), Field<BigInt>{});
    } else if (word == "affine") {
      lex.expect(';');
      out.affine = true;
    } else if (word == "homvar") {
      out.homogenizing_variable = lex.ident();
      lex.expect(';');
    } else if (word == "gens") {
      if (!out.ring) throw ParseError("'gens' before 'vars' declaration", line, col);
      if (have_gens) throw ParseError("duplicate 'gens' section", line, col);
      have_gens = true;
      lex.expect(':');
      ExprParser expr(lex, out.ring);
      do {
        lex.peek();
        gen_pos.emplace_back(lex.line(), lex.col());
        out.generators.push_back(expr.sum());
      } while (lex.accept(','));
      lex.expect(';');
    } else {
      throw ParseError("unknown directive '" + word + "'", line, col);
    }
  }
  if (!out.ring) throw ParseError("missing 'vars' declaration", lex.line(), lex.col());
  if (!have_gens) throw ParseError("missing 'gens' section", lex.line(), lex.col());
  if (out.homogenizing_variable && out.ring->index_of(*out.homogenizing_variable) >= 0)
    throw ParseError("homogenizing variable '" + *out.homogenizing_variable + "' collides with a declared variable",
                     lex.line(), lex.col());
  if (!out.affine) {
    for (std::size_t i = 0; i < out.generators.size(); ++i)
      if (!out.generators[i].is_homogeneous())
        throw ParseError("generator " + std::to_string(i + 1) + " is not homogeneous (use 'affine;')",
                         gen_pos[i].first, gen_pos[i].second);
  }
  return out;
}

std::string serialize(const ProblemFile& problem) {
  std::string s = "vars ";
  const auto& names = problem.variables();
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  s += ";\n";
  if (problem.affine) s += "affine;\n";
  if (problem.homogenizing_variable) s += "homvar " + *problem.homogenizing_variable + ";\n";
  s += "gens: ";
  for (std::size_t i = 0; i < problem.generators.size(); ++i)
    s += (i ? ",\n  " : "") + to_string(problem.generators[i]);
  s += ";\n";
  return s;
}

Polynomial<BigInt> parse_polynomial(std::string_view expr, const RingPtr<BigInt>& ring) {
  Lexer lex(expr);
  ExprParser p(lex, ring);
  auto f = p.sum();
  if (!lex.at_end()) lex.fail("trailing input" + lex.found());
  return f;
}

}  // namespace charclass
