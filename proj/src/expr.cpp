#include "cartanforge/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

namespace cartanforge {

const Chart& Chart::frame_bundle() {
  static const Chart c{"frame_bundle", {{"r", 1}, {"theta", 2}, {"psi", 3}}};
  return c;
}

const Chart& Chart::plain() {
  static const Chart c{"plain", {}};
  return c;
}

namespace {

enum class Tok { Number, Ident, Let, Punct, End };

struct Token {
  Tok kind = Tok::End;
  double number = 0.0;
  std::string text;  // identifier name or punctuation
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      return lex_number(t);
    }
    if ((c >= 'a' && c <= 'z') || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
              (src_[pos_] >= '0' && src_[pos_] <= '9') || src_[pos_] == '_'))
        advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = (t.text == "let") ? Tok::Let : Tok::Ident;
      return t;
    }
    if (std::string_view("+-*/^(),=;").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  Token lex_number(Token t) {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        advance();
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
      } else {
        // Not an exponent after all; rewind to the 'e'.
        while (pos_ > mark) {
          --pos_;
          --col_;
        }
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    t.kind = Tok::Number;
    t.number = std::strtod(text.c_str(), nullptr);
    return t;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart) : lexer_(src) {
    for (int axis = 1; axis <= 3; ++axis)
      env_["c" + std::to_string(axis)] = ScalarField::coordinate(axis);
    for (const auto& [name, axis] : chart.aliases)
      env_[name] = ScalarField::coordinate(axis);
    bump();
  }

  ScalarField parse_program() {
    while (cur_.kind == Tok::Let) {
      bump();
      if (cur_.kind != Tok::Ident)
        throw ParseError(cur_.line, cur_.col, "expected a name after 'let'");
      const std::string name = cur_.text;
      bump();
      expect_punct("=");
      ScalarField value = parse_expr();
      expect_punct(";");
      env_[name] = value;  // later bindings may shadow earlier ones
    }
    ScalarField result = parse_expr();
    if (cur_.kind != Tok::End)
      throw ParseError(cur_.line, cur_.col,
                       "unexpected trailing input '" + describe(cur_) + "'");
    return result;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Number: return "number";
      case Tok::Ident: return t.text;
      case Tok::Let: return "let";
      case Tok::Punct: return t.text;
      case Tok::End: return "end of input";
    }
    return "?";
  }

  bool at_punct(const char* s) const {
    return cur_.kind == Tok::Punct && cur_.text == s;
  }

  void expect_punct(const char* s) {
    if (!at_punct(s))
      throw ParseError(cur_.line, cur_.col,
                       std::string("expected '") + s + "', found '" +
                           describe(cur_) + "'");
    bump();
  }

  ScalarField parse_expr() {
    ScalarField lhs = parse_term();
    while (at_punct("+") || at_punct("-")) {
      const bool plus = cur_.text == "+";
      bump();
      ScalarField rhs = parse_term();
      lhs = plus ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  ScalarField parse_term() {
    ScalarField lhs = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      const bool mul = cur_.text == "*";
      bump();
      ScalarField rhs = parse_unary();
      lhs = mul ? lhs * rhs : lhs / rhs;
    }
    return lhs;
  }

  ScalarField parse_unary() {
    if (at_punct("-")) {
      bump();
      return -parse_unary();
    }
    return parse_power();
  }

  ScalarField parse_power() {
    ScalarField base = parse_atom();
    if (at_punct("^")) {
      bump();
      // Right-associative; the exponent admits a leading unary minus.
      ScalarField exponent = parse_unary();
      return pow(base, exponent);
    }
    return base;
  }

  ScalarField parse_atom() {
    if (cur_.kind == Tok::Number) {
      ScalarField f(cur_.number);
      bump();
      return f;
    }
    if (at_punct("(")) {
      bump();
      ScalarField inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (cur_.kind == Tok::Ident) {
      const Token name = cur_;
      bump();
      if (at_punct("(")) return parse_call(name);
      auto it = env_.find(name.text);
      if (it == env_.end())
        throw ParseError(name.line, name.col,
                         "unknown identifier '" + name.text + "'");
      return it->second;
    }
    throw ParseError(cur_.line, cur_.col,
                     "expected an expression, found '" + describe(cur_) + "'");
  }

  ScalarField parse_call(const Token& name) {
    expect_punct("(");
    std::vector<ScalarField> args;
    if (!at_punct(")")) {
      args.push_back(parse_expr());
      while (at_punct(",")) {
        bump();
        args.push_back(parse_expr());
      }
    }
    expect_punct(")");

    auto need = [&](size_t arity) {
      if (args.size() != arity)
        throw ParseError(name.line, name.col,
                         "'" + name.text + "' takes " + std::to_string(arity) +
                             " argument" + (arity == 1 ? "" : "s") + ", got " +
                             std::to_string(args.size()));
    };
    if (name.text == "sin") { need(1); return sin(args[0]); }
    if (name.text == "cos") { need(1); return cos(args[0]); }
    if (name.text == "tan") { need(1); return tan(args[0]); }
    if (name.text == "exp") { need(1); return exp(args[0]); }
    if (name.text == "log") { need(1); return log(args[0]); }
    if (name.text == "sqrt") { need(1); return sqrt(args[0]); }
    if (name.text == "abs") { need(1); return abs(args[0]); }
    if (name.text == "pow") { need(2); return pow(args[0], args[1]); }
    throw ParseError(name.line, name.col,
                     "unknown function '" + name.text + "'");
  }

  Lexer lexer_;
  Token cur_;
  std::map<std::string, ScalarField> env_;
};

}  // namespace

ScalarField parse_field(std::string_view source, const Chart& chart) {
  Parser parser(source, chart);
  return parser.parse_program();
}

}  // namespace cartanforge
