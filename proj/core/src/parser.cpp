#include <cctype>
#include <cstdlib>

#include "nambu/expr.hpp"

namespace nambu {

namespace {

struct Parser {
  std::string_view text;
  std::span<const std::string> coords;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, size_t at) {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        e = e + parse_term();
      } else if (c == '-') {
        ++pos;
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        e = e * parse_unary();
      } else if (c == '/') {
        ++pos;
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (eat('-')) return Expr::negate(parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (eat('^')) {
      int k = parse_int_exponent();
      return Expr::int_power(std::move(base), k);
    }
    return base;
  }

  int parse_int_exponent() {
    skip_ws();
    bool paren = eat('(');
    skip_ws();
    size_t start = pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == digits) fail("expected integer exponent", start);
    long v = std::strtol(std::string(text.substr(digits, pos - digits)).c_str(),
                         nullptr, 10);
    if (paren && !eat(')')) fail("expected ')'", pos);
    return static_cast<int>(neg ? -v : v);
  }

  Expr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  Expr parse_number() {
    size_t start = pos;
    bool is_float = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos < text.size() && text[pos] == '.') {
      is_float = true;
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      size_t save = pos;
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        is_float = true;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
      } else {
        pos = save;  // 'e' belongs to a following identifier, not the literal
      }
    }
    std::string lit(text.substr(start, pos - start));
    if (lit.empty() || lit == ".") fail("malformed number", start);
    if (is_float) return Expr::real(std::strtod(lit.c_str(), nullptr));
    return Expr::constant(Number(Rational(lit)));
  }

  Expr parse_ident() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    std::string name(text.substr(start, pos - start));
    if (name == "sin" || name == "cos" || name == "exp" || name == "log") {
      if (!eat('(')) fail("expected '(' after function '" + name + "'", pos);
      Expr arg = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      if (name == "sin") return Expr::sin(std::move(arg));
      if (name == "cos") return Expr::cos(std::move(arg));
      if (name == "exp") return Expr::exp(std::move(arg));
      return Expr::log(std::move(arg));
    }
    for (const std::string& coord : coords)
      if (coord == name) return Expr::variable(name);
    fail("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> coords) {
  Parser p{text, coords};
  Expr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    p.fail(std::string("unexpected trailing input '") +
               std::string(text.substr(p.pos)) + "'",
           p.pos);
  return e;
}

}  // namespace nambu
