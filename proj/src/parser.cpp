#include "cylsym/parser.hpp"

#include <cctype>
#include <sstream>

namespace cylsym {

std::string SymbolTable::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : symbols) {
    if (!first) os << ", ";
    os << s;
    first = false;
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

struct Parser {
  Lexer lx;
  const SymbolTable& table;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(lx.pos, msg); }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (lx.eat('+'))
        e = e + parse_term();
      else if (lx.eat('-'))
        e = e - parse_term();
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (lx.eat('*'))
        e = e * parse_factor();
      else if (lx.eat('/'))
        e = e / parse_factor();
      else
        return e;
    }
  }

  Expr parse_factor() {
    bool neg = false;
    for (;;) {
      if (lx.eat('-'))
        neg = !neg;
      else if (lx.eat('+'))
        ;
      else
        break;
    }
    Expr b = parse_base();
    if (lx.eat('^')) b = Expr::pow(b, parse_exponent());
    return neg ? -b : b;
  }

  Rational parse_exponent() {
    bool paren = lx.eat('(');
    bool neg = false;
    while (lx.eat('-')) neg = !neg;
    char c = lx.peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected exponent");
    Rational q = parse_number_value();
    if (lx.eat('/')) {
      if (!std::isdigit(static_cast<unsigned char>(lx.peek()))) fail("expected denominator");
      Rational d = parse_number_value();
      if (d == 0) fail("zero denominator in exponent");
      q /= d;
    }
    if (paren && !lx.eat(')')) fail("expected ')'");
    return neg ? Rational(-q) : q;
  }

  Rational parse_number_value() {
    lx.skip_ws();
    std::size_t start = lx.pos;
    while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])))
      ++lx.pos;
    Integer whole = start == lx.pos ? Integer(0) : Integer(lx.text.substr(start, lx.pos - start));
    Rational q(whole);
    if (lx.pos < lx.text.size() && lx.text[lx.pos] == '.') {
      ++lx.pos;
      std::size_t fs = lx.pos;
      while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])))
        ++lx.pos;
      if (fs == lx.pos) fail("expected digits after decimal point");
      Integer frac(lx.text.substr(fs, lx.pos - fs));
      Integer den(1);
      for (std::size_t i = fs; i < lx.pos; ++i) den *= 10;
      q += Rational(frac, den);
    }
    return q;
  }

  Expr parse_base() {
    char c = lx.peek();
    std::size_t at = lx.pos;
    if (c == '(') {
      ++lx.pos;
      Expr e = parse_expr();
      if (!lx.eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::number(parse_number_value());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = lx.pos;
      while (lx.pos < lx.text.size() &&
             (std::isalnum(static_cast<unsigned char>(lx.text[lx.pos])) || lx.text[lx.pos] == '_'))
        ++lx.pos;
      std::string id = lx.text.substr(start, lx.pos - start);
      if (lx.peek() == '(') return parse_call(id, start);
      return resolve(id, start);
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
    throw ParseError(at, "unreachable");
  }

  Expr parse_call(const std::string& name, std::size_t at) {
    lx.eat('(');
    std::vector<Expr> args;
    if (lx.peek() != ')') {
      args.push_back(parse_expr());
      while (lx.eat(',')) args.push_back(parse_expr());
    }
    if (!lx.eat(')')) fail("expected ')'");
    if (name == "atan") return Expr::func("arctan", std::move(args));
    try {
      return Expr::func(name, std::move(args));
    } catch (const ExprError& e) {
      throw ParseError(at, e.what());
    }
  }

  Expr resolve(const std::string& id, std::size_t at) {
    if (id == "theta") return Expr::symbol("q");
    // jet coordinates
    if (id == "u") return Expr::u();
    if (id.size() > 2 && id[0] == 'u' && id[1] == '_') {
      JetIndex j;
      for (std::size_t i = 2; i < id.size(); ++i) {
        switch (id[i]) {
          case 'r': j.d[0]++; break;
          case 'q': j.d[1]++; break;
          case 'z': j.d[2]++; break;
          default: throw ParseError(at, "bad jet suffix in '" + id + "'");
        }
      }
      if (j.order() > 2) throw ParseError(at, "jet order above 2 in '" + id + "'");
      return Expr::jet(j);
    }
    // undetermined coefficient functions
    static const std::map<std::string, std::uint8_t> unknowns = {
        {"xi1", 0}, {"xi2", 1}, {"xi3", 2}, {"eta", 3}};
    std::string head = id;
    std::string suffix;
    if (auto us = id.find('_'); us != std::string::npos) {
      head = id.substr(0, us);
      suffix = id.substr(us + 1);
    }
    if (auto it = unknowns.find(head); it != unknowns.end()) {
      UnknownIndex u;
      u.which = it->second;
      for (char ch : suffix) {
        switch (ch) {
          case 'r': u.d[0]++; break;
          case 'q': u.d[1]++; break;
          case 'z': u.d[2]++; break;
          case 'u': u.d[3]++; break;
          default: throw ParseError(at, "bad derivative suffix in '" + id + "'");
        }
      }
      return Expr::unknown(u);
    }
    if (table.symbols.count(id)) return Expr::symbol(id);
    throw UnknownIdentifierError(at, id, table.describe());
  }
};

}  // namespace

Expr parse(const std::string& text, const SymbolTable& table) {
  Parser p{Lexer{text}, table};
  Expr e = p.parse_expr();
  p.lx.skip_ws();
  if (p.lx.pos != text.size()) throw ParseError(p.lx.pos, "unexpected trailing input");
  return e;
}

}  // namespace cylsym
