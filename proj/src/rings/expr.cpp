#include "excision/expr.hpp"

#include <cctype>

#include "excision/error.hpp"

namespace exl::expr {

NodePtr Node::number(mpz_class n) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Num;
  p->num = std::move(n);
  return p;
}

NodePtr Node::variable(std::string v) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Var;
  p->var = std::move(v);
  return p;
}

NodePtr Node::make(Kind k, std::vector<NodePtr> kids, long exp) {
  auto p = std::make_shared<Node>();
  p->kind = k;
  p->kids = std::move(kids);
  p->exponent = exp;
  return p;
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("expression \"" + s + "\": " + why + " at position " + std::to_string(pos));
  }

  NodePtr parse_sum() {
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    } else if (peek() == '+') {
      ++pos;
    }
    NodePtr acc = parse_product();
    if (neg) acc = Node::make(Node::Kind::Neg, {acc});
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos;
      NodePtr rhs = parse_product();
      acc = Node::make(c == '+' ? Node::Kind::Add : Node::Kind::Sub, {acc, rhs});
    }
  }

  NodePtr parse_product() {
    NodePtr acc = parse_power();
    while (peek() == '*') {
      ++pos;
      acc = Node::make(Node::Kind::Mul, {acc, parse_power()});
    }
    return acc;
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (peek() != '^') return base;
    ++pos;
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent");
    long e = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      e = e * 10 + (s[pos] - '0');
      if (e > 1'000'000) fail("exponent too large");
      ++pos;
    }
    if (neg) fail("negative exponents are not supported");
    return Node::make(Node::Kind::Pow, {base}, e);
  }

  NodePtr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_sum();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Node::number(mpz_class(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
        ++pos;
      return Node::variable(s.substr(start, pos - start));
    }
    fail("unexpected character");
  }
};

}  // namespace

NodePtr parse(const std::string& text) {
  Parser p{text};
  NodePtr n = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return n;
}

std::string to_string(const NodePtr& n) {
  switch (n->kind) {
    case Node::Kind::Num: return n->num.get_str();
    case Node::Kind::Var: return n->var;
    case Node::Kind::Neg: return "-(" + to_string(n->kids[0]) + ")";
    case Node::Kind::Add: return "(" + to_string(n->kids[0]) + " + " + to_string(n->kids[1]) + ")";
    case Node::Kind::Sub: return "(" + to_string(n->kids[0]) + " - " + to_string(n->kids[1]) + ")";
    case Node::Kind::Mul: return "(" + to_string(n->kids[0]) + "*" + to_string(n->kids[1]) + ")";
    case Node::Kind::Pow: return "(" + to_string(n->kids[0]) + ")^" + std::to_string(n->exponent);
  }
  return "?";
}

}  // namespace exl::expr
