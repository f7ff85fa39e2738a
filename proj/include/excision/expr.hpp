#pragma once
// Tiny arithmetic-expression AST shared by the ring presentation parsers.
// Multiplication order is preserved, so the same trees serve commutative
// polynomial relations and noncommutative rewrite rules.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace exl::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Num, Var, Add, Sub, Neg, Mul, Pow };
  Kind kind;
  mpz_class num;            // Num
  std::string var;          // Var
  std::vector<NodePtr> kids;
  long exponent = 0;        // Pow: kids[0] ^ exponent

  static NodePtr number(mpz_class n);
  static NodePtr variable(std::string v);
  static NodePtr make(Kind k, std::vector<NodePtr> kids, long exp = 0);
};

// Grammar: sum of products; '^' binds tightest, then unary minus, '*', '+'/'-'.
// Products require explicit '*'. Variables are [A-Za-z_][A-Za-z0-9_']*.
NodePtr parse(const std::string& text);

std::string to_string(const NodePtr& n);

}  // namespace exl::expr
