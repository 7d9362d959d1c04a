#pragma once

// Recursive-descent parser shared by coefficient and element expressions.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor | word-factor)*
//   factor := ['-'] atom ['^' signed_int]
//   atom   := 'q' | integer | generator | '(' expr ')'
//
// Juxtaposition is multiplication only between generator factors
// ("x12x21", "x1 x2^3"); identifier runs are split into generator names by
// longest match.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "oreforge/coeff.hpp"

namespace oreforge::expr {

struct Node {
  enum class Kind { Integer, Param, Generator, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind;
  std::size_t position = 0;
  BigInt integer;             // Kind::Integer
  std::size_t generator = 0;  // Kind::Generator
  long exponent = 0;          // Kind::Pow
  std::unique_ptr<Node> lhs;  // unary operand, or left operand
  std::unique_ptr<Node> rhs;
};

using NodePtr = std::unique_ptr<Node>;

/// Parses `text`. Identifiers must be "q" or split into the given generator
/// names; anything else is a ParseError.
NodePtr parse(std::string_view text, std::span<const std::string> generators = {});

/// Evaluates a tree with no generator leaves in Q(q).
CoeffRat evaluate_coeff(const Node& node);

}  // namespace oreforge::expr
