#pragma once

// Evaluation of element expressions over a ring-like domain.

#include <optional>
#include <string>

#include "oreforge/errors.hpp"
#include "oreforge/expr.hpp"

namespace oreforge::detail {

// Domain provides: Value constant(CoeffRat), generator(index),
// mul(Value, Value), pow_generator(index, long exponent, position),
// std::optional<CoeffRat> scalar(const Value&).
template <class Domain>
typename Domain::Value evaluate(const expr::Node& node, const Domain& dom) {
  using Kind = expr::Node::Kind;
  switch (node.kind) {
    case Kind::Integer: return dom.constant(CoeffRat(BigRational(node.integer)));
    case Kind::Param: return dom.constant(CoeffRat::q());
    case Kind::Generator: return dom.generator(node.generator);
    case Kind::Neg: return -evaluate(*node.lhs, dom);
    case Kind::Add: return evaluate(*node.lhs, dom) + evaluate(*node.rhs, dom);
    case Kind::Sub: return evaluate(*node.lhs, dom) - evaluate(*node.rhs, dom);
    case Kind::Mul: return dom.mul(evaluate(*node.lhs, dom), evaluate(*node.rhs, dom));
    case Kind::Div: {
      auto rhs = evaluate(*node.rhs, dom);
      std::optional<CoeffRat> s = dom.scalar(rhs);
      if (!s) throw ParseError("division by a non-scalar", node.position);
      if (s->is_zero()) throw MathError("division by zero in expression at offset " + std::to_string(node.position));
      return evaluate(*node.lhs, dom) * s->inverse();
    }
    case Kind::Pow: {
      if (node.lhs->kind == Kind::Generator) return dom.pow_generator(node.lhs->generator, node.exponent, node.position);
      auto base = evaluate(*node.lhs, dom);
      if (std::optional<CoeffRat> s = dom.scalar(base)) {
        if (s->is_zero() && node.exponent < 0)
          throw MathError("zero raised to a negative power at offset " + std::to_string(node.position));
        return dom.constant(s->pow(node.exponent));
      }
      if (node.exponent < 0) throw ParseError("negative power of a non-invertible element", node.position);
      auto result = dom.constant(CoeffRat(1));
      for (long k = 0; k < node.exponent; ++k) result = dom.mul(result, base);
      return result;
    }
  }
  throw ParseError("bad expression", node.position);
}

}  // namespace oreforge::detail
