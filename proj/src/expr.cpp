#include "oreforge/expr.hpp"

#include <cctype>
#include <vector>

#include "oreforge/errors.hpp"

namespace oreforge::expr {

namespace {

struct Token {
  enum class Kind { Integer, Param, Generator, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::size_t position;
  std::string text;
  std::size_t generator = 0;
};

// Splits an identifier run into generator names by longest match.
void split_identifier(std::string_view run, std::size_t position, std::span<const std::string> generators,
                      std::vector<Token>& out) {
  if (run == "q") {
    out.push_back({Token::Kind::Param, position, "q"});
    return;
  }
  std::size_t offset = 0;
  while (offset < run.size()) {
    std::size_t best_len = 0;
    std::size_t best = 0;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const std::string& name = generators[g];
      if (name.size() > best_len && run.substr(offset, name.size()) == name) {
        best_len = name.size();
        best = g;
      }
    }
    if (best_len == 0) {
      throw ParseError("unknown identifier '" + std::string(run.substr(offset)) + "'", position + offset);
    }
    out.push_back({Token::Kind::Generator, position + offset, std::string(run.substr(offset, best_len)), best});
    offset += best_len;
  }
}

std::vector<Token> tokenize(std::string_view text, std::span<const std::string> generators) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tokens.push_back({Token::Kind::Integer, i, std::string(text.substr(i, j - i))});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      split_identifier(text.substr(i, j - i), i, generators, tokens);
      i = j;
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case '+': kind = Token::Kind::Plus; break;
      case '-': kind = Token::Kind::Minus; break;
      case '*': kind = Token::Kind::Star; break;
      case '/': kind = Token::Kind::Slash; break;
      case '^': kind = Token::Kind::Caret; break;
      case '(': kind = Token::Kind::LParen; break;
      case ')': kind = Token::Kind::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    tokens.push_back({kind, i, std::string(1, c)});
    ++i;
  }
  tokens.push_back({Token::Kind::End, text.size(), ""});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  NodePtr parse_all() {
    NodePtr node = parse_expr();
    if (peek().kind != Token::Kind::End) throw ParseError("unexpected '" + peek().text + "'", peek().position);
    return node;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  static NodePtr binary(Node::Kind kind, std::size_t position, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_unique<Node>();
    node->kind = kind;
    node->position = position;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      const Token& op = next();
      NodePtr rhs = parse_term();
      lhs = binary(op.kind == Token::Kind::Plus ? Node::Kind::Add : Node::Kind::Sub, op.position,
                   std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  NodePtr parse_term() {
    bool word_tail = false;
    NodePtr lhs = parse_factor(word_tail);
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Star || t.kind == Token::Kind::Slash) {
        next();
        NodePtr rhs = parse_factor(word_tail);
        lhs = binary(t.kind == Token::Kind::Star ? Node::Kind::Mul : Node::Kind::Div, t.position,
                     std::move(lhs), std::move(rhs));
      } else if (t.kind == Token::Kind::Generator && word_tail) {
        NodePtr rhs = parse_factor(word_tail);
        lhs = binary(Node::Kind::Mul, t.position, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  // `word_tail` reports whether the factor was a (powered) generator, which
  // is the only case where a following generator juxtaposes.
  NodePtr parse_factor(bool& word_tail) {
    const std::size_t start = peek().position;
    bool negate = false;
    if (peek().kind == Token::Kind::Minus) {
      next();
      negate = true;
    }
    NodePtr node = parse_atom();
    word_tail = node->kind == Node::Kind::Generator;
    if (peek().kind == Token::Kind::Caret) {
      const Token& caret = next();
      bool negative = false;
      if (peek().kind == Token::Kind::Minus) {
        next();
        negative = true;
      }
      if (peek().kind != Token::Kind::Integer) throw ParseError("expected integer exponent", peek().position);
      const Token& digits = next();
      BigInt value(digits.text);
      if (!value.fits_slong_p()) throw ParseError("exponent too large", digits.position);
      auto pow = std::make_unique<Node>();
      pow->kind = Node::Kind::Pow;
      pow->position = caret.position;
      pow->exponent = negative ? -value.get_si() : value.get_si();
      pow->lhs = std::move(node);
      node = std::move(pow);
    }
    if (negate) {
      auto neg = std::make_unique<Node>();
      neg->kind = Node::Kind::Neg;
      neg->position = start;
      neg->lhs = std::move(node);
      node = std::move(neg);
    }
    return node;
  }

  NodePtr parse_atom() {
    const Token& t = next();
    auto node = std::make_unique<Node>();
    node->position = t.position;
    switch (t.kind) {
      case Token::Kind::Integer:
        node->kind = Node::Kind::Integer;
        node->integer = BigInt(t.text);
        return node;
      case Token::Kind::Param:
        node->kind = Node::Kind::Param;
        return node;
      case Token::Kind::Generator:
        node->kind = Node::Kind::Generator;
        node->generator = t.generator;
        return node;
      case Token::Kind::LParen: {
        NodePtr inner = parse_expr();
        if (peek().kind != Token::Kind::RParen) throw ParseError("expected ')'", peek().position);
        next();
        return inner;
      }
      case Token::Kind::End:
        throw ParseError("unexpected end of input", t.position);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.position);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

NodePtr parse(std::string_view text, std::span<const std::string> generators) {
  return Parser(tokenize(text, generators)).parse_all();
}

CoeffRat evaluate_coeff(const Node& node) {
  switch (node.kind) {
    case Node::Kind::Integer: return CoeffRat(BigRational(node.integer));
    case Node::Kind::Param: return CoeffRat::q();
    case Node::Kind::Generator: throw ParseError("generator in coefficient expression", node.position);
    case Node::Kind::Neg: return -evaluate_coeff(*node.lhs);
    case Node::Kind::Add: return evaluate_coeff(*node.lhs) + evaluate_coeff(*node.rhs);
    case Node::Kind::Sub: return evaluate_coeff(*node.lhs) - evaluate_coeff(*node.rhs);
    case Node::Kind::Mul: return evaluate_coeff(*node.lhs) * evaluate_coeff(*node.rhs);
    case Node::Kind::Div: {
      CoeffRat d = evaluate_coeff(*node.rhs);
      if (d.is_zero()) throw MathError("division by zero in expression at offset " + std::to_string(node.position));
      return evaluate_coeff(*node.lhs) / d;
    }
    case Node::Kind::Pow: {
      CoeffRat base = evaluate_coeff(*node.lhs);
      if (base.is_zero() && node.exponent < 0)
        throw MathError("zero raised to a negative power at offset " + std::to_string(node.position));
      return base.pow(node.exponent);
    }
  }
  return CoeffRat();
}

}  // namespace oreforge::expr
