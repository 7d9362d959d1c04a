#include "oreforge/element.hpp"

#include <algorithm>
#include <sstream>

#include "oreforge/errors.hpp"

namespace oreforge {

long monomial_degree(const Monomial& m, std::span<const int> degrees) {
  long d = 0;
  for (std::size_t i = 0; i < m.size() && i < degrees.size(); ++i) d += static_cast<long>(m[i]) * degrees[i];
  return d;
}

Element Element::constant(std::size_t nvars, const CoeffRat& c) {
  Element e(nvars);
  e.add_term(Monomial(nvars, 0), c);
  return e;
}

Element Element::generator(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw PreconditionError("generator index out of range");
  Monomial m(nvars, 0);
  m[i] = 1;
  Element e(nvars);
  e.add_term(m, CoeffRat(1));
  return e;
}

Element Element::monomial(const Monomial& m, const CoeffRat& c) {
  for (int x : m)
    if (x < 0) throw PreconditionError("negative exponent in a polynomial monomial");
  Element e(m.size());
  e.add_term(m, c);
  return e;
}

Element Element::resized(std::size_t nvars) const {
  Element out(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial r(nvars, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i < nvars) {
        r[i] = m[i];
      } else if (m[i] != 0) {
        throw PreconditionError("element uses a generator outside the target ring");
      }
    }
    out.add_term(r, c);
  }
  return out;
}

long Element::weighted_degree(std::span<const int> degrees) const {
  if (is_zero()) throw PreconditionError("weighted degree of the zero element");
  long best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, monomial_degree(m, degrees));
  return best;
}

std::string Element::to_string(std::span<const std::string> names) const { return format_terms(terms_, names); }

LaurentElement LaurentElement::from(const Element& e, std::size_t inverted) {
  LaurentElement out(e.nvars(), inverted);
  for (const auto& [m, c] : e) out.add_term(m, c);
  return out;
}

int LaurentElement::min_inverted_exponent() const {
  int lowest = 0;
  bool any = false;
  for (const auto& [m, c] : terms_) {
    if (!any || m[inverted_] < lowest) lowest = m[inverted_];
    any = true;
  }
  return any ? lowest : 0;
}

std::optional<Element> LaurentElement::to_element() const {
  Element out(nvars_);
  for (const auto& [m, c] : terms_) {
    for (int x : m)
      if (x < 0) return std::nullopt;
    out.add_term(m, c);
  }
  return out;
}

std::string LaurentElement::to_string(std::span<const std::string> names) const {
  return format_terms(terms_, names);
}

namespace {

std::string word(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

std::string format_terms(const std::map<Monomial, CoeffRat>& terms, std::span<const std::string> names) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, coeff] = *it;
    CoeffRat c = coeff;
    const bool negative = c.sign() < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const std::string w = word(m, names);
    if (w.empty()) {
      std::string s = c.to_string();
      out << (c.needs_parentheses() && negative ? "(" + s + ")" : s);
    } else if (c.is_one()) {
      out << w;
    } else {
      std::string s = c.to_string();
      if (c.needs_parentheses()) s = "(" + s + ")";
      out << s << "*" << w;
    }
  }
  return out.str();
}

}  // namespace oreforge
