#pragma once

// Sparse ring elements keyed by PBW exponent vectors x_1^{e_1} ... x_N^{e_N}.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oreforge/coeff.hpp"

namespace oreforge {

/// Exponent vector in the PBW order. Entries are nonnegative except the
/// inverted coordinate of a LaurentElement.
using Monomial = std::vector<int>;

/// Weighted total degree sum e_i * degrees[i].
long monomial_degree(const Monomial& m, std::span<const int> degrees);

/// Shared storage and linear structure for Element and LaurentElement.
template <class Derived>
class SparseSum {
 public:
  using Terms = std::map<Monomial, CoeffRat>;

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  CoeffRat coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CoeffRat() : it->second;
  }

  void add_term(const Monomial& m, const CoeffRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// True when every term uses only generators with index < j.
  bool involves_only_below(std::size_t j) const {
    for (const auto& [m, c] : terms_)
      for (std::size_t i = j; i < m.size(); ++i)
        if (m[i] != 0) return false;
    return true;
  }

  Derived& operator+=(const Derived& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return self();
  }
  Derived& operator-=(const Derived& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return self();
  }
  Derived& operator*=(const CoeffRat& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else if (!s.is_one()) {
      for (auto& [m, c] : terms_) c *= s;
    }
    return self();
  }

  friend Derived operator+(Derived a, const Derived& b) { return a += b; }
  friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
  friend Derived operator*(const CoeffRat& s, Derived a) { return a *= s; }
  friend Derived operator*(Derived a, const CoeffRat& s) { return a *= s; }
  Derived operator-() const {
    Derived r = self();
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend bool operator==(const SparseSum& a, const SparseSum& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 protected:
  explicit SparseSum(std::size_t nvars) : nvars_(nvars) {}

  Derived& self() { return static_cast<Derived&>(*this); }
  const Derived& self() const { return static_cast<const Derived&>(*this); }

  std::size_t nvars_;
  Terms terms_;
};

/// Element of an iterated Ore extension, stored in PBW normal form.
class Element : public SparseSum<Element> {
 public:
  explicit Element(std::size_t nvars) : SparseSum(nvars) {}

  static Element constant(std::size_t nvars, const CoeffRat& c);
  static Element generator(std::size_t nvars, std::size_t i);
  static Element monomial(const Monomial& m, const CoeffRat& c = CoeffRat(1));

  /// Same terms over `nvars` generators; dropped coordinates must be zero.
  Element resized(std::size_t nvars) const;

  /// Weighted degree of the highest term; throws PreconditionError on zero.
  long weighted_degree(std::span<const int> degrees) const;

  /// Printed in PBW order, highest monomial (lexicographic) first.
  std::string to_string(std::span<const std::string> names) const;
};

/// Element of the localization at one generator: terms may carry a negative
/// exponent at `inverted()`, written in left form sum a_l X^l.
class LaurentElement : public SparseSum<LaurentElement> {
 public:
  LaurentElement(std::size_t nvars, std::size_t inverted) : SparseSum(nvars), inverted_(inverted) {}

  static LaurentElement from(const Element& e, std::size_t inverted);

  std::size_t inverted() const noexcept { return inverted_; }
  /// Smallest exponent of the inverted generator (0 for zero).
  int min_inverted_exponent() const;
  bool is_polynomial() const { return min_inverted_exponent() >= 0; }
  /// The underlying Element, if no exponent is negative.
  std::optional<Element> to_element() const;

  std::string to_string(std::span<const std::string> names) const;

  friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
    return a.inverted_ == b.inverted_ && static_cast<const SparseSum<LaurentElement>&>(a) ==
                                             static_cast<const SparseSum<LaurentElement>&>(b);
  }

 private:
  std::size_t inverted_;
};

/// Renders sum c_m * word(m) in the element expression grammar.
std::string format_terms(const std::map<Monomial, CoeffRat>& terms, std::span<const std::string> names);

}  // namespace oreforge
