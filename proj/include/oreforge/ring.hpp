#pragma once

// PBW arithmetic for an iterated Ore extension and its localization at the
// powers of one generator.

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oreforge/element.hpp"
#include "oreforge/presentation.hpp"

namespace oreforge {

/// A coefficient times a formal word x_{l_1} x_{l_2} ... in any order.
struct RawTerm {
  CoeffRat coeff;
  std::vector<std::size_t> letters;
};
using RawSum = std::vector<RawTerm>;

enum class RewriteStrategy { LeftmostFirst, RightmostFirst };

/// Multiplication engine for a presentation. Products are built from left
/// multiplication by single generators, x_k m = sigma_k(m_<k) x_k m_>=k +
/// delta_k(m_<k) m_>=k, with memoized monomial products. Independently,
/// normal_form() reduces formal words by adjacent-pair rewriting.
///
/// Caches are guarded internally; a Ring may be shared between threads.
class Ring {
 public:
  explicit Ring(Presentation pres);
  explicit Ring(std::shared_ptr<const Presentation> pres);
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  const Presentation& presentation() const noexcept { return *pres_; }
  std::shared_ptr<const Presentation> presentation_ptr() const noexcept { return pres_; }
  std::size_t size() const noexcept { return pres_->size(); }

  Element zero() const { return Element(size()); }
  Element one() const { return Element::constant(size(), CoeffRat(1)); }
  Element constant(const CoeffRat& c) const { return Element::constant(size(), c); }
  Element generator(std::size_t i) const { return Element::generator(size(), i); }

  Element mul(const Element& a, const Element& b) const;
  Element pow(const Element& a, unsigned n) const;
  /// x_k * m.
  Element left_mul_generator(std::size_t k, const Monomial& m) const;
  Element mul_monomials(const Monomial& a, const Monomial& b) const;

  /// Eigenvalue of sigma_j on a monomial of R_{j-1}: prod_{i<j} lambda_{ji}^{m_i}.
  /// Negative exponents are allowed.
  CoeffRat sigma_eigenvalue(std::size_t j, const Monomial& m) const;
  /// sigma_j^power(a); `a` must lie in R_{j-1}.
  Element apply_sigma(std::size_t j, const Element& a, long power = 1) const;
  /// delta_j(a); `a` must lie in R_{j-1}.
  Element apply_delta(std::size_t j, const Element& a) const;
  Element apply_delta_power(std::size_t j, const Element& a, std::size_t n) const;
  Element delta_of_monomial(std::size_t j, const Monomial& m) const;
  /// h . a, scaling each monomial by its character value.
  Element apply_torus(const TorusElement& h, const Element& a) const;
  /// Largest s <= bound with delta_j^s(a) != 0; ResourceError past the bound.
  std::size_t delta_nilpotence_order(std::size_t j, const Element& a, std::size_t bound) const;

  /// Reduces formal words to PBW form by rewriting adjacent descents
  /// x_a x_b (a > b) to lambda_{ab} x_b x_a + delta_a(x_b).
  Element normal_form(const RawSum& raw, RewriteStrategy strategy = RewriteStrategy::LeftmostFirst) const;

  /// Parses the element grammar and normal-forms the result.
  Element parse(std::string_view text) const;
  std::string format(const Element& e) const { return e.to_string(pres_->names()); }

  /// Abort products whose result exceeds `limit` terms (0 disables).
  void set_term_limit(std::size_t limit) { term_limit_ = limit; }
  std::size_t term_limit() const { return term_limit_; }
  void check_term_limit(std::size_t terms) const;

 private:
  using Key = std::pair<std::size_t, Monomial>;

  std::shared_ptr<const Presentation> pres_;
  std::atomic<std::size_t> term_limit_{0};
  mutable std::mutex mutex_;
  mutable std::map<Key, Element> left_cache_;
  mutable std::map<Key, Element> delta_cache_;
  mutable std::map<std::pair<Monomial, Monomial>, Element> product_cache_;
};

/// The localization R S^{-1}, S = {X^n}, X = x_j. Terms carry a possibly
/// negative exponent at j. Generators above j may appear only when their
/// delta vanishes on x_1..x_j; multiplying by any other one throws
/// PreconditionError.
class Localization {
 public:
  Localization(const Ring& ring, std::size_t inverted, std::size_t bound);
  Localization(const Localization&) = delete;
  Localization& operator=(const Localization&) = delete;

  const Ring& ring() const noexcept { return ring_; }
  std::size_t inverted() const noexcept { return j_; }
  std::size_t size() const noexcept { return ring_.size(); }

  LaurentElement lift(const Element& e) const { return LaurentElement::from(e, j_); }
  /// X^k for any integer k.
  LaurentElement power(long k) const;
  LaurentElement mul(const LaurentElement& a, const LaurentElement& b) const;
  LaurentElement apply_torus(const TorusElement& h, const LaurentElement& a) const;

  /// X^{-1} b for b a monomial of R_{j-1}, via
  /// X^{-1} sigma(a) = a X^{-1} - X^{-1} delta(a) X^{-1}.
  LaurentElement inverse_times(const Monomial& b) const;

  LaurentElement parse(std::string_view text) const;
  std::string format(const LaurentElement& e) const { return e.to_string(ring_.presentation().names()); }

 private:
  LaurentElement left_mul_letter(std::size_t k, int sign, const Monomial& n) const;
  LaurentElement mul_monomials(const Monomial& a, const Monomial& b) const;
  LaurentElement inverse_times_impl(const Monomial& b, std::size_t depth) const;
  bool generator_allowed(std::size_t k) const;

  const Ring& ring_;
  std::size_t j_;
  std::size_t bound_;
  std::vector<bool> allowed_;
  mutable std::mutex mutex_;
  mutable std::map<Monomial, LaurentElement> inverse_cache_;
  mutable std::map<std::pair<Monomial, Monomial>, LaurentElement> product_cache_;
};

/// Leading monomial for the order (weighted degree, then lexicographic).
/// In a tower whose filtration degrees satisfy the graded condition this
/// order is multiplicative, so leading terms divide exactly.
const Monomial& leading_monomial(const Element& a, std::span<const int> degrees);

/// P with P * x = y, or nullopt when x does not right-divide y.
std::optional<Element> divide_right(const Ring& ring, const Element& y, const Element& x,
                                    std::span<const int> degrees);
/// E with x * E = y, or nullopt.
std::optional<Element> divide_left(const Ring& ring, const Element& x, const Element& y,
                                   std::span<const int> degrees);

/// Words of a RawSum built from an element's PBW monomials.
RawSum to_raw(const Element& e);

}  // namespace oreforge
