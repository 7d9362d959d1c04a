#pragma once

// Normal H-eigenvectors, fractions with normal denominators, and the
// inner-derivation element d.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oreforge/element.hpp"
#include "oreforge/presentation.hpp"

namespace oreforge {

class Ring;

/// x with x x_i = p_i x for every generator x_i of R_within.
struct NormalCertificate {
  Element element;
  std::vector<Element> conjugation;
  Weight eigen_weight;
  /// Number of leading generators of the subalgebra the certificate is for.
  std::size_t within = 0;

  nlohmann::json to_json(const std::vector<std::string>& names) const;
};

/// den^{-1} num with den certified normal.
struct FractionElement {
  Element den;
  Element num;
  NormalCertificate den_certificate;

  std::string to_string(const std::vector<std::string>& names) const;
};

/// Decides normality of x in R_within (default: all of R) by solving
/// x g = p x and g x = x p' for each generator g with p, p' supported in
/// weighted degree <= deg(xg) - deg(x). Returns nullopt when some system has
/// no solution; `failure` then names the generator. ResourceError if the
/// degree of the unknowns would exceed degree_bound.
std::optional<NormalCertificate> verify_normal(const Ring& ring, const Element& x, std::size_t degree_bound,
                                               std::size_t within = 0, std::string* failure = nullptr);

/// x = theta(a) X^s for a normal H-eigenvector a of R_{N-1} and X = x_N,
/// certified normal in R together with x X = eta^{-1} X x, eta = chi_a(h_N).
/// Throws PreconditionError if a is not a normal eigenvector of R_{N-1} and
/// VerificationError if a constructed identity fails.
NormalCertificate construct_normal(const Ring& ring, const Element& a, std::size_t bound);

/// eta = chi_a(h_N) for an eigenvector a.
CoeffRat eta_of(const Presentation& pres, const Element& a);

/// d = eta^{-1} (lambda^s - 1)^{-1} a^{-1} delta(a), lambda = q_N, after
/// checking delta(a) a = eta lambda^s a delta(a). Throws PreconditionError
/// when delta(a) = 0.
FractionElement inner_d_from_normal(const Ring& ring, const Element& a, std::size_t bound);

/// d = (lambda - 1)(1 - lambda^n)^{-1} a^{-1} c for f = a X^n + c X^{n-1} + ...
FractionElement inner_d_from_monic(const Ring& ring, const Element& a, const Element& c, unsigned n);

/// delta(r) = d r - sigma(r) d for every generator r of R_{N-1}, checked as
/// den delta(r) = num r - tau(sigma(r)) num with tau the conjugation by den.
bool verify_inner(const Ring& ring, const FractionElement& d);

/// den^{-1} num == den'^{-1} num'.
bool fractions_equal(const Ring& ring, const FractionElement& a, const FractionElement& b);

enum class RicVerdict { Consistent, HypothesisNotSatisfied, Counterexample };
enum class Side { Left, Right };

std::string to_string(RicVerdict v);

/// If delta_j(c) = c e (Side::Right) or e c (Side::Left), then delta_j(c)
/// must vanish.
RicVerdict ric_check(const Ring& ring, std::size_t j, const Element& c, const Element& e, Side side,
                     std::size_t bound);

/// Exponents a with |a_t| <= max_abs such that h = (q^{a_1}, ..., q^{a_d})
/// acts on each generator as conjugation by the certified element, if any.
std::optional<std::vector<int>> torus_conjugation_match(const Presentation& pres, const NormalCertificate& cert,
                                                        int max_abs = 3);

}  // namespace oreforge
