#pragma once

// The Cauchon map theta : R_{j-1} -> R[x_j^{-1}] and the deleting-derivations
// step built on it.

#include <cstddef>
#include <map>
#include <vector>

#include <json.hpp>

#include "oreforge/element.hpp"
#include "oreforge/presentation.hpp"
#include "oreforge/report.hpp"

namespace oreforge {

class Localization;

struct ThetaImage {
  Element input;
  LaurentElement value;
  /// Least s with value * X^s in R.
  std::size_t s_min = 0;
};

/// theta(a) = sum_l (1 - lambda)^{-l} / (l)!_lambda  delta^l sigma^{-l}(a) X^{-l}
/// with X the inverted generator x_j and lambda = q_j. s_min is found by
/// multiplying by powers of X and must equal the delta-nilpotence order of a
/// (VerificationError otherwise).
ThetaImage cauchon_theta(const Localization& loc, const Element& a, std::size_t bound);

/// theta(ab) == theta(a) theta(b).
bool verify_theta_homomorphism(const Localization& loc, const Element& a, const Element& b, std::size_t bound);

/// X theta(a) == eta theta(a) X with eta = chi_a(h_j). Throws
/// PreconditionError if a is not an H-eigenvector.
bool verify_alpha_commutation(const Localization& loc, const Element& a, std::size_t bound);

struct DeletionStep {
  Presentation before;
  Presentation after;
  std::size_t level = 0;
  /// theta(x_i) for i < level.
  std::map<std::size_t, ThetaImage> images;
  Report checks;
  bool trivial = true;

  nlohmann::json to_json() const;
};

/// Erases delta_j after verifying, in the localization at x_j, that the
/// images theta(x_i) satisfy the relations of the x_i, skew-commute with x_j
/// through alpha, and skew-commute with generators above j. Throws
/// VerificationError naming the first failed relation.
DeletionStep delete_top_derivation(const Presentation& pres, std::size_t j, std::size_t bound);

/// delete_top_derivation for j = N, N-1, ..., 2 on the running presentation.
std::vector<DeletionStep> deletion_sequence(const Presentation& pres, std::size_t bound);

}  // namespace oreforge
