#pragma once

// Filtration degrees for which gr R is a quantum affine space.

#include <cstddef>
#include <string>
#include <vector>

#include "oreforge/element.hpp"
#include "oreforge/presentation.hpp"
#include "oreforge/report.hpp"

namespace oreforge {

class Ring;

struct FiltrationDegrees {
  std::vector<int> degrees;
};

/// True iff every monomial of delta_j(x_i) has weighted degree
/// < degrees[i] + degrees[j]. On failure `violation` names the worst pair.
bool filtration_valid(const Presentation& pres, const std::vector<int>& degrees, std::string* violation = nullptr);

/// Lexicographically least valid vector among those of minimal sum, searching
/// sums up to max_total. ResourceError if none exists in that range.
FiltrationDegrees find_filtration_degrees(const Presentation& pres, int max_total);

/// The stored "filtration" field if valid, otherwise a searched vector.
std::vector<int> filtration_for(const Presentation& pres);

/// Quantum affine space with the same lambda, all derivations erased.
Presentation associated_graded(const Presentation& pres, const FiltrationDegrees& degrees);

/// Terms of maximal weighted degree.
Element top_degree_part(const Element& a, std::span<const int> degrees);

struct GkResult {
  std::size_t dimension = 0;
  /// count[n] = number of PBW monomials of weighted degree <= n.
  std::vector<std::size_t> counts;
  Report report;
};

/// Reports N together with a growth-count sanity check for n <= max_n:
/// R_a R_b lies in R_{a+b} on low-degree monomial pairs, the monomial count
/// matches the graded algebra, and it is squeezed between two polynomials
/// of degree N.
GkResult gk_dimension(const Ring& ring, std::size_t max_n = 8);

}  // namespace oreforge
