#pragma once

// Finite description of an iterated skew polynomial tower with a torus action,
// and the checks that it is a CGL extension.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oreforge/coeff.hpp"
#include "oreforge/element.hpp"
#include "oreforge/report.hpp"

namespace oreforge {

struct TorusElement;

/// Character of the torus (K^x)^d, h -> prod_t h_t^{exponents[t]}.
struct Weight {
  std::vector<int> exponents;

  CoeffRat evaluate(const TorusElement& h) const;

  Weight& operator+=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  Weight scaled(int k) const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Point of the torus: d nonzero coordinates.
struct TorusElement {
  std::vector<CoeffRat> coordinates;

  static TorusElement identity(std::size_t d);
  friend bool operator==(const TorusElement&, const TorusElement&) = default;
};

/// Generator pair (j, i) with i < j, zero-based.
using DeltaKey = std::pair<std::size_t, std::size_t>;

/// Immutable presentation R = K[x_1][x_2; s_2, d_2] ... [x_N; s_N, d_N].
/// sigma_j is diagonal: sigma_j(x_i) = lambda(j, i) x_i for i < j. Indices
/// are zero-based throughout the C++ interface.
class Presentation {
 public:
  struct Data {
    std::string name;
    std::size_t torus_rank = 0;
    std::vector<std::string> names;
    std::vector<std::vector<CoeffRat>> lambda;
    std::map<DeltaKey, Element> delta;
    std::vector<Weight> weights;
    std::vector<TorusElement> h;
    std::optional<std::vector<int>> filtration;
  };

  /// Checks only shapes (sizes, index ranges, element arity); the CGL axioms
  /// are checked by validate_structure. Throws PreconditionError.
  explicit Presentation(Data data);

  const Data& data() const noexcept { return data_; }
  const std::string& name() const noexcept { return data_.name; }
  std::size_t size() const noexcept { return data_.names.size(); }
  std::size_t torus_rank() const noexcept { return data_.torus_rank; }
  const std::vector<std::string>& names() const noexcept { return data_.names; }
  const CoeffRat& lambda(std::size_t i, std::size_t j) const { return data_.lambda[i][j]; }
  const std::vector<Weight>& weights() const noexcept { return data_.weights; }
  const std::vector<TorusElement>& h() const noexcept { return data_.h; }
  const std::map<DeltaKey, Element>& delta_entries() const noexcept { return data_.delta; }
  const std::optional<std::vector<int>>& filtration() const noexcept { return data_.filtration; }

  /// delta_j(x_i), or nullptr when it is zero.
  const Element* delta(std::size_t j, std::size_t i) const;
  bool has_delta(std::size_t j) const;
  bool has_any_delta() const { return !data_.delta.empty(); }

  /// q_j = chi_{x_j}(h_j).
  const CoeffRat& q(std::size_t j) const { return q_[j]; }

  /// H-weight of a monomial (negative exponents allowed).
  Weight weight_of(const Monomial& m) const;
  /// chi_{x_i}(h).
  CoeffRat character(std::size_t i, const TorusElement& h) const;

  /// Index of a generator name, if present.
  std::optional<std::size_t> index_of(const std::string& name) const;

 private:
  Data data_;
  std::vector<CoeffRat> q_;
};

/// Checks the structural CGL conditions: skew-symmetric lambda, h_j realizes
/// sigma_j, q_j not a root of unity, delta support and H-weights.
Report validate_structure(const Presentation& pres);

struct NilpotenceReport {
  Report report;
  /// s(j, i): largest s with delta_j^s(x_i) != 0.
  std::map<DeltaKey, std::size_t> orders;
};

NilpotenceReport verify_local_nilpotence(const Presentation& pres, std::size_t bound);

/// sigma_j delta_j(x_i) = q_j delta_j sigma_j(x_i) for all i < j.
bool verify_sigma_delta_relation(const Presentation& pres);
Report sigma_delta_report(const Presentation& pres);

/// Reduces every cubic overlap x_k x_j x_i under both reduction orders, and
/// random words of length <= degree_bound under both strategies and the
/// multiplication engine.
Report verify_confluence(const Presentation& pres, std::size_t degree_bound, std::uint64_t seed,
                         std::size_t random_words = 24);

/// The tower on the first `count` generators (1 <= count <= N).
Presentation subalgebra(const Presentation& pres, std::size_t count);

/// Copy with delta_j erased on every lower generator.
Presentation without_delta(const Presentation& pres, std::size_t j);

/// Quantum affine space O_lambda(K^N) with the natural rank-N torus.
Presentation quantum_affine(std::string name, std::vector<std::string> names,
                            std::vector<std::vector<CoeffRat>> lambda);

/// All checks run by `check`: structure, nilpotence, sigma/delta relation,
/// confluence, plus a consistency entry tying the first three together.
Report check_presentation(const Presentation& pres, std::size_t bound, std::uint64_t seed);

/// The H-weight shared by all terms of `a`, if `a` is a nonzero eigenvector.
std::optional<Weight> eigen_weight(const Presentation& pres, const Element& a);

// File format ---------------------------------------------------------------

/// Generator pair indices in the file are one-based.
Presentation presentation_from_json(const nlohmann::json& doc);
nlohmann::json presentation_to_json(const Presentation& pres);
Presentation load_presentation(const std::string& path);

/// Iteration bound: ORE_FORGE_BOUND if set, else 32.
std::size_t default_bound();

}  // namespace oreforge
