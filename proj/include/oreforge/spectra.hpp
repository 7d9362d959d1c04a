#pragma once

// Finite posets, the H-prime lattice of a quantum affine space, and the
// height / catenarity / normal-separation checks on it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oreforge/presentation.hpp"
#include "oreforge/report.hpp"

namespace oreforge {

/// Finite poset kept as its Hasse diagram.
class FinitePoset {
 public:
  /// Adds an element if absent; returns its index.
  std::size_t add(const std::string& label);
  /// Declares a < b. Relations are reduced to covers by finalize().
  void relate(std::size_t a, std::size_t b);
  /// Computes the order and the cover relation; throws PreconditionError on
  /// a cycle.
  void finalize();

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> find(const std::string& label) const;
  bool less(std::size_t a, std::size_t b) const { return order_[a][b]; }
  const std::vector<std::size_t>& covers(std::size_t a) const { return covers_[a]; }

  /// Parses lines "a < b"; blank lines and '#' comments are skipped.
  static FinitePoset parse(std::string_view text);
  std::string to_text() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> relations_;
  std::vector<std::vector<bool>> order_;
  std::vector<std::vector<std::size_t>> covers_;
};

/// The boolean lattice of vanishing sets W of {1..N}; element k is the subset
/// with bitmask k.
struct HPrimePoset {
  std::size_t n = 0;
  FinitePoset poset;
};

/// Throws PreconditionError if a derivation is present or a lambda entry is
/// not of the form +-q^k ("unsupported torus").
HPrimePoset hprime_poset(const Presentation& qaff);

struct GkHeight {
  std::size_t gk = 0;
  std::size_t height = 0;
};

GkHeight gk_and_height(const HPrimePoset& hp, std::uint32_t w);

/// height(W) + GK(R/W) = N for every W, and height(W'/W) + GK(W') = GK(W) for
/// every W in W'.
Report tauvel_check(const Presentation& qaff);

struct ChainWitness {
  std::size_t low = 0;
  std::size_t high = 0;
  std::vector<std::size_t> shorter;
  std::vector<std::size_t> longer;
};

struct CatenaryResult {
  bool catenary = true;
  std::optional<ChainWitness> witness;
};

CatenaryResult catenary_check(const FinitePoset& poset);

/// For each W strictly inside W', x_j with j the least index in W' \ W is
/// normal in the quantum affine space on the generators outside W.
Report normal_separation_check(const Presentation& qaff);

}  // namespace oreforge
