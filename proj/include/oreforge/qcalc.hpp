#pragma once

// q-integers, q-factorials and q-binomial coefficients over Q(q), and the
// q-Leibniz identities for the top derivation of a tower.

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "oreforge/coeff.hpp"
#include "oreforge/element.hpp"

namespace oreforge {

class Ring;

/// (m)_b = (b^m - 1)/(b - 1). Throws MathError when b = 1 and m >= 2.
CoeffRat q_int(unsigned m, const CoeffRat& base);
/// (m)!_b = (m)_b (m-1)_b ... (1)_b.
CoeffRat q_factorial(unsigned m, const CoeffRat& base);
/// (n)!_b / ((i)!_b (n-i)!_b). Throws PreconditionError if i > n and
/// MathError if a factorial in the denominator vanishes.
CoeffRat q_binomial(unsigned n, unsigned i, const CoeffRat& base);

/// q-binomials for one base, memoized by (n, i).
class QBinomTable {
 public:
  explicit QBinomTable(CoeffRat base) : base_(std::move(base)) {}
  QBinomTable(const QBinomTable& o) : base_(o.base_), cache_(o.snapshot()) {}

  const CoeffRat& base() const noexcept { return base_; }
  CoeffRat operator()(unsigned n, unsigned i) const;

 private:
  std::map<std::pair<unsigned, unsigned>, CoeffRat> snapshot() const {
    std::lock_guard lock(mutex_);
    return cache_;
  }

  CoeffRat base_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<unsigned, unsigned>, CoeffRat> cache_;
};

struct LeibnizOutcome {
  bool derivation_rule = false;  // delta^n(ef) expansion
  bool power_rule = false;       // X^n e expansion
  std::string detail;

  bool passed() const { return derivation_rule && power_rule; }
};

/// Checks, for delta = delta_j, sigma = sigma_j and base lambda^{-1} with
/// lambda = q_j,
///   delta^n(ef) = sum_i binom(n,i) sigma^{n-i} delta^i(e) delta^{n-i}(f)
///   X^n e       = sum_i binom(n,i) sigma^{n-i} delta^i(e) X^{n-i}
/// The left sides come from word rewriting, the right sides from the
/// sigma/delta operators. e and f must lie in R_{j-1}.
LeibnizOutcome q_leibniz(const Ring& ring, std::size_t j, const Element& e, const Element& f, unsigned n);

/// q_leibniz at the top generator; true iff both identities hold.
bool verify_q_leibniz(const Ring& ring, const Element& e, const Element& f, unsigned n);

}  // namespace oreforge
