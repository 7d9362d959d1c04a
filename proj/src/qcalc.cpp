#include "oreforge/qcalc.hpp"

#include "oreforge/errors.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

CoeffRat q_int(unsigned m, const CoeffRat& base) {
  if (m == 0) return CoeffRat(0);
  if (m == 1) return CoeffRat(1);
  if (base.is_one()) throw MathError("(m)_q with base 1 is outside the formula's domain");
  return (base.pow(m) - CoeffRat(1)) / (base - CoeffRat(1));
}

CoeffRat q_factorial(unsigned m, const CoeffRat& base) {
  CoeffRat value(1);
  for (unsigned k = 2; k <= m; ++k) value *= q_int(k, base);
  return value;
}

CoeffRat q_binomial(unsigned n, unsigned i, const CoeffRat& base) {
  if (i > n) throw PreconditionError("q_binomial needs i <= n");
  const CoeffRat den = q_factorial(i, base) * q_factorial(n - i, base);
  if (den.is_zero()) throw MathError("q-factorial vanishes: base is a root of unity");
  return q_factorial(n, base) / den;
}

CoeffRat QBinomTable::operator()(unsigned n, unsigned i) const {
  const auto key = std::make_pair(n, i);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  CoeffRat value = q_binomial(n, i, base_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

LeibnizOutcome q_leibniz(const Ring& ring, std::size_t j, const Element& e, const Element& f, unsigned n) {
  if (j == 0 || j >= ring.size()) throw PreconditionError("q_leibniz needs a level j >= 2");
  if (!e.involves_only_below(j) || !f.involves_only_below(j))
    throw PreconditionError("q_leibniz arguments must lie in the coefficient subalgebra");
  const QBinomTable binom(ring.presentation().q(j).inverse());
  LeibnizOutcome out;

  std::vector<Element> de{e};
  std::vector<Element> df{f};
  for (unsigned k = 1; k <= n; ++k) {
    de.push_back(ring.apply_delta(j, de.back()));
    df.push_back(ring.apply_delta(j, df.back()));
  }

  RawSum ef_words;
  for (const auto& te : to_raw(e))
    for (const auto& tf : to_raw(f)) {
      RawTerm t{te.coeff * tf.coeff, te.letters};
      t.letters.insert(t.letters.end(), tf.letters.begin(), tf.letters.end());
      ef_words.push_back(std::move(t));
    }
  const Element lhs1 = ring.apply_delta_power(j, ring.normal_form(ef_words), n);
  Element rhs1 = ring.zero();
  for (unsigned i = 0; i <= n; ++i)
    rhs1 += binom(n, i) * ring.mul(ring.apply_sigma(j, de[i], n - i), df[n - i]);
  out.derivation_rule = lhs1 == rhs1;
  if (!out.derivation_rule) out.detail = "delta^n(ef): " + ring.format(lhs1) + " vs " + ring.format(rhs1);

  RawSum xe_words;
  for (auto t : to_raw(e)) {
    t.letters.insert(t.letters.begin(), n, j);
    xe_words.push_back(std::move(t));
  }
  const Element lhs2 = ring.normal_form(xe_words);
  Element rhs2 = ring.zero();
  for (unsigned i = 0; i <= n; ++i) {
    Monomial xp(ring.size(), 0);
    xp[j] = static_cast<int>(n - i);
    rhs2 += binom(n, i) * ring.mul(ring.apply_sigma(j, de[i], n - i), Element::monomial(xp));
  }
  out.power_rule = lhs2 == rhs2;
  if (!out.power_rule) {
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "X^n e: " + ring.format(lhs2) + " vs " + ring.format(rhs2);
  }
  return out;
}

bool verify_q_leibniz(const Ring& ring, const Element& e, const Element& f, unsigned n) {
  return q_leibniz(ring, ring.size() - 1, e, f, n).passed();
}

}  // namespace oreforge
