#include "oreforge/ring.hpp"

#include "eval_detail.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/expr.hpp"

namespace oreforge {

namespace {

std::size_t last_letter(const Monomial& m) {
  for (std::size_t i = m.size(); i-- > 0;)
    if (m[i] != 0) return i;
  return m.size();
}

std::size_t first_letter(const Monomial& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) return i;
  return m.size();
}

}  // namespace

Localization::Localization(const Ring& ring, std::size_t inverted, std::size_t bound)
    : ring_(ring), j_(inverted), bound_(bound), allowed_(ring.size(), true) {
  if (j_ >= ring.size()) throw PreconditionError("inverted generator out of range");
  const Presentation& pres = ring.presentation();
  for (std::size_t k = j_ + 1; k < ring.size(); ++k)
    for (std::size_t i = 0; i <= j_; ++i)
      if (pres.delta(k, i)) allowed_[k] = false;
}

bool Localization::generator_allowed(std::size_t k) const { return k <= j_ || allowed_[k]; }

LaurentElement Localization::power(long k) const {
  Monomial m(size(), 0);
  m[j_] = static_cast<int>(k);
  LaurentElement r(size(), j_);
  r.add_term(m, CoeffRat(1));
  return r;
}

LaurentElement Localization::inverse_times(const Monomial& b) const { return inverse_times_impl(b, 0); }

LaurentElement Localization::inverse_times_impl(const Monomial& b, std::size_t depth) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = inverse_cache_.find(b); it != inverse_cache_.end()) return it->second;
  }
  if (depth > bound_)
    throw ResourceError("commuting X^-1 past a coefficient exceeded the nilpotence bound " + std::to_string(bound_));
  for (std::size_t i = j_; i < b.size(); ++i)
    if (b[i] != 0) throw PreconditionError("inverse_times expects a monomial of R_{j-1}");

  // X^{-1} b = sigma^{-1}(b) X^{-1} - X^{-1} delta(sigma^{-1}(b)) X^{-1}
  const CoeffRat inv_eig = ring_.sigma_eigenvalue(j_, b).inverse();
  LaurentElement result(size(), j_);
  Monomial lead = b;
  lead[j_] = -1;
  result.add_term(lead, inv_eig);
  for (const auto& [t, c] : ring_.delta_of_monomial(j_, b)) {
    for (const auto& [u, d] : inverse_times_impl(t, depth + 1)) {
      Monomial shifted = u;
      shifted[j_] -= 1;
      result.add_term(shifted, -inv_eig * c * d);
    }
  }
  ring_.check_term_limit(result.size());
  std::lock_guard lock(mutex_);
  return inverse_cache_.emplace(b, std::move(result)).first->second;
}

LaurentElement Localization::left_mul_letter(std::size_t k, int sign, const Monomial& n) const {
  const std::size_t N = size();
  Monomial low = n;
  Monomial rest = n;  // X^l and everything above j
  for (std::size_t i = 0; i < N; ++i) (i < j_ ? rest[i] : low[i]) = 0;
  LaurentElement result(N, j_);
  auto append = [&](const Monomial& u, const CoeffRat& c) {
    Monomial m = u;
    for (std::size_t i = j_; i < N; ++i) m[i] += rest[i];
    result.add_term(m, c);
  };

  if (k < j_) {
    for (const auto& [u, c] : ring_.left_mul_generator(k, low)) append(u, c);
  } else if (k == j_ && sign > 0) {
    // X u = sigma(u) X + delta(u)
    Monomial u = low;
    u[j_] = 1;
    append(u, ring_.sigma_eigenvalue(j_, low));
    for (const auto& [t, c] : ring_.delta_of_monomial(j_, low)) append(t, c);
  } else if (k == j_) {
    for (const auto& [u, c] : inverse_times(low)) append(u, c);
  } else {
    if (!generator_allowed(k))
      throw PreconditionError("generator " + ring_.presentation().names()[k] +
                              " has a derivation onto the inverted variable or below");
    // x_k skew-commutes with u X^l, then acts on the part above j in R.
    Monomial head = n;
    for (std::size_t i = j_ + 1; i < N; ++i) head[i] = 0;
    CoeffRat eig(1);
    for (std::size_t i = 0; i <= j_; ++i)
      if (head[i] != 0) eig *= ring_.presentation().lambda(k, i).pow(head[i]);
    Monomial upper = n;
    for (std::size_t i = 0; i <= j_; ++i) upper[i] = 0;
    for (const auto& [w, c] : ring_.left_mul_generator(k, upper)) {
      if (first_letter(w) > j_) {
        Monomial m = head;
        for (std::size_t i = j_ + 1; i < N; ++i) m[i] = w[i];
        result.add_term(m, eig * c);
      } else {
        for (const auto& [v, d] : mul_monomials(head, w)) result.add_term(v, eig * c * d);
      }
    }
  }
  return result;
}

LaurentElement Localization::mul_monomials(const Monomial& a, const Monomial& b) const {
  const std::size_t last = last_letter(a);
  const std::size_t first = first_letter(b);
  if (last == size() || first == size() || last <= first) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += b[i];
    LaurentElement r(size(), j_);
    r.add_term(m, CoeffRat(1));
    return r;
  }
  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    if (auto it = product_cache_.find(key); it != product_cache_.end()) return it->second;
  }
  const int sign = a[last] > 0 ? 1 : -1;
  Monomial prefix = a;
  prefix[last] -= sign;
  LaurentElement result(size(), j_);
  for (const auto& [u, c] : left_mul_letter(last, sign, b))
    for (const auto& [v, d] : mul_monomials(prefix, u)) result.add_term(v, c * d);
  ring_.check_term_limit(result.size());
  std::lock_guard lock(mutex_);
  return product_cache_.emplace(std::move(key), std::move(result)).first->second;
}

LaurentElement Localization::mul(const LaurentElement& a, const LaurentElement& b) const {
  if (a.inverted() != j_ || b.inverted() != j_) throw PreconditionError("mismatched inverted indices");
  if (a.nvars() != size() || b.nvars() != size()) throw PreconditionError("element from a different ring");
  for (const auto* x : {&a, &b})
    for (const auto& [m, c] : *x)
      for (std::size_t k = j_ + 1; k < size(); ++k)
        if (m[k] != 0 && !generator_allowed(k))
          throw PreconditionError("element involves " + ring_.presentation().names()[k] +
                                  ", which does not skew-commute with the inverted variable");
  LaurentElement result(size(), j_);
  for (const auto& [m, c] : a)
    for (const auto& [n, d] : b) {
      const CoeffRat cd = c * d;
      for (const auto& [u, e] : mul_monomials(m, n)) result.add_term(u, cd * e);
    }
  ring_.check_term_limit(result.size());
  return result;
}

LaurentElement Localization::apply_torus(const TorusElement& h, const LaurentElement& a) const {
  const Presentation& pres = ring_.presentation();
  if (h.coordinates.size() != pres.torus_rank()) throw PreconditionError("torus element has the wrong rank");
  LaurentElement result(size(), j_);
  for (const auto& [m, c] : a) result.add_term(m, c * pres.weight_of(m).evaluate(h));
  return result;
}

namespace {

struct LaurentDomain {
  using Value = LaurentElement;
  const Localization& loc;

  LaurentElement constant(const CoeffRat& c) const { return loc.lift(loc.ring().constant(c)); }
  LaurentElement generator(std::size_t i) const { return loc.lift(loc.ring().generator(i)); }
  LaurentElement mul(const LaurentElement& a, const LaurentElement& b) const { return loc.mul(a, b); }
  LaurentElement pow_generator(std::size_t i, long e, std::size_t position) const {
    if (i == loc.inverted()) return loc.power(e);
    if (e < 0) throw ParseError("only the inverted generator may carry a negative power", position);
    Monomial m(loc.size(), 0);
    m[i] = static_cast<int>(e);
    return loc.lift(Element::monomial(m));
  }
  std::optional<CoeffRat> scalar(const LaurentElement& v) const {
    if (v.is_zero()) return CoeffRat();
    if (v.size() != 1) return std::nullopt;
    for (int e : v.begin()->first)
      if (e != 0) return std::nullopt;
    return v.begin()->second;
  }
};

}  // namespace

LaurentElement Localization::parse(std::string_view text) const {
  auto tree = expr::parse(text, ring_.presentation().names());
  return detail::evaluate(*tree, LaurentDomain{*this});
}

}  // namespace oreforge
