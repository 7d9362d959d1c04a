#include "oreforge/ring.hpp"

#include <algorithm>

#include "eval_detail.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/expr.hpp"

namespace oreforge {

namespace {

// Largest index with a nonzero exponent, or size() for the unit monomial.
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

bool is_unit(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

void require_below(const Element& a, std::size_t j, const char* op) {
  if (!a.involves_only_below(j))
    throw PreconditionError(std::string(op) + ": argument involves a generator at or above the acting one");
}

}  // namespace

Ring::Ring(Presentation pres) : pres_(std::make_shared<const Presentation>(std::move(pres))) {}

Ring::Ring(std::shared_ptr<const Presentation> pres) : pres_(std::move(pres)) {
  if (!pres_) throw PreconditionError("null presentation");
}

void Ring::check_term_limit(std::size_t terms) const {
  const std::size_t limit = term_limit_;
  if (limit != 0 && terms > limit)
    throw ResourceError("term-count limit exceeded (" + std::to_string(terms) + " > " + std::to_string(limit) + ")");
}

CoeffRat Ring::sigma_eigenvalue(std::size_t j, const Monomial& m) const {
  CoeffRat value(1);
  for (std::size_t i = 0; i < j && i < m.size(); ++i)
    if (m[i] != 0) value *= pres_->lambda(j, i).pow(m[i]);
  return value;
}

Element Ring::left_mul_generator(std::size_t k, const Monomial& m) const {
  Key key{k, m};
  {
    std::lock_guard lock(mutex_);
    if (auto it = left_cache_.find(key); it != left_cache_.end()) return it->second;
  }
  const std::size_t n = size();
  Monomial lo = m;
  Monomial hi = m;
  for (std::size_t i = 0; i < n; ++i) (i < k ? hi[i] : lo[i]) = 0;

  Element result(n);
  Monomial shifted = m;
  shifted[k] += 1;
  result.add_term(shifted, sigma_eigenvalue(k, lo));
  if (pres_->has_delta(k) && !is_unit(lo)) {
    for (const auto& [t, c] : delta_of_monomial(k, lo)) result.add_term(add(t, hi), c);
  }
  check_term_limit(result.size());
  std::lock_guard lock(mutex_);
  return left_cache_.emplace(std::move(key), std::move(result)).first->second;
}

Element Ring::delta_of_monomial(std::size_t j, const Monomial& m) const {
  Key key{j, m};
  {
    std::lock_guard lock(mutex_);
    if (auto it = delta_cache_.find(key); it != delta_cache_.end()) return it->second;
  }
  Element result(size());
  const std::size_t i = first_letter(m);
  if (i < size() && pres_->has_delta(j)) {
    if (i >= j) throw PreconditionError("delta applied to a monomial outside R_{j-1}");
    // delta(x_i w) = sigma(x_i) delta(w) + delta(x_i) w
    Monomial rest = m;
    rest[i] -= 1;
    const CoeffRat& lam = pres_->lambda(j, i);
    for (const auto& [t, c] : delta_of_monomial(j, rest))
      for (const auto& [u, d] : left_mul_generator(i, t)) result.add_term(u, lam * c * d);
    if (const Element* dx = pres_->delta(j, i)) {
      for (const auto& [t, c] : *dx)
        for (const auto& [u, d] : mul_monomials(t, rest)) result.add_term(u, c * d);
    }
  }
  check_term_limit(result.size());
  std::lock_guard lock(mutex_);
  return delta_cache_.emplace(std::move(key), std::move(result)).first->second;
}

Element Ring::mul_monomials(const Monomial& a, const Monomial& b) const {
  const std::size_t last = last_letter(a);
  const std::size_t first = first_letter(b);
  if (last == size() || first == size() || last <= first) return Element::monomial(add(a, b));
  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    if (auto it = product_cache_.find(key); it != product_cache_.end()) return it->second;
  }
  // a = a' x_last, so a b = a' (x_last b).
  Monomial prefix = a;
  prefix[last] -= 1;
  Element result(size());
  for (const auto& [u, c] : left_mul_generator(last, b))
    for (const auto& [v, d] : mul_monomials(prefix, u)) result.add_term(v, c * d);
  check_term_limit(result.size());
  std::lock_guard lock(mutex_);
  return product_cache_.emplace(std::move(key), std::move(result)).first->second;
}

Element Ring::mul(const Element& a, const Element& b) const {
  if (a.nvars() != size() || b.nvars() != size()) throw PreconditionError("element from a different ring");
  Element result(size());
  for (const auto& [m, c] : a)
    for (const auto& [n, d] : b) {
      const CoeffRat cd = c * d;
      for (const auto& [u, e] : mul_monomials(m, n)) result.add_term(u, cd * e);
    }
  check_term_limit(result.size());
  return result;
}

Element Ring::pow(const Element& a, unsigned n) const {
  Element result = one();
  for (unsigned k = 0; k < n; ++k) result = mul(result, a);
  return result;
}

Element Ring::apply_sigma(std::size_t j, const Element& a, long power) const {
  require_below(a, j, "apply_sigma");
  Element result(size());
  for (const auto& [m, c] : a) result.add_term(m, c * sigma_eigenvalue(j, m).pow(power));
  return result;
}

Element Ring::apply_delta(std::size_t j, const Element& a) const {
  require_below(a, j, "apply_delta");
  Element result(size());
  if (!pres_->has_delta(j)) return result;
  for (const auto& [m, c] : a)
    for (const auto& [u, d] : delta_of_monomial(j, m)) result.add_term(u, c * d);
  return result;
}

Element Ring::apply_delta_power(std::size_t j, const Element& a, std::size_t n) const {
  Element result = a;
  for (std::size_t k = 0; k < n && !result.is_zero(); ++k) result = apply_delta(j, result);
  return result;
}

Element Ring::apply_torus(const TorusElement& h, const Element& a) const {
  if (h.coordinates.size() != pres_->torus_rank()) throw PreconditionError("torus element has the wrong rank");
  Element result(size());
  for (const auto& [m, c] : a) result.add_term(m, c * pres_->weight_of(m).evaluate(h));
  return result;
}

std::size_t Ring::delta_nilpotence_order(std::size_t j, const Element& a, std::size_t bound) const {
  if (a.is_zero()) throw PreconditionError("nilpotence order of the zero element");
  Element current = a;
  for (std::size_t s = 0; s <= bound; ++s) {
    Element next = apply_delta(j, current);
    if (next.is_zero()) return s;
    current = std::move(next);
  }
  throw ResourceError("delta_" + std::to_string(j + 1) + " not nilpotent on the argument within bound " +
                      std::to_string(bound));
}

Element Ring::normal_form(const RawSum& raw, RewriteStrategy strategy) const {
  using Word = std::vector<std::size_t>;
  std::map<Word, CoeffRat> pending;
  auto push = [&pending](Word w, const CoeffRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = pending.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) pending.erase(it);
    }
  };
  for (const auto& t : raw) {
    for (std::size_t l : t.letters)
      if (l >= size()) throw PreconditionError("letter out of range in raw word");
    push(t.letters, t.coeff);
  }

  // Letters of delta_a(x_b) as words, precomputed once.
  std::map<DeltaKey, std::vector<std::pair<Word, CoeffRat>>> delta_words;
  for (const auto& [key, value] : pres_->delta_entries()) {
    auto& out = delta_words[key];
    for (const auto& [m, c] : value) {
      Word w;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) w.push_back(i);
      out.emplace_back(std::move(w), c);
    }
  }

  Element result(size());
  std::size_t steps = 0;
  const std::size_t step_limit = 2'000'000;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const CoeffRat& c = node.mapped();
    std::size_t at = w.size();
    if (strategy == RewriteStrategy::LeftmostFirst) {
      for (std::size_t p = 0; p + 1 < w.size(); ++p)
        if (w[p] > w[p + 1]) {
          at = p;
          break;
        }
    } else {
      for (std::size_t p = w.size(); p-- > 1;)
        if (w[p - 1] > w[p]) {
          at = p - 1;
          break;
        }
    }
    if (at == w.size()) {
      Monomial m(size(), 0);
      for (std::size_t l : w) m[l] += 1;
      result.add_term(m, c);
      continue;
    }
    if (++steps > step_limit) throw ResourceError("rewriting step limit exceeded");
    const std::size_t a = w[at];
    const std::size_t b = w[at + 1];
    Word swapped = w;
    std::swap(swapped[at], swapped[at + 1]);
    push(std::move(swapped), c * pres_->lambda(a, b));
    if (auto it = delta_words.find({a, b}); it != delta_words.end()) {
      for (const auto& [dw, dc] : it->second) {
        Word replaced(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
        replaced.insert(replaced.end(), dw.begin(), dw.end());
        replaced.insert(replaced.end(), w.begin() + static_cast<std::ptrdiff_t>(at + 2), w.end());
        push(std::move(replaced), c * dc);
      }
    }
  }
  return result;
}

namespace {

struct PolynomialDomain {
  using Value = Element;
  const Ring& ring;

  Element constant(const CoeffRat& c) const { return ring.constant(c); }
  Element generator(std::size_t i) const { return ring.generator(i); }
  Element mul(const Element& a, const Element& b) const { return ring.mul(a, b); }
  Element pow_generator(std::size_t i, long e, std::size_t position) const {
    if (e < 0) throw ParseError("negative power of a generator outside a localization", position);
    Monomial m(ring.size(), 0);
    m[i] = static_cast<int>(e);
    return Element::monomial(m);
  }
  std::optional<CoeffRat> scalar(const Element& v) const {
    if (v.is_zero()) return CoeffRat();
    if (v.size() == 1 && is_unit(v.begin()->first)) return v.begin()->second;
    return std::nullopt;
  }
};

}  // namespace

Element Ring::parse(std::string_view text) const {
  auto tree = expr::parse(text, pres_->names());
  return detail::evaluate(*tree, PolynomialDomain{*this});
}

RawSum to_raw(const Element& e) {
  RawSum raw;
  for (const auto& [m, c] : e) {
    RawTerm t{c, {}};
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t.letters.push_back(i);
    raw.push_back(std::move(t));
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Leading terms and exact division

const Monomial& leading_monomial(const Element& a, std::span<const int> degrees) {
  if (a.is_zero()) throw PreconditionError("leading monomial of zero");
  const Monomial* best = nullptr;
  long best_degree = 0;
  for (const auto& [m, c] : a) {
    const long d = monomial_degree(m, degrees);
    if (!best || d > best_degree || (d == best_degree && m > *best)) {
      best = &m;
      best_degree = d;
    }
  }
  return *best;
}

namespace {

std::optional<Element> divide(const Ring& ring, const Element& x, const Element& y, std::span<const int> degrees,
                              bool quotient_on_left) {
  if (x.is_zero()) throw MathError("division by the zero element");
  const std::size_t n = ring.size();
  Element remainder = y;
  Element quotient(n);
  const Monomial& lx = leading_monomial(x, degrees);
  const CoeffRat cx = x.coefficient(lx);
  std::size_t guard = 0;
  while (!remainder.is_zero()) {
    if (++guard > 100000) throw ResourceError("division did not terminate");
    const Monomial ly = leading_monomial(remainder, degrees);
    Monomial t(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = ly[i] - lx[i];
      if (t[i] < 0) return std::nullopt;
    }
    // Leading coefficient of t * x (or x * t) is c_t * c_x * (monomial factor).
    const Element tx = quotient_on_left ? ring.mul_monomials(t, lx) : ring.mul_monomials(lx, t);
    const CoeffRat factor = tx.coefficient(ly);
    if (factor.is_zero()) return std::nullopt;
    const CoeffRat ct = remainder.coefficient(ly) / (factor * cx);
    Element term = Element::monomial(t, ct);
    remainder -= quotient_on_left ? ring.mul(term, x) : ring.mul(x, term);
    quotient += term;
    if (!remainder.is_zero() && leading_monomial(remainder, degrees) == ly) return std::nullopt;
  }
  return quotient;
}

}  // namespace

std::optional<Element> divide_right(const Ring& ring, const Element& y, const Element& x,
                                    std::span<const int> degrees) {
  return divide(ring, x, y, degrees, true);
}

std::optional<Element> divide_left(const Ring& ring, const Element& x, const Element& y,
                                   std::span<const int> degrees) {
  return divide(ring, x, y, degrees, false);
}

}  // namespace oreforge
