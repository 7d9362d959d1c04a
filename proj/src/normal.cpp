#include "oreforge/normal.hpp"

#include <cstdlib>
#include <functional>
#include <set>

#include "oreforge/cauchon.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/grfilt.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

namespace {

// Solves sum_k x_k columns[k] = target for scalars x_k. Columns and target
// are elements; equations are their coefficients at each monomial.
std::optional<std::vector<CoeffRat>> solve(const std::vector<Element>& columns, const Element& target) {
  std::set<Monomial> rows_index;
  for (const auto& col : columns)
    for (const auto& [m, c] : col) rows_index.insert(m);
  for (const auto& [m, c] : target) rows_index.insert(m);
  const std::size_t cols = columns.size();
  std::vector<std::vector<CoeffRat>> rows;
  for (const auto& m : rows_index) {
    std::vector<CoeffRat> row(cols + 1);
    for (std::size_t k = 0; k < cols; ++k) row[k] = columns[k].coefficient(m);
    row[cols] = target.coefficient(m);
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const CoeffRat inv = rows[r][c].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c].is_zero()) continue;
      const CoeffRat f = rows[o][c];
      for (std::size_t k = c; k <= cols; ++k) rows[o][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t o = r; o < rows.size(); ++o)
    if (!rows[o][cols].is_zero()) return std::nullopt;
  std::vector<CoeffRat> x(cols);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = rows[k][cols];
  return x;
}

void monomials_up_to(const std::vector<int>& degrees, std::size_t nvars, std::size_t count, long max_degree,
                     std::vector<Monomial>& out) {
  Monomial cur(nvars, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long deg) {
    if (i == count) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; deg + static_cast<long>(e) * degrees[i] <= max_degree; ++e) {
      cur[i] = e;
      rec(i + 1, deg + static_cast<long>(e) * degrees[i]);
    }
    cur[i] = 0;
  };
  rec(0, 0);
}

// tau(y) for tau the algebra map x_i -> images[i].
Element apply_map(const Ring& ring, const std::vector<Element>& images, const Element& y) {
  Element out = ring.zero();
  for (const auto& [m, c] : y) {
    Element term = ring.one();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) {
        if (i >= images.size()) throw PreconditionError("conjugation undefined on " + ring.presentation().names()[i]);
        term = ring.mul(term, images[i]);
      }
    out += c * term;
  }
  return out;
}

}  // namespace

nlohmann::json NormalCertificate::to_json(const std::vector<std::string>& names) const {
  nlohmann::json j;
  j["element"] = element.to_string(names);
  j["weight"] = eigen_weight.exponents;
  nlohmann::json conj = nlohmann::json::object();
  for (std::size_t i = 0; i < conjugation.size(); ++i) conj[names[i]] = conjugation[i].to_string(names);
  j["conjugation"] = std::move(conj);
  return j;
}

std::string FractionElement::to_string(const std::vector<std::string>& names) const {
  if (num.is_zero()) return "0";
  const std::string d = den.to_string(names);
  const bool simple = den.size() == 1 && den.begin()->second.is_one();
  return (simple ? d : "(" + d + ")") + "^-1 * (" + num.to_string(names) + ")";
}

std::optional<NormalCertificate> verify_normal(const Ring& ring, const Element& x, std::size_t degree_bound,
                                               std::size_t within, std::string* failure) {
  const Presentation& pres = ring.presentation();
  const std::size_t n = ring.size();
  if (within == 0) within = n;
  if (within > n) throw PreconditionError("subalgebra index out of range");
  if (x.is_zero()) throw PreconditionError("the zero element is not normal");
  if (!x.involves_only_below(within)) throw PreconditionError("element lies outside the subalgebra");
  auto fail = [&](const std::string& why) -> std::optional<NormalCertificate> {
    if (failure) *failure = why;
    return std::nullopt;
  };
  const auto w = eigen_weight(pres, x);
  if (!w) return fail("not an H-eigenvector");

  const std::vector<int> degrees = filtration_for(pres);
  const long dx = x.weighted_degree(degrees);
  NormalCertificate cert{x, {}, *w, within};
  for (std::size_t g = 0; g < within; ++g) {
    const Element gen = ring.generator(g);
    for (int side = 0; side < 2; ++side) {
      // side 0: x g = p x.  side 1: g x = x p.
      const Element target = side == 0 ? ring.mul(x, gen) : ring.mul(gen, x);
      const long budget = target.weighted_degree(degrees) - dx;
      if (budget < 0) return fail(pres.names()[g] + ": degree drops");
      if (static_cast<std::size_t>(budget) > degree_bound)
        throw ResourceError("normality test for " + pres.names()[g] + " needs degree " + std::to_string(budget) +
                            " > bound " + std::to_string(degree_bound));
      std::vector<Monomial> support;
      monomials_up_to(degrees, n, within, budget, support);
      std::vector<Element> columns;
      for (const auto& m : support) {
        const Element mono = Element::monomial(m);
        columns.push_back(side == 0 ? ring.mul(mono, x) : ring.mul(x, mono));
      }
      const auto sol = solve(columns, target);
      if (!sol)
        return fail(side == 0 ? "x*" + pres.names()[g] + " is not in R*x" : pres.names()[g] + "*x is not in x*R");
      if (side == 0) {
        Element p(n);
        for (std::size_t k = 0; k < support.size(); ++k) p.add_term(support[k], (*sol)[k]);
        cert.conjugation.push_back(std::move(p));
      }
    }
  }
  return cert;
}

CoeffRat eta_of(const Presentation& pres, const Element& a) {
  const auto w = eigen_weight(pres, a);
  if (!w) throw PreconditionError("element is not an H-eigenvector");
  return w->evaluate(pres.h().back());
}

namespace {

NormalCertificate require_normal_in_A(const Ring& ring, const Element& a, std::size_t bound) {
  const std::size_t top = ring.size() - 1;
  if (a.is_zero()) throw PreconditionError("a must be nonzero");
  if (!a.involves_only_below(top)) throw PreconditionError("a must lie in the coefficient subalgebra R_{N-1}");
  if (top == 0) {
    // A = K: every nonzero scalar is normal.
    return NormalCertificate{a, {}, *eigen_weight(ring.presentation(), a), 0};
  }
  std::string why;
  auto cert = verify_normal(ring, a, bound, top, &why);
  if (!cert) throw PreconditionError(ring.format(a) + " is not a normal H-eigenvector of R_{N-1}: " + why);
  return *cert;
}

}  // namespace

NormalCertificate construct_normal(const Ring& ring, const Element& a, std::size_t bound) {
  const Presentation& pres = ring.presentation();
  const std::size_t top = ring.size() - 1;
  const NormalCertificate a_cert = require_normal_in_A(ring, a, bound);
  Localization loc(ring, top, bound);
  const ThetaImage theta = cauchon_theta(loc, a, bound);
  const auto x = loc.mul(theta.value, loc.power(static_cast<long>(theta.s_min))).to_element();
  if (!x) throw VerificationError("theta(a) X^s is not in R");
  const CoeffRat eta = eta_of(pres, a);
  const std::vector<int> degrees = filtration_for(pres);

  NormalCertificate cert{*x, {}, a_cert.eigen_weight + pres.weights()[top].scaled(static_cast<int>(theta.s_min)),
                         ring.size()};
  const auto w = eigen_weight(pres, *x);
  if (!w || !(*w == cert.eigen_weight))
    throw VerificationError("theta(a) X^s does not have weight chi_a + s chi_X");
  for (std::size_t i = 0; i < top; ++i) {
    const Element target = ring.mul(*x, ring.generator(i));
    const auto p = divide_right(ring, target, *x, degrees);
    if (!p || !(ring.mul(*p, *x) == target))
      throw VerificationError("x*" + pres.names()[i] + " is not a left multiple of x");
    const auto p2 = divide_left(ring, *x, ring.mul(ring.generator(i), *x), degrees);
    if (!p2) throw VerificationError(pres.names()[i] + "*x is not a right multiple of x");
    cert.conjugation.push_back(*p);
  }
  const Element X = ring.generator(top);
  const Element pX = eta.inverse() * X;
  if (!(ring.mul(*x, X) == ring.mul(pX, *x)))
    throw VerificationError("x X = eta^-1 X x fails for " + ring.format(*x));
  cert.conjugation.push_back(pX);
  return cert;
}

FractionElement inner_d_from_normal(const Ring& ring, const Element& a, std::size_t bound) {
  const Presentation& pres = ring.presentation();
  const std::size_t top = ring.size() - 1;
  NormalCertificate cert = require_normal_in_A(ring, a, bound);
  const std::size_t s = ring.delta_nilpotence_order(top, a, bound);
  if (s == 0) throw PreconditionError("derivation vanishes on a");
  const CoeffRat eta = eta_of(pres, a);
  const CoeffRat lambda_s = pres.q(top).pow(static_cast<long>(s));
  const Element da = ring.apply_delta(top, a);
  if (!(ring.mul(da, a) == eta * lambda_s * ring.mul(a, da)))
    throw VerificationError("companion identity delta(a) a = eta lambda^s a delta(a) fails");
  const CoeffRat factor = eta.inverse() / (lambda_s - CoeffRat(1));
  return {a, factor * da, std::move(cert)};
}

FractionElement inner_d_from_monic(const Ring& ring, const Element& a, const Element& c, unsigned n) {
  const std::size_t top = ring.size() - 1;
  if (n == 0) throw PreconditionError("n must be positive");
  if (!c.involves_only_below(top)) throw PreconditionError("c must lie in R_{N-1}");
  const CoeffRat lambda = ring.presentation().q(top);
  const CoeffRat lambda_n = lambda.pow(n);
  if (lambda_n.is_one()) throw MathError("lambda^n = 1");
  NormalCertificate cert = require_normal_in_A(ring, a, default_bound());
  const CoeffRat factor = (lambda - CoeffRat(1)) / (CoeffRat(1) - lambda_n);
  return {a, factor * c, std::move(cert)};
}

bool verify_inner(const Ring& ring, const FractionElement& d) {
  const Presentation& pres = ring.presentation();
  const std::size_t top = ring.size() - 1;
  if (!(d.den_certificate.element == d.den) || d.den_certificate.within < top)
    throw PreconditionError("denominator lacks a normality certificate for R_{N-1}");
  for (std::size_t i = 0; i < top; ++i) {
    const Element r = ring.generator(i);
    const Element lhs = ring.mul(d.den, ring.apply_delta(top, r));
    const Element tau_sigma_r = pres.lambda(top, i) * d.den_certificate.conjugation[i];
    const Element rhs = ring.mul(d.num, r) - ring.mul(tau_sigma_r, d.num);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool fractions_equal(const Ring& ring, const FractionElement& a, const FractionElement& b) {
  // a.den^{-1} a.num = b.den^{-1} b.num  iff  tau_a(b.den) a.num = a.den b.num.
  const Element tau = apply_map(ring, a.den_certificate.conjugation, b.den);
  return ring.mul(tau, a.num) == ring.mul(a.den, b.num);
}

std::string to_string(RicVerdict v) {
  switch (v) {
    case RicVerdict::Consistent: return "consistent";
    case RicVerdict::HypothesisNotSatisfied: return "hypothesis-not-satisfied";
    case RicVerdict::Counterexample: return "COUNTEREXAMPLE";
  }
  return "?";
}

RicVerdict ric_check(const Ring& ring, std::size_t j, const Element& c, const Element& e, Side side,
                     std::size_t bound) {
  if (!c.involves_only_below(j) || !e.involves_only_below(j))
    throw PreconditionError("ric_check arguments must lie in R_{j-1}");
  if (!c.is_zero()) ring.delta_nilpotence_order(j, c, bound);
  if (!e.is_zero()) ring.delta_nilpotence_order(j, e, bound);
  const Element dc = ring.apply_delta(j, c);
  const Element product = side == Side::Right ? ring.mul(c, e) : ring.mul(e, c);
  if (!(dc == product)) return RicVerdict::HypothesisNotSatisfied;
  return dc.is_zero() ? RicVerdict::Consistent : RicVerdict::Counterexample;
}

std::optional<std::vector<int>> torus_conjugation_match(const Presentation& pres, const NormalCertificate& cert,
                                                        int max_abs) {
  const std::size_t d = pres.torus_rank();
  std::vector<CoeffRat> scalars;
  for (std::size_t i = 0; i < cert.conjugation.size(); ++i) {
    const Element& p = cert.conjugation[i];
    Monomial m(pres.size(), 0);
    m[i] = 1;
    if (p.size() != 1 || p.begin()->first != m) return std::nullopt;
    scalars.push_back(p.begin()->second);
  }
  std::vector<int> a(d, -max_abs);
  if (d == 0) return scalars.empty() ? std::optional<std::vector<int>>(a) : std::nullopt;
  // Characters at q^a are q^(w_i . a) exactly when scalars are q-powers, so
  // compare exponents; report the match with the least sum |a_t|.
  std::vector<long> target;
  for (const auto& c : scalars) {
    int sign = 0;
    long e = 0;
    if (!as_signed_q_power(c, sign, e) || sign != 1) return std::nullopt;
    target.push_back(e);
  }
  std::optional<std::vector<int>> best;
  long best_norm = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < target.size() && ok; ++i) {
      long e = 0;
      for (std::size_t t = 0; t < d; ++t) e += static_cast<long>(pres.weights()[i].exponents[t]) * a[t];
      ok = e == target[i];
    }
    if (ok) {
      long norm = 0;
      for (int e : a) norm += std::abs(e);
      if (!best || norm < best_norm) {
        best = a;
        best_norm = norm;
      }
    }
    std::size_t t = 0;
    while (t < d && a[t] == max_abs) a[t++] = -max_abs;
    if (t == d) return best;
    ++a[t];
  }
}

}  // namespace oreforge
