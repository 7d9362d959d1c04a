#include "oreforge/cauchon.hpp"

#include "oreforge/errors.hpp"
#include "oreforge/qcalc.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

ThetaImage cauchon_theta(const Localization& loc, const Element& a, std::size_t bound) {
  const Ring& ring = loc.ring();
  const std::size_t j = loc.inverted();
  if (a.is_zero()) throw PreconditionError("theta of the zero element");
  if (!a.involves_only_below(j)) throw PreconditionError("theta needs an element of R_{j-1}");

  const std::size_t s = ring.delta_nilpotence_order(j, a, bound);
  const CoeffRat lambda = ring.presentation().q(j);
  const CoeffRat one_minus = CoeffRat(1) - lambda;

  LaurentElement value(ring.size(), j);
  for (std::size_t l = 0; l <= s; ++l) {
    const long ll = static_cast<long>(l);
    const CoeffRat c = one_minus.pow(-ll) / q_factorial(static_cast<unsigned>(l), lambda);
    const Element coeff = ring.apply_delta_power(j, ring.apply_sigma(j, a, -ll), l);
    for (const auto& [m, d] : coeff) {
      Monomial shifted = m;
      shifted[j] = -static_cast<int>(l);
      value.add_term(shifted, c * d);
    }
  }

  std::size_t s_min = 0;
  while (!loc.mul(value, loc.power(static_cast<long>(s_min))).is_polynomial()) {
    if (++s_min > s + 1) break;
  }
  if (s_min != s)
    throw VerificationError("theta(a) X^s lies in R for s = " + std::to_string(s_min) +
                            " but the nilpotence order of a is " + std::to_string(s));
  return {a, std::move(value), s_min};
}

bool verify_theta_homomorphism(const Localization& loc, const Element& a, const Element& b, std::size_t bound) {
  const Ring& ring = loc.ring();
  const Element ab = ring.mul(a, b);
  if (ab.is_zero()) return a.is_zero() || b.is_zero();
  if (a.is_zero() || b.is_zero()) return false;
  const LaurentElement lhs = cauchon_theta(loc, ab, bound).value;
  const LaurentElement rhs = loc.mul(cauchon_theta(loc, a, bound).value, cauchon_theta(loc, b, bound).value);
  return lhs == rhs;
}

bool verify_alpha_commutation(const Localization& loc, const Element& a, std::size_t bound) {
  const Presentation& pres = loc.ring().presentation();
  const auto w = eigen_weight(pres, a);
  if (!w) throw PreconditionError("alpha commutation needs an H-eigenvector");
  const CoeffRat eta = w->evaluate(pres.h()[loc.inverted()]);
  const LaurentElement t = cauchon_theta(loc, a, bound).value;
  return loc.mul(loc.power(1), t) == eta * loc.mul(t, loc.power(1));
}

nlohmann::json DeletionStep::to_json() const {
  nlohmann::json j;
  j["level"] = level + 1;
  j["trivial"] = trivial;
  j["after"] = presentation_to_json(after);
  nlohmann::json images_json = nlohmann::json::object();
  nlohmann::json s_json = nlohmann::json::object();
  for (const auto& [i, img] : images) {
    images_json[before.names()[i]] = img.value.to_string(before.names());
    s_json[before.names()[i]] = img.s_min;
  }
  j["images"] = std::move(images_json);
  j["s_min"] = std::move(s_json);
  j["checks"] = checks.to_json();
  return j;
}

namespace {

// Substitutes images[i] for x_i in the PBW expression e.
LaurentElement substitute(const Localization& loc, const Element& e, const std::map<std::size_t, ThetaImage>& images) {
  LaurentElement out(loc.size(), loc.inverted());
  for (const auto& [m, c] : e) {
    LaurentElement term = loc.lift(loc.ring().one());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) term = loc.mul(term, images.at(i).value);
    out += c * term;
  }
  return out;
}

}  // namespace

DeletionStep delete_top_derivation(const Presentation& pres, std::size_t j, std::size_t bound) {
  if (j >= pres.size()) throw PreconditionError("deletion level out of range");
  for (std::size_t k = j + 1; k < pres.size(); ++k)
    for (std::size_t i = 0; i <= j; ++i)
      if (pres.delta(k, i))
        throw PreconditionError("generator " + pres.names()[k] + " has a derivation onto " + pres.names()[i] +
                                ", at or below the deletion level");

  const std::string level = std::to_string(j + 1);
  DeletionStep step{pres, pres, j, {}, Report("delete delta_" + level), true};
  Ring ring(pres);
  if (!pres.has_delta(j)) {
    for (std::size_t i = 0; i < j; ++i) {
      const Element xi = ring.generator(i);
      step.images.emplace(i, ThetaImage{xi, LaurentElement::from(xi, j), 0});
    }
    step.checks.add("delta_" + level + " is already zero", true);
    return step;
  }
  step.trivial = false;
  Localization loc(ring, j, bound);
  const auto& names = pres.names();

  // lambda for this step is q_j; it must agree with sigma delta = q delta sigma.
  for (std::size_t i = 0; i < j; ++i) {
    const Element* d = pres.delta(j, i);
    if (!d) continue;
    const Element lhs = ring.apply_sigma(j, *d);
    const Element rhs = pres.q(j) * ring.apply_delta(j, ring.apply_sigma(j, ring.generator(i)));
    step.checks.add("q_" + level + " realizes sigma delta = q delta sigma on " + names[i], lhs == rhs);
  }

  for (std::size_t i = 0; i < j; ++i) step.images.emplace(i, cauchon_theta(loc, ring.generator(i), bound));

  for (std::size_t k = 1; k < j; ++k)
    for (std::size_t i = 0; i < k; ++i) {
      const LaurentElement& yk = step.images.at(k).value;
      const LaurentElement& yi = step.images.at(i).value;
      LaurentElement rhs = pres.lambda(k, i) * loc.mul(yi, yk);
      if (const Element* d = pres.delta(k, i)) rhs += substitute(loc, *d, step.images);
      const LaurentElement lhs = loc.mul(yk, yi);
      step.checks.add("theta(" + names[k] + ") theta(" + names[i] + ") relation", lhs == rhs,
                      lhs == rhs ? "" : loc.format(lhs) + " != " + loc.format(rhs));
    }

  for (std::size_t i = 0; i < j; ++i) {
    const LaurentElement& yi = step.images.at(i).value;
    const LaurentElement lhs = loc.mul(loc.power(1), yi);
    const LaurentElement rhs = pres.lambda(j, i) * loc.mul(yi, loc.power(1));
    step.checks.add(names[j] + " theta(" + names[i] + ") = lambda theta(" + names[i] + ") " + names[j],
                    lhs == rhs && verify_alpha_commutation(loc, ring.generator(i), bound));
  }

  for (std::size_t k = j + 1; k < pres.size(); ++k)
    for (std::size_t i = 0; i < j; ++i) {
      const LaurentElement xk = loc.lift(ring.generator(k));
      const LaurentElement& yi = step.images.at(i).value;
      const bool ok = loc.mul(xk, yi) == pres.lambda(k, i) * loc.mul(yi, xk);
      step.checks.add(names[k] + " skew-commutes with theta(" + names[i] + ")", ok);
    }

  step.after = without_delta(pres, j);
  const Report structure = validate_structure(step.after);
  step.checks.add("presentation after deletion passes the structural checks", structure.passed(),
                  structure.first_failure());
  if (!step.checks.passed()) throw VerificationError("deletion at level " + level + ": " + step.checks.first_failure());
  return step;
}

std::vector<DeletionStep> deletion_sequence(const Presentation& pres, std::size_t bound) {
  std::vector<DeletionStep> steps;
  Presentation current = pres;
  for (std::size_t j = pres.size(); j-- > 1;) {
    steps.push_back(delete_top_derivation(current, j, bound));
    current = steps.back().after;
  }
  return steps;
}

}  // namespace oreforge
