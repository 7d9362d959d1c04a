#include "oreforge/grfilt.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "oreforge/errors.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

namespace {

// Largest (deg delta_j(x_i)) - (d_i + d_j) + 1 over all pairs; <= 0 iff valid.
long worst_excess(const Presentation& pres, const std::vector<int>& degrees, std::string* where) {
  long worst = std::numeric_limits<long>::min();
  for (const auto& [key, value] : pres.delta_entries()) {
    const auto [j, i] = key;
    const long excess = value.weighted_degree(degrees) - (degrees[i] + degrees[j]) + 1;
    if (excess > worst) {
      worst = excess;
      if (where)
        *where = "deg delta_" + std::to_string(j + 1) + "(" + pres.names()[i] + ") = " +
                 std::to_string(value.weighted_degree(degrees)) + " is not < " +
                 std::to_string(degrees[i] + degrees[j]);
    }
  }
  return worst;
}

void compositions(std::size_t n, int total, std::vector<int>& cur, const std::function<bool(const std::vector<int>&)>& f,
                  bool& stop) {
  if (stop) return;
  const std::size_t k = cur.size();
  if (k + 1 == n) {
    cur.push_back(total);
    stop = f(cur);
    cur.pop_back();
    return;
  }
  const int remaining_slots = static_cast<int>(n - k - 1);
  for (int v = 1; v <= total - remaining_slots && !stop; ++v) {
    cur.push_back(v);
    compositions(n, total - v, cur, f, stop);
    cur.pop_back();
  }
}

void enumerate_monomials(const std::vector<int>& degrees, long max_degree, std::size_t i, Monomial& cur, long deg,
                         const std::function<void(const Monomial&, long)>& f) {
  if (i == degrees.size()) {
    f(cur, deg);
    return;
  }
  for (int e = 0; deg + static_cast<long>(e) * degrees[i] <= max_degree; ++e) {
    cur[i] = e;
    enumerate_monomials(degrees, max_degree, i + 1, cur, deg + static_cast<long>(e) * degrees[i], f);
  }
  cur[i] = 0;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  BigInt r = 1;
  for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

bool filtration_valid(const Presentation& pres, const std::vector<int>& degrees, std::string* violation) {
  if (degrees.size() != pres.size()) {
    if (violation) *violation = "expected " + std::to_string(pres.size()) + " degrees";
    return false;
  }
  for (int d : degrees)
    if (d <= 0) {
      if (violation) *violation = "degrees must be positive";
      return false;
    }
  std::string where;
  const bool ok = pres.delta_entries().empty() || worst_excess(pres, degrees, &where) <= 0;
  if (!ok && violation) *violation = where;
  return ok;
}

FiltrationDegrees find_filtration_degrees(const Presentation& pres, int max_total) {
  const std::size_t n = pres.size();
  std::optional<std::vector<int>> found;
  std::vector<int> tightest;
  long tightest_excess = std::numeric_limits<long>::max();
  for (int total = static_cast<int>(n); total <= max_total && !found; ++total) {
    std::vector<int> cur;
    bool stop = false;
    compositions(n, total, cur,
                 [&](const std::vector<int>& v) {
                   const long excess = pres.delta_entries().empty() ? 0 : worst_excess(pres, v, nullptr);
                   if (excess <= 0) {
                     found = v;
                     return true;
                   }
                   if (excess < tightest_excess) {
                     tightest_excess = excess;
                     tightest = v;
                   }
                   return false;
                 },
                 stop);
  }
  if (!found) {
    std::string where = "no candidate degrees";
    if (!tightest.empty()) worst_excess(pres, tightest, &where);
    throw ResourceError("no valid filtration degrees with sum <= " + std::to_string(max_total) +
                        "; tightest violated constraint: " + where);
  }
  return {*found};
}

std::vector<int> filtration_for(const Presentation& pres) {
  if (pres.filtration() && filtration_valid(pres, *pres.filtration())) return *pres.filtration();
  return find_filtration_degrees(pres, static_cast<int>(6 * pres.size() + 6)).degrees;
}

Presentation associated_graded(const Presentation& pres, const FiltrationDegrees& degrees) {
  std::string violation;
  if (!filtration_valid(pres, degrees.degrees, &violation))
    throw PreconditionError("invalid filtration degrees: " + violation);
  Presentation::Data d = pres.data();
  d.name = "gr " + pres.name();
  d.delta.clear();
  d.filtration = degrees.degrees;
  return Presentation(std::move(d));
}

Element top_degree_part(const Element& a, std::span<const int> degrees) {
  Element out(a.nvars());
  if (a.is_zero()) return out;
  const long top = a.weighted_degree(degrees);
  for (const auto& [m, c] : a)
    if (monomial_degree(m, degrees) == top) out.add_term(m, c);
  return out;
}

GkResult gk_dimension(const Ring& ring, std::size_t max_n) {
  const Presentation& pres = ring.presentation();
  const std::size_t n = pres.size();
  GkResult out;
  out.dimension = n;
  out.report = Report("GK dimension");
  const std::vector<int> degrees = filtration_for(pres);

  // R_a R_b in R_{a+b} on pairs of monomials of degree <= 2 in the generators.
  std::vector<Monomial> small;
  Monomial cur(n, 0);
  enumerate_monomials(std::vector<int>(n, 1), 2, 0, cur, 0, [&](const Monomial& m, long) { small.push_back(m); });
  std::string bad;
  for (const auto& a : small)
    for (const auto& b : small) {
      const Element p = ring.mul_monomials(a, b);
      if (!p.is_zero() && p.weighted_degree(degrees) > monomial_degree(a, degrees) + monomial_degree(b, degrees) &&
          bad.empty())
        bad = ring.format(Element::monomial(a)) + " * " + ring.format(Element::monomial(b));
    }
  out.report.add("filtration is multiplicative on low-degree monomials", bad.empty(), bad);

  // Direct count of monomials versus the Hilbert series prod 1/(1 - t^{d_i}).
  std::vector<std::size_t> per_degree(max_n + 1, 0);
  enumerate_monomials(degrees, static_cast<long>(max_n), 0, cur, 0,
                      [&](const Monomial&, long deg) { ++per_degree[static_cast<std::size_t>(deg)]; });
  std::vector<BigInt> series(max_n + 1, 0);
  series[0] = 1;
  for (int d : degrees)
    for (std::size_t k = static_cast<std::size_t>(d); k <= max_n; ++k) series[k] += series[k - static_cast<std::size_t>(d)];
  bool hilbert = true;
  bool squeezed = true;
  std::size_t running = 0;
  BigInt running_series = 0;
  const int top = *std::max_element(degrees.begin(), degrees.end());
  for (std::size_t k = 0; k <= max_n; ++k) {
    running += per_degree[k];
    running_series += series[k];
    out.counts.push_back(running);
    if (BigInt(static_cast<unsigned long>(running)) != running_series) hilbert = false;
    const long L = static_cast<long>(n);
    const BigInt lower = binomial(static_cast<long>(k) / top + L, L);
    const BigInt upper = binomial(static_cast<long>(k) + L, L);
    const BigInt c(static_cast<unsigned long>(running));
    if (c < lower || c > upper) squeezed = false;
  }
  out.report.add("monomial count matches the graded Hilbert series for n <= " + std::to_string(max_n), hilbert);
  out.report.add("growth is squeezed between degree-" + std::to_string(n) + " polynomials", squeezed);
  return out;
}

}  // namespace oreforge
