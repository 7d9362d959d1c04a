#include "oreforge/spectra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "oreforge/errors.hpp"
#include "oreforge/normal.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

std::size_t FinitePoset::add(const std::string& label) {
  if (auto i = find(label)) return *i;
  labels_.push_back(label);
  relations_.emplace_back();
  return labels_.size() - 1;
}

std::optional<std::size_t> FinitePoset::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void FinitePoset::relate(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size()) throw PreconditionError("poset relation between unknown elements");
  if (a == b) throw PreconditionError("poset relation a < a");
  relations_[a].push_back(b);
}

void FinitePoset::finalize() {
  const std::size_t n = size();
  order_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> stack(relations_[a].begin(), relations_[a].end());
    while (!stack.empty()) {
      const std::size_t b = stack.back();
      stack.pop_back();
      if (order_[a][b]) continue;
      order_[a][b] = true;
      for (std::size_t c : relations_[b]) stack.push_back(c);
    }
    if (order_[a][a]) throw PreconditionError("poset relations contain a cycle through " + labels_[a]);
  }
  covers_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!order_[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (order_[a][c] && order_[c][b]) cover = false;
      if (cover) covers_[a].push_back(b);
    }
}

FinitePoset FinitePoset::parse(std::string_view text) {
  FinitePoset p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto lt = line.find('<');
    if (lt == std::string::npos)
      throw ParseError("poset line " + std::to_string(lineno) + ": expected \"a < b\"", line_offset);
    const std::string a = trim(line.substr(0, lt));
    const std::string b = trim(line.substr(lt + 1));
    if (a.empty() || b.empty() || b.find('<') != std::string::npos)
      throw ParseError("poset line " + std::to_string(lineno) + ": expected \"a < b\"", line_offset);
    const std::size_t ia = p.add(a);
    const std::size_t ib = p.add(b);
    p.relate(ia, ib);
  }
  p.finalize();
  return p;
}

std::string FinitePoset::to_text() const {
  std::ostringstream out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b : covers_[a]) out << labels_[a] << " < " << labels_[b] << "\n";
  return out.str();
}

namespace {

std::string subset_label(std::uint32_t w, std::size_t n) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    if (w & (1u << i)) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

// Longest and shortest cover-path lengths from `from` to every element
// (-1 when unreachable), with predecessors for both.
struct Paths {
  std::vector<long> shortest, longest;
  std::vector<std::size_t> prev_short, prev_long;
};

Paths paths_from(const FinitePoset& p, std::size_t from) {
  const std::size_t n = p.size();
  Paths out{std::vector<long>(n, -1), std::vector<long>(n, -1), std::vector<std::size_t>(n, n),
            std::vector<std::size_t>(n, n)};
  // Elements above `from` in an order compatible with the poset: sort by the
  // number of elements below them.
  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < n; ++b)
    if (b == from || p.less(from, b)) order.push_back(b);
  std::vector<std::size_t> below(n, 0);
  for (std::size_t b : order)
    for (std::size_t c = 0; c < n; ++c)
      if (p.less(c, b)) ++below[b];
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });
  out.shortest[from] = out.longest[from] = 0;
  for (std::size_t a : order) {
    if (out.longest[a] < 0) continue;
    for (std::size_t b : p.covers(a)) {
      if (out.shortest[b] < 0 || out.shortest[a] + 1 < out.shortest[b]) {
        out.shortest[b] = out.shortest[a] + 1;
        out.prev_short[b] = a;
      }
      if (out.longest[a] + 1 > out.longest[b]) {
        out.longest[b] = out.longest[a] + 1;
        out.prev_long[b] = a;
      }
    }
  }
  return out;
}

std::vector<std::size_t> chain(std::size_t from, std::size_t to, const std::vector<std::size_t>& prev) {
  std::vector<std::size_t> c{to};
  while (c.back() != from) c.push_back(prev[c.back()]);
  std::reverse(c.begin(), c.end());
  return c;
}

}  // namespace

HPrimePoset hprime_poset(const Presentation& qaff) {
  if (qaff.has_any_delta()) throw PreconditionError("nonzero delta present: not a quantum affine space");
  const std::size_t n = qaff.size();
  if (n > 8) throw ResourceError("H-prime lattice of 2^" + std::to_string(n) + " elements is too large");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int sign = 0;
      long exponent = 0;
      if (!as_signed_q_power(qaff.lambda(i, j), sign, exponent))
        throw PreconditionError("unsupported torus: lambda(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") = " + qaff.lambda(i, j).to_string() + " is not of the form +-q^k");
    }
  HPrimePoset hp;
  hp.n = n;
  const std::uint32_t total = 1u << n;
  for (std::uint32_t w = 0; w < total; ++w) hp.poset.add(subset_label(w, n));
  for (std::uint32_t w = 0; w < total; ++w)
    for (std::size_t i = 0; i < n; ++i)
      if (!(w & (1u << i))) hp.poset.relate(w, w | (1u << i));
  hp.poset.finalize();
  return hp;
}

GkHeight gk_and_height(const HPrimePoset& hp, std::uint32_t w) {
  if (w >= (1u << hp.n)) throw PreconditionError("vanishing set out of range");
  const Paths paths = paths_from(hp.poset, 0);
  return {hp.n - static_cast<std::size_t>(std::popcount(w)), static_cast<std::size_t>(paths.longest[w])};
}

Report tauvel_check(const Presentation& qaff) {
  const HPrimePoset hp = hprime_poset(qaff);
  const std::size_t n = hp.n;
  const std::uint32_t total = 1u << n;
  Report report("Tauvel height formula");
  std::vector<Paths> paths;
  for (std::uint32_t w = 0; w < total; ++w) paths.push_back(paths_from(hp.poset, w));
  for (std::uint32_t w = 0; w < total; ++w) {
    const std::size_t gk = n - static_cast<std::size_t>(std::popcount(w));
    const long height = paths[0].longest[w];
    report.add("height + GK = " + std::to_string(n) + " at W = " + subset_label(w, n),
               height >= 0 && static_cast<std::size_t>(height) + gk == n,
               "height " + std::to_string(height) + ", GK " + std::to_string(gk));
  }
  std::size_t pairs = 0;
  std::string bad;
  for (std::uint32_t w = 0; w < total; ++w)
    for (std::uint32_t w2 = 0; w2 < total; ++w2) {
      if ((w & w2) != w) continue;
      ++pairs;
      const long h = paths[w].longest[w2];
      const long gk = static_cast<long>(n) - std::popcount(w);
      const long gk2 = static_cast<long>(n) - std::popcount(w2);
      if ((h < 0 || h + gk2 != gk) && bad.empty()) bad = subset_label(w, n) + " in " + subset_label(w2, n);
    }
  report.add("height(W'/W) + GK(W') = GK(W) on " + std::to_string(pairs) + " pairs", bad.empty(), bad);
  return report;
}

CatenaryResult catenary_check(const FinitePoset& poset) {
  for (std::size_t a = 0; a < poset.size(); ++a) {
    const Paths p = paths_from(poset, a);
    for (std::size_t b = 0; b < poset.size(); ++b) {
      if (!poset.less(a, b) || p.shortest[b] == p.longest[b]) continue;
      return {false, ChainWitness{a, b, chain(a, b, p.prev_short), chain(a, b, p.prev_long)}};
    }
  }
  return {true, std::nullopt};
}

Report normal_separation_check(const Presentation& qaff) {
  const HPrimePoset hp = hprime_poset(qaff);
  const std::size_t n = hp.n;
  const std::uint32_t total = 1u << n;
  Report report("normal separation");
  std::map<std::pair<std::uint32_t, std::size_t>, std::pair<bool, std::string>> cache;
  for (std::uint32_t w = 0; w < total; ++w)
    for (std::uint32_t w2 = 0; w2 < total; ++w2) {
      if ((w & w2) != w || w == w2) continue;
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(w2 & ~w));
      const std::uint32_t outside = (total - 1) & ~w;
      auto key = std::make_pair(outside, j);
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
          if (outside & (1u << i)) keep.push_back(i);
        std::vector<std::string> names;
        std::vector<std::vector<CoeffRat>> lambda;
        std::size_t pos = 0;
        for (std::size_t r = 0; r < keep.size(); ++r) {
          names.push_back(qaff.names()[keep[r]]);
          if (keep[r] == j) pos = r;
          std::vector<CoeffRat> row;
          for (std::size_t c : keep) row.push_back(qaff.lambda(keep[r], c));
          lambda.push_back(std::move(row));
        }
        Ring quotient(quantum_affine(qaff.name() + "/" + subset_label(w, n), names, lambda));
        std::string why;
        const bool ok = verify_normal(quotient, quotient.generator(pos), default_bound(), 0, &why).has_value();
        it = cache.emplace(key, std::make_pair(ok, why)).first;
      }
      report.add(subset_label(w, n) + " < " + subset_label(w2, n) + ": " + qaff.names()[j] + " normal mod W",
                 it->second.first, it->second.second);
    }
  return report;
}

}  // namespace oreforge
