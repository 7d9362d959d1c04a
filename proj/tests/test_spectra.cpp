#include <gtest/gtest.h>

#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "oreforge/cauchon.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/registry.hpp"
#include "oreforge/spectra.hpp"
#include "testkit.hpp"

using namespace oreforge;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool valid_cover_chain(const FinitePoset& p, const std::vector<std::size_t>& chain, std::size_t lo, std::size_t hi) {
  if (chain.empty() || chain.front() != lo || chain.back() != hi) return false;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& c = p.covers(chain[k]);
    if (std::find(c.begin(), c.end(), chain[k + 1]) == c.end()) return false;
  }
  return true;
}

// Catenarity from scratch: closure by Floyd-Warshall, covers by definition,
// then every saturated chain length between each comparable pair.
bool brute_force_catenary(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (auto [a, b] : rel) lt[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (lt[i][k] && lt[k][j]) lt[i][j] = true;
  auto covers = [&](std::size_t a, std::size_t b) {
    if (!lt[a][b]) return false;
    for (std::size_t c = 0; c < n; ++c)
      if (lt[a][c] && lt[c][b]) return false;
    return true;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt[a][b]) continue;
      std::set<std::size_t> lengths;
      auto walk = [&](auto&& self, std::size_t cur, std::size_t len) -> void {
        if (cur == b) {
          lengths.insert(len);
          return;
        }
        for (std::size_t nx = 0; nx < n; ++nx)
          if (covers(cur, nx) && (nx == b || lt[nx][b])) self(self, nx, len + 1);
      };
      walk(walk, a, 0);
      if (lengths.size() > 1) return false;
    }
  return true;
}

}  // namespace

TEST(HPrimes, LatticeSizes) {
  EXPECT_EQ(hprime_poset(builtin("qaffine-1")).poset.size(), 2u);
  const HPrimePoset b3 = hprime_poset(builtin("qaffine-3"));
  EXPECT_EQ(b3.poset.size(), 8u);
  EXPECT_EQ(b3.poset.label(5), "{1,3}");
  EXPECT_EQ(b3.poset.label(0), "{}");
  const auto steps = deletion_sequence(builtin("qmat2"), 32);
  EXPECT_EQ(hprime_poset(steps.back().after).poset.size(), 16u);
}

TEST(HPrimes, Preconditions) {
  EXPECT_THROW(hprime_poset(builtin("quantum-weyl")), PreconditionError);
  Presentation::Data d = builtin("qaffine-2").data();
  const CoeffRat two(2);
  d.lambda[1][0] = two;
  d.lambda[0][1] = two.inverse();
  try {
    hprime_poset(Presentation(std::move(d)));
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported torus"), std::string::npos);
  }
}

TEST(HPrimes, GkAndHeight) {
  const HPrimePoset b4 = hprime_poset(builtin("qaffine-4"));
  EXPECT_EQ(gk_and_height(b4, 0).gk, 4u);
  EXPECT_EQ(gk_and_height(b4, 0).height, 0u);
  const auto w23 = gk_and_height(b4, 0b0110);
  EXPECT_EQ(w23.gk, 2u);
  EXPECT_EQ(w23.height, 2u);
  EXPECT_EQ(gk_and_height(b4, 0b1111).gk, 0u);
  EXPECT_EQ(gk_and_height(b4, 0b1111).height, 4u);
  EXPECT_THROW(gk_and_height(b4, 16), PreconditionError);
}

TEST(Tauvel, QuantumAffineSpaces) {
  for (int n = 1; n <= 6; ++n) {
    const Report r = tauvel_check(builtin("qaffine-" + std::to_string(n)));
    EXPECT_TRUE(r.passed()) << n << ": " << r.first_failure();
    EXPECT_EQ(r.entries().size(), (1u << n) + 1) << n;
  }
}

TEST(Tauvel, DeletionOutputs) {
  for (const std::string name : {"quantum-weyl", "qmat2", "quantum-plane"}) {
    const auto steps = deletion_sequence(builtin(name), 32);
    EXPECT_TRUE(tauvel_check(steps.back().after).passed()) << name;
  }
}

TEST(Catenary, BooleanLattices) {
  for (int n = 1; n <= 6; ++n) {
    const CatenaryResult r = catenary_check(hprime_poset(builtin("qaffine-" + std::to_string(n))).poset);
    EXPECT_TRUE(r.catenary);
    EXPECT_FALSE(r.witness.has_value());
  }
}

TEST(Catenary, SeededCounterexample) {
  const FinitePoset p = FinitePoset::parse(read_file(std::string(ORE_DATA_DIR) + "/posets/noncatenary.txt"));
  EXPECT_EQ(p.size(), 5u);
  const CatenaryResult r = catenary_check(p);
  ASSERT_FALSE(r.catenary);
  ASSERT_TRUE(r.witness.has_value());
  const ChainWitness& w = *r.witness;
  EXPECT_EQ(p.label(w.low), "0");
  EXPECT_EQ(p.label(w.high), "1");
  EXPECT_TRUE(valid_cover_chain(p, w.shorter, w.low, w.high));
  EXPECT_TRUE(valid_cover_chain(p, w.longer, w.low, w.high));
  EXPECT_EQ(w.shorter.size(), 3u);
  EXPECT_EQ(w.longer.size(), 4u);
  EXPECT_EQ(p.label(w.shorter[1]), "c");
}

TEST(Catenary, Chains) {
  const FinitePoset p = FinitePoset::parse("a < b\nb < c\n# trailing comment\n\nc < d\n");
  EXPECT_TRUE(catenary_check(p).catenary);
  EXPECT_TRUE(p.less(*p.find("a"), *p.find("d")));
  EXPECT_EQ(p.covers(*p.find("a")).size(), 1u);
}

TEST(Poset, ParseAndExport) {
  const FinitePoset p = FinitePoset::parse("x < y\ny < z\nx < z\n");
  EXPECT_EQ(p.to_text(), "x < y\ny < z\n");
  const FinitePoset again = FinitePoset::parse(p.to_text());
  EXPECT_EQ(again.to_text(), p.to_text());
  EXPECT_THROW(FinitePoset::parse("x y\n"), ParseError);
  EXPECT_THROW(FinitePoset::parse("x < \n"), ParseError);
  EXPECT_THROW(FinitePoset::parse("x < y\ny < x\n"), PreconditionError);
}

TEST(CatenaryProperty, AgreesWithBruteForce) {
  testkit::Rng rng(testkit::kSeed);
  int noncatenary = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(testkit::uniform(rng, 2, 7));
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    std::ostringstream text;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (testkit::uniform(rng, 0, 2) == 0) {
          rel.emplace_back(a, b);
          text << "e" << a << " < e" << b << "\n";
        }
    if (rel.empty()) continue;
    const FinitePoset p = FinitePoset::parse(text.str());
    // Relabel the brute-force input to the parser's element order.
    std::vector<std::pair<std::size_t, std::size_t>> mapped;
    for (auto [a, b] : rel)
      mapped.emplace_back(*p.find("e" + std::to_string(a)), *p.find("e" + std::to_string(b)));
    const bool expected = brute_force_catenary(p.size(), mapped);
    const CatenaryResult r = catenary_check(p);
    EXPECT_EQ(r.catenary, expected) << text.str();
    if (!r.catenary) {
      ++noncatenary;
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_TRUE(valid_cover_chain(p, r.witness->shorter, r.witness->low, r.witness->high));
      EXPECT_TRUE(valid_cover_chain(p, r.witness->longer, r.witness->low, r.witness->high));
      EXPECT_LT(r.witness->shorter.size(), r.witness->longer.size());
    }
  }
  EXPECT_GT(noncatenary, 0);
}

TEST(NormalSeparation, SmallCases) {
  const Report two = normal_separation_check(builtin("qaffine-2"));
  EXPECT_TRUE(two.passed());
  EXPECT_EQ(two.entries().size(), 5u);
  EXPECT_EQ(two.entries().front().check, "{} < {1}: x1 normal mod W");
  const Report four = normal_separation_check(builtin("qaffine-4"));
  EXPECT_TRUE(four.passed());
  EXPECT_EQ(four.entries().size(), 65u);
}

TEST(NormalSeparation, UpToFive) {
  for (int n = 1; n <= 5; ++n) {
    const Report r = normal_separation_check(builtin("qaffine-" + std::to_string(n)));
    EXPECT_TRUE(r.passed()) << n << ": " << r.first_failure();
    // Comparable proper pairs in B_n: 3^n - 2^n.
    std::size_t pairs = 1;
    std::size_t subsets = 1;
    for (int k = 0; k < n; ++k) {
      pairs *= 3;
      subsets *= 2;
    }
    EXPECT_EQ(r.entries().size(), pairs - subsets);
  }
}
