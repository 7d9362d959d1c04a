#include <gtest/gtest.h>

#include "oreforge/cauchon.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/registry.hpp"
#include "oreforge/ring.hpp"
#include "testkit.hpp"

using namespace oreforge;

namespace {

const CoeffRat q = CoeffRat::q();

const std::vector<std::string> kTowers = {"quantum-plane", "quantum-weyl", "qmat2"};

}  // namespace

TEST(Theta, WeylGenerator) {
  const Ring weyl(builtin("quantum-weyl"));
  const Localization loc(weyl, 1, 32);
  const ThetaImage img = cauchon_theta(loc, weyl.generator(0), 32);
  LaurentElement expected(2, 1);
  expected.add_term({1, 0}, CoeffRat(1));
  expected.add_term({0, -1}, (q - CoeffRat(1)).inverse());
  EXPECT_EQ(img.value, expected);
  EXPECT_EQ(img.s_min, 1u);
}

TEST(Theta, QuantumMatrixCorner) {
  const Ring m2(builtin("qmat2"));
  const Localization loc(m2, 3, 32);
  const ThetaImage img = cauchon_theta(loc, m2.generator(0), 32);
  LaurentElement expected(4, 3);
  expected.add_term({1, 0, 0, 0}, CoeffRat(1));
  expected.add_term({0, 1, 1, -1}, -q);
  EXPECT_EQ(img.value, expected);
  EXPECT_EQ(img.s_min, 1u);
  EXPECT_EQ(loc.format(img.value), "x11 - q*x12*x21*x22^-1");
  // theta(x11) x22 is the quantum determinant.
  EXPECT_EQ(*loc.mul(img.value, loc.power(1)).to_element(), m2.parse("x11 x22 - q*x12 x21"));
}

TEST(Theta, FixesElementsKilledByDelta) {
  const Ring m2(builtin("qmat2"));
  const Localization loc(m2, 3, 32);
  for (const char* text : {"x12", "x21", "x12 x21^2", "3", "q*x12^2"}) {
    const Element a = m2.parse(text);
    const ThetaImage img = cauchon_theta(loc, a, 32);
    EXPECT_EQ(img.value, loc.lift(a)) << text;
    EXPECT_EQ(img.s_min, 0u);
  }
  EXPECT_THROW(cauchon_theta(loc, m2.generator(3), 32), PreconditionError);
  EXPECT_THROW(cauchon_theta(loc, m2.zero(), 32), PreconditionError);
}

TEST(Theta, HomomorphismExamples) {
  const Ring weyl(builtin("quantum-weyl"));
  const Localization lw(weyl, 1, 32);
  EXPECT_TRUE(verify_theta_homomorphism(lw, weyl.one(), weyl.one(), 32));
  EXPECT_TRUE(verify_theta_homomorphism(lw, weyl.generator(0), weyl.generator(0), 32));
  const Ring m2(builtin("qmat2"));
  const Localization lm(m2, 3, 32);
  EXPECT_TRUE(verify_theta_homomorphism(lm, m2.generator(0), m2.generator(1), 32));
}

TEST(Theta, AlphaCommutation) {
  const Ring weyl(builtin("quantum-weyl"));
  const Localization lw(weyl, 1, 32);
  EXPECT_TRUE(verify_alpha_commutation(lw, weyl.one(), 32));
  EXPECT_TRUE(verify_alpha_commutation(lw, weyl.generator(0), 32));
  // eta = q: X theta(x1) = q theta(x1) X, computed directly.
  const LaurentElement t = cauchon_theta(lw, weyl.generator(0), 32).value;
  EXPECT_EQ(lw.mul(lw.power(1), t), q * lw.mul(t, lw.power(1)));
  const Ring m2(builtin("qmat2"));
  const Localization lm(m2, 3, 32);
  EXPECT_TRUE(verify_alpha_commutation(lm, m2.generator(0), 32));
  const LaurentElement d = cauchon_theta(lm, m2.generator(0), 32).value;
  EXPECT_EQ(lm.mul(lm.power(1), d), lm.mul(d, lm.power(1)));
  EXPECT_THROW(verify_alpha_commutation(lm, m2.parse("x11 + x12"), 32), PreconditionError);
}

TEST(ThetaProperty, Homomorphism) {
  testkit::Rng rng(testkit::kSeed);
  for (const auto& name : kTowers) {
    const Ring ring(builtin(name));
    const std::size_t top = ring.size() - 1;
    const Localization loc(ring, top, 32);
    for (int t = 0; t < 100; ++t) {
      const int da = testkit::uniform(rng, 0, 3);
      const Element a = testkit::random_element(rng, ring.size(), top, da, 2);
      const Element b = testkit::random_element(rng, ring.size(), top, 3 - da, 2);
      EXPECT_TRUE(verify_theta_homomorphism(loc, a, b, 32)) << name << " " << ring.format(a) << " | " << ring.format(b);
      // Additivity, checked independently of the product.
      const Element sum = a + b;
      if (!sum.is_zero())
        EXPECT_EQ(cauchon_theta(loc, sum, 32).value, cauchon_theta(loc, a, 32).value + cauchon_theta(loc, b, 32).value);
    }
  }
}

TEST(ThetaProperty, MinimalPowerOfX) {
  testkit::Rng rng(testkit::kSeed + 1);
  for (const auto& name : kTowers) {
    const Ring ring(builtin(name));
    const std::size_t top = ring.size() - 1;
    const Localization loc(ring, top, 32);
    for (int t = 0; t < 60; ++t) {
      const Element a = testkit::random_eigenvector(rng, ring.size(), top, 4);
      const ThetaImage img = cauchon_theta(loc, a, 32);
      const std::size_t s = ring.delta_nilpotence_order(top, a, 32);
      EXPECT_EQ(img.s_min, s);
      EXPECT_TRUE(loc.mul(img.value, loc.power(static_cast<long>(s))).is_polynomial());
      if (s > 0) EXPECT_FALSE(loc.mul(img.value, loc.power(static_cast<long>(s) - 1)).is_polynomial());
    }
  }
}

TEST(ThetaProperty, InjectiveOnSamples) {
  testkit::Rng rng(testkit::kSeed + 2);
  for (const auto& name : kTowers) {
    const Ring ring(builtin(name));
    const std::size_t top = ring.size() - 1;
    const Localization loc(ring, top, 32);
    for (int t = 0; t < 60; ++t) {
      const Element a = testkit::random_element(rng, ring.size(), top, 3);
      const Element b = testkit::random_element(rng, ring.size(), top, 3);
      if (a == b) continue;
      EXPECT_FALSE(cauchon_theta(loc, a - b, 32).value.is_zero());
      EXPECT_NE(cauchon_theta(loc, a, 32).value, cauchon_theta(loc, b, 32).value);
    }
  }
}

TEST(ThetaProperty, TorusEquivariance) {
  testkit::Rng rng(testkit::kSeed + 3);
  for (const auto& name : kTowers) {
    const Ring ring(builtin(name));
    const Presentation& p = ring.presentation();
    const std::size_t top = ring.size() - 1;
    const Localization loc(ring, top, 32);
    for (int t = 0; t < 40; ++t) {
      const Element a = testkit::random_eigenvector(rng, ring.size(), top, 3);
      for (const auto& h : p.h()) {
        const LaurentElement lhs = loc.apply_torus(h, cauchon_theta(loc, a, 32).value);
        const LaurentElement rhs = cauchon_theta(loc, ring.apply_torus(h, a), 32).value;
        EXPECT_EQ(lhs, rhs) << name;
      }
    }
  }
}

TEST(Deletion, QuantumMatrices) {
  const Presentation m2 = builtin("qmat2");
  const DeletionStep step = delete_top_derivation(m2, 3, 32);
  EXPECT_FALSE(step.trivial);
  EXPECT_TRUE(step.checks.passed()) << step.checks.first_failure();
  EXPECT_FALSE(step.after.has_any_delta());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(step.after.lambda(i, j), m2.lambda(i, j));
  EXPECT_EQ(step.images.size(), 3u);
  EXPECT_EQ(step.images.at(0).s_min, 1u);
  const auto doc = step.to_json();
  EXPECT_EQ(doc["images"]["x11"], "x11 - q*x12*x21*x22^-1");
  EXPECT_EQ(doc["level"], 4);
}

TEST(Deletion, WeylGivesQuantumPlane) {
  const auto steps = deletion_sequence(builtin("quantum-weyl"), 32);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_FALSE(steps[0].trivial);
  const Presentation& out = steps[0].after;
  EXPECT_FALSE(out.has_any_delta());
  EXPECT_EQ(out.lambda(1, 0), q);
  EXPECT_TRUE(validate_structure(out).passed());
}

TEST(Deletion, SequenceOnQuantumMatrices) {
  const auto steps = deletion_sequence(builtin("qmat2"), 32);
  ASSERT_EQ(steps.size(), 3u);
  std::size_t nontrivial = 0;
  for (const auto& s : steps) {
    nontrivial += s.trivial ? 0 : 1;
    EXPECT_TRUE(s.checks.passed());
  }
  EXPECT_EQ(nontrivial, 1u);
  EXPECT_FALSE(steps[0].trivial);
  EXPECT_EQ(steps[0].level, 3u);
  const Presentation& out = steps.back().after;
  EXPECT_FALSE(out.has_any_delta());
  EXPECT_TRUE(validate_structure(out).passed());
}

TEST(Deletion, QuantumAffineIsFixed) {
  const Presentation a = builtin("qaffine-4");
  const auto steps = deletion_sequence(a, 32);
  for (const auto& s : steps) EXPECT_TRUE(s.trivial);
  EXPECT_EQ(presentation_to_json(steps.back().after), presentation_to_json(a));
  const DeletionStep same = delete_top_derivation(a, 3, 32);
  EXPECT_TRUE(same.trivial);
  EXPECT_EQ(presentation_to_json(same.after), presentation_to_json(a));
}

TEST(Deletion, FlippedSignTowerAlsoDeletes) {
  Presentation::Data d = builtin("qmat2").data();
  d.delta.insert_or_assign(DeltaKey{3, 0}, Element::monomial({0, 1, 1, 0}, q - q.inverse()));
  const DeletionStep step = delete_top_derivation(Presentation(std::move(d)), 3, 32);
  EXPECT_TRUE(step.checks.passed());
}
