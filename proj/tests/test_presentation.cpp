#include <gtest/gtest.h>

#include "oreforge/errors.hpp"
#include "oreforge/registry.hpp"
#include "oreforge/ring.hpp"
#include "testkit.hpp"

using namespace oreforge;

namespace {

const CoeffRat q = CoeffRat::q();

const std::vector<std::string> kShipped = {"quantum-plane", "quantum-weyl", "qmat2", "qaffine-1", "qaffine-4",
                                           "qaffine-6"};

std::string data_file(const std::string& rel) { return std::string(ORE_DATA_DIR) + "/" + rel; }

bool has_failure_containing(const Report& r, const std::string& text) {
  for (const auto& e : r.entries())
    if (!e.passed && (e.detail.find(text) != std::string::npos || e.check.find(text) != std::string::npos))
      return true;
  return false;
}

Presentation qmat2_with_flipped_delta() {
  Presentation::Data d = builtin("qmat2").data();
  d.delta.insert_or_assign(DeltaKey{3, 0}, Element::monomial({0, 1, 1, 0}, q - q.inverse()));
  return Presentation(std::move(d));
}

}  // namespace

TEST(Presentation, ShippedExamplesPassEveryCheck) {
  for (const auto& name : kShipped) {
    const Presentation p = builtin(name);
    EXPECT_TRUE(validate_structure(p).passed()) << name << ": " << validate_structure(p).first_failure();
    EXPECT_TRUE(verify_local_nilpotence(p, 32).report.passed()) << name;
    EXPECT_TRUE(verify_sigma_delta_relation(p)) << name;
    EXPECT_TRUE(verify_confluence(p, 4, testkit::kSeed).passed()) << name;
    EXPECT_TRUE(check_presentation(p, 32, testkit::kSeed).passed()) << name;
  }
}

TEST(Presentation, QuantumPlaneRootOfUnity) {
  Presentation::Data d = builtin("quantum-plane").data();
  d.h[1] = TorusElement{{q, CoeffRat(1)}};
  const Report r = validate_structure(Presentation(std::move(d)));
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(has_failure_containing(r, "q_j is a root of unity"));
}

TEST(Presentation, SeededInvalidFiles) {
  const Report unity = check_presentation(load_presentation(data_file("invalid/root_of_unity.json")), 32, 1);
  EXPECT_TRUE(has_failure_containing(unity, "q_j is a root of unity"));
  const Report nil = check_presentation(load_presentation(data_file("invalid/non_nilpotent.json")), 32, 1);
  EXPECT_TRUE(has_failure_containing(nil, "non-nilpotent delta"));
  const Report weight = check_presentation(load_presentation(data_file("invalid/weight_inconsistent.json")), 32, 1);
  EXPECT_TRUE(has_failure_containing(weight, "weight-inconsistent delta"));
}

TEST(Presentation, NilpotenceOrders) {
  const auto weyl = verify_local_nilpotence(builtin("quantum-weyl"), 32);
  EXPECT_EQ(weyl.orders.at({1, 0}), 1u);
  const auto m2 = verify_local_nilpotence(builtin("qmat2"), 32);
  EXPECT_EQ(m2.orders.at({3, 0}), 1u);
  EXPECT_EQ(m2.orders.at({3, 1}), 0u);
  EXPECT_EQ(m2.orders.at({3, 2}), 0u);

  // delta_2(x_1) = x_1 never dies.
  Presentation::Data d = builtin("quantum-plane").data();
  d.delta.emplace(DeltaKey{1, 0}, Element::generator(2, 0));
  const auto bad = verify_local_nilpotence(Presentation(std::move(d)), 10);
  EXPECT_FALSE(bad.report.passed());
  EXPECT_TRUE(has_failure_containing(bad.report, "non-nilpotent delta"));
}

TEST(Presentation, SigmaDeltaRelation) {
  EXPECT_TRUE(verify_sigma_delta_relation(builtin("quantum-weyl")));
  EXPECT_TRUE(verify_sigma_delta_relation(builtin("qaffine-5")));
  EXPECT_TRUE(verify_sigma_delta_relation(builtin("qmat2")));
  // q_2 = q^-1 for the Weyl algebra.
  EXPECT_EQ(builtin("quantum-weyl").q(1), q.inverse());
  EXPECT_EQ(builtin("qmat2").q(3), CoeffRat::q_power(-2));
}

TEST(Presentation, ConfluenceDetectsSeededFailure) {
  const Presentation bad = load_presentation(data_file("invalid/nonconfluent.json"));
  const Report r = verify_confluence(bad, 4, testkit::kSeed);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(has_failure_containing(r, "overlap x3 x2 x1"));
}

TEST(Presentation, FlippedSignIsStillConsistent) {
  // x22 -> -x22 maps the flipped relation onto the shipped one, so this tower
  // is a genuine CGL extension and every check must pass.
  const Presentation flipped = qmat2_with_flipped_delta();
  EXPECT_TRUE(check_presentation(flipped, 32, testkit::kSeed).passed());
  const Ring a(flipped);
  const Ring b(builtin("qmat2"));
  auto phi = [](const Element& e) {
    Element r(e.nvars());
    for (const auto& [m, c] : e) r.add_term(m, m[3] % 2 == 0 ? c : -c);
    return r;
  };
  testkit::Rng rng(testkit::kSeed);
  for (int t = 0; t < 50; ++t) {
    const Element u = testkit::random_element(rng, 4, 4, 3);
    const Element v = testkit::random_element(rng, 4, 4, 3);
    EXPECT_EQ(phi(a.mul(u, v)), b.mul(phi(u), phi(v)));
  }
}

TEST(Presentation, Subalgebras) {
  const Presentation m2 = builtin("qmat2");
  EXPECT_EQ(presentation_to_json(subalgebra(m2, 4)), presentation_to_json(m2));
  const Presentation three = subalgebra(m2, 3);
  EXPECT_EQ(three.size(), 3u);
  EXPECT_FALSE(three.has_any_delta());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(three.lambda(i, j), m2.lambda(i, j));
  const Presentation one = subalgebra(builtin("quantum-weyl"), 1);
  EXPECT_EQ(one.size(), 1u);
  for (const auto& name : kShipped) {
    const Presentation p = builtin(name);
    for (std::size_t k = 1; k <= p.size(); ++k) EXPECT_TRUE(validate_structure(subalgebra(p, k)).passed());
  }
  EXPECT_THROW(subalgebra(m2, 0), PreconditionError);
  EXPECT_THROW(subalgebra(m2, 5), PreconditionError);
}

TEST(Presentation, DeltaWeightsByDirectScan) {
  for (const auto& name : kShipped) {
    const Presentation p = builtin(name);
    for (const auto& [key, value] : p.delta_entries())
      for (const auto& [m, c] : value) EXPECT_EQ(p.weight_of(m), p.weights()[key.first] + p.weights()[key.second]);
  }
}

TEST(Presentation, JsonRoundTrip) {
  for (const auto& name : kShipped) {
    const Presentation p = builtin(name);
    const auto doc = presentation_to_json(p);
    const Presentation back = presentation_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(presentation_to_json(back), doc) << name;
    EXPECT_EQ(back.delta_entries(), p.delta_entries());
  }
  const Presentation file = load_presentation(data_file("presentations/qmat2.json"));
  EXPECT_EQ(file.delta_entries(), builtin("qmat2").delta_entries());
  EXPECT_EQ(file.filtration(), std::optional<std::vector<int>>(std::vector<int>{2, 1, 1, 2}));
}

TEST(Presentation, FileErrors) {
  auto doc = presentation_to_json(builtin("quantum-weyl"));
  auto broken = doc;
  broken["delta"][0]["value"] = "x1 + z";
  EXPECT_THROW(presentation_from_json(broken), ParseError);
  broken = doc;
  broken["delta"][0]["i"] = 2;
  EXPECT_THROW(presentation_from_json(broken), ParseError);
  broken = doc;
  broken.erase("lambda");
  EXPECT_THROW(presentation_from_json(broken), ParseError);
  broken = doc;
  broken["generators"] = {"x1", "q"};
  EXPECT_THROW(presentation_from_json(broken), ParseError);
  EXPECT_THROW(load_presentation(data_file("missing.json")), ParseError);
}

TEST(Presentation, EigenWeights) {
  const Presentation m2 = builtin("qmat2");
  const Ring ring(m2);
  const auto det = eigen_weight(m2, ring.parse("x11 x22 - q*x12 x21"));
  ASSERT_TRUE(det.has_value());
  EXPECT_EQ(det->exponents, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_FALSE(eigen_weight(m2, ring.parse("x11 + x12")).has_value());
  EXPECT_FALSE(eigen_weight(m2, ring.zero()).has_value());
  // chi(h_4) on the generators is (1, q^-1, q^-1, q^-2).
  const TorusElement& h4 = m2.h()[3];
  EXPECT_EQ(m2.character(0, h4), CoeffRat(1));
  EXPECT_EQ(m2.character(1, h4), q.inverse());
  EXPECT_EQ(m2.character(2, h4), q.inverse());
  EXPECT_EQ(m2.character(3, h4), CoeffRat::q_power(-2));
}
