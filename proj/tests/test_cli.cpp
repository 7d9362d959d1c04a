#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "oreforge/cli.hpp"
#include "oreforge/registry.hpp"
#include "oreforge/ring.hpp"

using namespace oreforge;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& rel) { return std::string(ORE_DATA_DIR) + "/" + rel; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, CheckBuiltins) {
  for (const std::string name : {"quantum-plane", "quantum-weyl", "qmat2", "qaffine-1", "qaffine-6"}) {
    const CliRun r = run({"check", name});
    EXPECT_EQ(r.code, 0) << name << "\n" << r.out << r.err;
  }
}

TEST(Cli, CheckInvalidFiles) {
  const CliRun unity = run({"check", data("invalid/root_of_unity.json")});
  EXPECT_EQ(unity.code, 1);
  EXPECT_TRUE(contains(unity.out, "q_j is a root of unity"));
  const CliRun nil = run({"check", data("invalid/non_nilpotent.json")});
  EXPECT_EQ(nil.code, 1);
  EXPECT_TRUE(contains(nil.out, "non-nilpotent delta"));
  const CliRun weight = run({"check", data("invalid/weight_inconsistent.json")});
  EXPECT_EQ(weight.code, 1);
  EXPECT_TRUE(contains(weight.out, "weight-inconsistent delta"));
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "no-such-example"}).code, 2);
  EXPECT_EQ(run({"nf", "qmat2", "x11 + y"}).code, 2);
  EXPECT_EQ(run({"theta", "qmat2", "-j", "9", "x11"}).code, 2);
  EXPECT_EQ(run({"innerd", "qmat2", "x12x21"}).code, 2);
  EXPECT_EQ(run({"check", "qaffine-9"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ResourceBound) {
  const CliRun r = run({"theta", "qmat2", "-j", "4", "x11^2", "--bound", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(run({"theta", "qmat2", "-j", "4", "x11^2", "--bound", "2"}).code, 0);
}

TEST(Cli, NormalForm) {
  const CliRun r = run({"nf", "qmat2", "x22x11"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x11*x22 - (q^2 - 1)/q*x12*x21\n");
  EXPECT_EQ(run({"nf", "qmat2", "-x11"}).out, "-x11\n");
}

TEST(Cli, Theta) {
  const CliRun r = run({"theta", "qmat2", "-j", "4", "x11"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x11 - q*x12*x21*x22^-1\ns_min = 1\n");
}

TEST(Cli, DeleteAndNormal) {
  const CliRun del = run({"delete", "qmat2", "--json"});
  EXPECT_EQ(del.code, 0);
  const auto doc = nlohmann::json::parse(del.out);
  EXPECT_TRUE(doc["final"]["delta"].empty());
  EXPECT_EQ(run({"delete", "quantum-weyl", "--all"}).code, 0);

  const CliRun normal = run({"normal", "quantum-weyl", "x1"});
  EXPECT_EQ(normal.code, 0);
  EXPECT_TRUE(contains(normal.out, "x = x1*x2 + 1/(q - 1)"));
  EXPECT_EQ(run({"normal", "quantum-weyl", "x1", "--verify"}).code, 1);
}

TEST(Cli, InnerDerivation) {
  const CliRun r = run({"innerd", "quantum-weyl", "x1", "--from-monic", "x1", "-1/(1-q)", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "constructions agree: yes"));
  const CliRun m = run({"innerd", "qmat2", "x11", "--from-monic", "x11", "-q*x12x21", "1"});
  EXPECT_EQ(m.code, 0) << m.out << m.err;
}

TEST(Cli, Spectra) {
  const CliRun r = run({"spectra", "qaffine-4", "--tauvel"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "16/16"));
  EXPECT_EQ(run({"spectra", "qaffine-3", "--catenary"}).code, 0);
  EXPECT_EQ(run({"spectra", "qaffine-3", "--normal-sep"}).code, 0);
  EXPECT_EQ(run({"spectra", "qaffine-1", "--poset", data("posets/noncatenary.txt")}).code, 1);
  EXPECT_EQ(run({"spectra", "quantum-weyl"}).code, 2);
}

TEST(Cli, GradeAndExamples) {
  EXPECT_EQ(run({"grade", "qmat2"}).code, 0);
  const CliRun ex = run({"examples"});
  EXPECT_EQ(ex.code, 0);
  EXPECT_TRUE(contains(ex.out, "qmat2"));
}

TEST(Cli, JsonElementsRoundTrip) {
  const Ring m2(builtin("qmat2"));
  const auto nf = nlohmann::json::parse(run({"--json", "nf", "qmat2", "x22^2 x11 x21"}).out);
  const Element e = m2.parse(nf["normal_form"].get<std::string>());
  EXPECT_EQ(e, m2.parse("x22^2 x11 x21"));

  const auto th = nlohmann::json::parse(run({"--json", "theta", "qmat2", "-j", "4", "x11^2"}).out);
  const Localization loc(m2, 3, 32);
  const LaurentElement back = loc.parse(th["theta"].get<std::string>());
  EXPECT_EQ(loc.format(back), th["theta"].get<std::string>());

  const auto normal = nlohmann::json::parse(run({"--json", "normal", "qmat2", "x11"}).out);
  EXPECT_EQ(m2.parse(normal["certificate"]["element"].get<std::string>()), m2.parse("x11 x22 - q*x12 x21"));

  const auto del = nlohmann::json::parse(run({"--json", "delete", "qmat2"}).out);
  const Presentation after = presentation_from_json(del["final"]);
  EXPECT_EQ(presentation_to_json(after), del["final"]);
}

TEST(Cli, DeterministicForFixedSeed) {
  const CliRun a = run({"--seed", "7", "--json", "check", "qmat2"});
  const CliRun b = run({"--seed", "7", "--json", "check", "qmat2"});
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run({"--seed", "8", "--json", "check", "qmat2"});
  EXPECT_EQ(c.code, a.code);
}

TEST(Cli, ProcessExitCodes) {
  const std::string bin = ORE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("check quantum-weyl"), 0);
  EXPECT_EQ(status("check " + data("invalid/root_of_unity.json")), 1);
  EXPECT_EQ(status("nf qmat2 'x11 +'"), 2);
  EXPECT_EQ(status("theta qmat2 -j 4 'x11^2' --bound 1"), 3);
}
