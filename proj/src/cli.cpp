#include "oreforge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "oreforge/cauchon.hpp"
#include "oreforge/errors.hpp"
#include "oreforge/grfilt.hpp"
#include "oreforge/normal.hpp"
#include "oreforge/registry.hpp"
#include "oreforge/ring.hpp"
#include "oreforge/spectra.hpp"

namespace oreforge {

namespace {

using nlohmann::json;

struct Options {
  bool json_out = false;
  std::size_t bound = 0;
  std::uint64_t seed = 20240611;
};

struct Context {
  const Options& opt;
  std::ostream& out;
};

void emit(Context& ctx, const json& j, const std::string& text) {
  if (ctx.opt.json_out) {
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << text;
  }
}

int cmd_check(Context& ctx, const std::string& src) {
  const Presentation pres = resolve_presentation(src);
  const Report report = check_presentation(pres, ctx.opt.bound, ctx.opt.seed);
  json j = report.to_json();
  j["presentation"] = pres.name();
  emit(ctx, j, report.to_text());
  return report.passed() ? 0 : 1;
}

int cmd_nf(Context& ctx, const std::string& src, const std::string& text) {
  const Ring ring(resolve_presentation(src));
  const Element e = ring.parse(text);
  const std::string nf = ring.format(e);
  emit(ctx, {{"input", text}, {"normal_form", nf}}, nf + "\n");
  return 0;
}

std::size_t level_index(const Presentation& pres, int j) {
  if (j < 1 || static_cast<std::size_t>(j) > pres.size())
    throw PreconditionError("-j must be between 1 and " + std::to_string(pres.size()));
  return static_cast<std::size_t>(j - 1);
}

int cmd_theta(Context& ctx, const std::string& src, int j, const std::string& text) {
  const Ring ring(resolve_presentation(src));
  const std::size_t level = level_index(ring.presentation(), j);
  const Localization loc(ring, level, ctx.opt.bound);
  const Element a = ring.parse(text);
  const ThetaImage img = cauchon_theta(loc, a, ctx.opt.bound);
  const std::string value = loc.format(img.value);
  emit(ctx, {{"input", ring.format(a)}, {"theta", value}, {"s_min", img.s_min}, {"inverted", ring.presentation().names()[level]}},
       value + "\ns_min = " + std::to_string(img.s_min) + "\n");
  return 0;
}

std::string step_text(const DeletionStep& step) {
  std::ostringstream s;
  const auto& names = step.before.names();
  s << "level " << step.level + 1 << " (" << names[step.level] << "): " << (step.trivial ? "trivial" : "nontrivial")
    << "\n";
  if (!step.trivial)
    for (const auto& [i, img] : step.images)
      s << "  theta(" << names[i] << ") = " << img.value.to_string(names) << "   s_min = " << img.s_min << "\n";
  for (const auto& e : step.checks.entries()) s << (e.passed ? "  pass  " : "  FAIL  ") << e.check << "\n";
  return s.str();
}

std::string presentation_summary(const Presentation& pres) {
  std::ostringstream s;
  s << pres.name() << ": N = " << pres.size() << ", derivations: " << pres.delta_entries().size() << "\n";
  for (std::size_t j = 1; j < pres.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const CoeffRat& lam = pres.lambda(j, i);
      s << "  " << pres.names()[j] << "*" << pres.names()[i] << " = " << (lam.is_one() ? "" : lam.to_string() + "*")
        << pres.names()[i] << "*" << pres.names()[j];
      if (const Element* d = pres.delta(j, i)) s << " + (" << d->to_string(pres.names()) << ")";
      s << "\n";
    }
  return s.str();
}

int cmd_delete(Context& ctx, const std::string& src, bool all) {
  const Presentation pres = resolve_presentation(src);
  std::vector<DeletionStep> steps;
  if (all) {
    steps = deletion_sequence(pres, ctx.opt.bound);
  } else if (pres.size() > 1) {
    steps.push_back(delete_top_derivation(pres, pres.size() - 1, ctx.opt.bound));
  }
  const Presentation& final_pres = steps.empty() ? pres : steps.back().after;
  json j;
  j["steps"] = json::array();
  std::string text;
  for (const auto& step : steps) {
    j["steps"].push_back(step.to_json());
    text += step_text(step);
  }
  j["final"] = presentation_to_json(final_pres);
  text += "final presentation\n" + presentation_summary(final_pres);
  emit(ctx, j, text);
  return 0;
}

std::string certificate_text(const NormalCertificate& cert, const std::vector<std::string>& names) {
  std::ostringstream s;
  s << "x = " << cert.element.to_string(names) << "\n";
  for (std::size_t i = 0; i < cert.conjugation.size(); ++i)
    s << "  x*" << names[i] << " = (" << cert.conjugation[i].to_string(names) << ")*x\n";
  s << "  weight = (";
  for (std::size_t t = 0; t < cert.eigen_weight.exponents.size(); ++t)
    s << (t ? "," : "") << cert.eigen_weight.exponents[t];
  s << ")\n";
  return s.str();
}

int cmd_normal(Context& ctx, const std::string& src, const std::string& text, bool verify_only) {
  const Ring ring(resolve_presentation(src));
  const Presentation& pres = ring.presentation();
  const Element a = ring.parse(text);
  const std::size_t top = ring.size() - 1;
  json j;
  std::string out;
  std::optional<NormalCertificate> cert;
  if (!verify_only && top > 0 && a.involves_only_below(top)) {
    cert = construct_normal(ring, a, ctx.opt.bound);
    const CoeffRat eta = eta_of(pres, a);
    j["constructed_from"] = ring.format(a);
    j["eta"] = eta.to_string();
    out += "constructed from a = " + ring.format(a) + " (eta = " + eta.to_string() + ")\n";
    // Independent confirmation by the linear-algebra decision procedure.
    std::string why;
    const bool confirmed = verify_normal(ring, cert->element, ctx.opt.bound, 0, &why).has_value();
    j["independently_verified"] = confirmed;
    out += std::string("independent normality check: ") + (confirmed ? "pass" : "FAIL " + why) + "\n";
    if (!confirmed) {
      emit(ctx, j, out);
      return 1;
    }
  } else {
    std::string why;
    cert = verify_normal(ring, a, ctx.opt.bound, 0, &why);
    if (!cert) {
      j["normal"] = false;
      j["element"] = ring.format(a);
      j["reason"] = why;
      emit(ctx, j, ring.format(a) + " is not normal: " + why + "\n");
      return 1;
    }
  }
  j["normal"] = true;
  j["certificate"] = cert->to_json(pres.names());
  out += certificate_text(*cert, pres.names());
  const auto match = torus_conjugation_match(pres, *cert);
  j["torus_conjugation"] = match ? json(*match) : json(nullptr);
  if (match) {
    std::string exps;
    for (std::size_t t = 0; t < match->size(); ++t) exps += (t ? "," : "") + std::to_string((*match)[t]);
    out += "  conjugation equals the action of h = q^(" + exps + ")\n";
  } else {
    out += "  conjugation is not the action of an integer-power torus element (|a_t| <= 3)\n";
  }
  emit(ctx, j, out);
  return 0;
}

int cmd_innerd(Context& ctx, const std::string& src, const std::optional<std::string>& text,
               const std::vector<std::string>& monic) {
  const Ring ring(resolve_presentation(src));
  const auto& names = ring.presentation().names();
  json j;
  std::string out;
  std::vector<FractionElement> results;
  if (text) {
    const Element a = ring.parse(*text);
    results.push_back(inner_d_from_normal(ring, a, ctx.opt.bound));
    j["from_normal"] = results.back().to_string(names);
    out += "d (from normal a) = " + results.back().to_string(names) + "\n";
  }
  if (!monic.empty()) {
    if (monic.size() != 3) throw PreconditionError("--from-monic takes a_expr c_expr n");
    const Element a = ring.parse(monic[0]);
    const Element c = ring.parse(monic[1]);
    int n = 0;
    try {
      n = std::stoi(monic[2]);
    } catch (const std::exception&) {
      throw ParseError("--from-monic: n must be a positive integer", 0);
    }
    if (n <= 0) throw ParseError("--from-monic: n must be a positive integer", 0);
    results.push_back(inner_d_from_monic(ring, a, c, static_cast<unsigned>(n)));
    j["from_monic"] = results.back().to_string(names);
    out += "d (from monic element) = " + results.back().to_string(names) + "\n";
  }
  if (results.empty()) throw PreconditionError("innerd needs <expr> or --from-monic");
  bool ok = true;
  if (results.size() == 2) {
    const bool same = fractions_equal(ring, results[0], results[1]);
    j["constructions_agree"] = same;
    out += std::string("constructions agree: ") + (same ? "yes" : "NO") + "\n";
    ok = ok && same;
  }
  const bool inner = verify_inner(ring, results.front());
  j["verify_inner"] = inner;
  out += std::string("delta(r) = d r - sigma(r) d on all generators: ") + (inner ? "pass" : "FAIL") + "\n";
  ok = ok && inner;
  emit(ctx, j, out);
  return ok ? 0 : 1;
}

std::string count_line(const std::string& what, const Report& r) {
  return what + ": " + std::to_string(r.entries().size() - r.failures()) + "/" + std::to_string(r.entries().size()) +
         " pass\n";
}

int cmd_spectra(Context& ctx, const std::string& src, bool tauvel, bool catenary, bool normal_sep,
                const std::string& poset_file) {
  if (!tauvel && !catenary && !normal_sep) tauvel = catenary = normal_sep = true;
  json j;
  std::string out;
  bool ok = true;
  std::optional<Presentation> pres;
  auto qaff = [&]() -> const Presentation& {
    if (!pres) pres = resolve_presentation(src);
    return *pres;
  };
  if (tauvel) {
    const Report r = tauvel_check(qaff());
    j["tauvel"] = r.to_json();
    std::size_t primes = r.entries().size() - 1;
    std::size_t good = 0;
    for (std::size_t k = 0; k < primes; ++k) good += r.entries()[k].passed ? 1 : 0;
    out += "tauvel: " + std::to_string(good) + "/" + std::to_string(primes) + " H-primes pass; " +
           r.entries().back().check + ": " + (r.entries().back().passed ? "pass" : "FAIL") + "\n";
    ok = ok && r.passed();
  }
  if (catenary) {
    FinitePoset poset;
    if (!poset_file.empty()) {
      std::ifstream in(poset_file);
      if (!in) throw ParseError("cannot open poset file '" + poset_file + "'", 0);
      std::stringstream buf;
      buf << in.rdbuf();
      poset = FinitePoset::parse(buf.str());
    } else {
      poset = hprime_poset(qaff()).poset;
    }
    const CatenaryResult r = catenary_check(poset);
    json cj{{"catenary", r.catenary}, {"elements", poset.size()}};
    out += "catenary: " + std::string(r.catenary ? "yes" : "NO") + " (" + std::to_string(poset.size()) + " elements)\n";
    if (r.witness) {
      auto labels = [&](const std::vector<std::size_t>& c) {
        std::vector<std::string> v;
        for (std::size_t i : c) v.push_back(poset.label(i));
        return v;
      };
      auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " < " : "") + v[i];
        return s;
      };
      cj["witness"] = {{"shorter", labels(r.witness->shorter)}, {"longer", labels(r.witness->longer)}};
      out += "  witness: " + join(labels(r.witness->shorter)) + "   vs   " + join(labels(r.witness->longer)) + "\n";
    }
    j["catenary"] = cj;
    ok = ok && r.catenary;
  }
  if (normal_sep) {
    const Report r = normal_separation_check(qaff());
    j["normal_separation"] = r.to_json();
    out += count_line("normal separation (comparable pairs)", r);
    if (!r.passed()) out += "  first failure: " + r.first_failure() + "\n";
    ok = ok && r.passed();
  }
  emit(ctx, j, out);
  return ok ? 0 : 1;
}

int cmd_grade(Context& ctx, const std::string& src) {
  const Ring ring(resolve_presentation(src));
  const Presentation& pres = ring.presentation();
  const FiltrationDegrees deg = find_filtration_degrees(pres, static_cast<int>(6 * pres.size() + 6));
  const Presentation gr = associated_graded(pres, deg);
  const GkResult gk = gk_dimension(ring);
  json j;
  j["degrees"] = deg.degrees;
  j["associated_graded"] = presentation_to_json(gr);
  j["gk_dimension"] = gk.dimension;
  j["counts"] = gk.counts;
  j["checks"] = gk.report.to_json();
  std::string out = "filtration degrees: (";
  for (std::size_t i = 0; i < deg.degrees.size(); ++i) out += (i ? "," : "") + std::to_string(deg.degrees[i]);
  out += ")\nGK dimension: " + std::to_string(gk.dimension) + "\n";
  out += "monomials of degree <= n:";
  for (std::size_t c : gk.counts) out += " " + std::to_string(c);
  out += "\n" + gk.report.to_text() + "associated graded algebra\n" + presentation_summary(gr);
  emit(ctx, j, out);
  return gk.report.passed() ? 0 : 1;
}

int cmd_examples(Context& ctx) {
  json j = json::array();
  std::string out;
  for (const auto& name : builtin_names()) {
    const Presentation p = builtin(name == "qaffine-N" ? "qaffine-3" : name);
    const std::string shown = name == "qaffine-N" ? "qaffine-N (1 <= N <= 8)" : name;
    j.push_back(name);
    out += shown + "\n";
    if (name != "qaffine-N") out += "  generators:";
    if (name != "qaffine-N")
      for (const auto& g : p.names()) out += " " + g;
    if (name != "qaffine-N") out += "\n";
  }
  emit(ctx, j, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in CGL extensions (iterated Ore extensions over Q(q))", "oreforge"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  opt.bound = default_bound();
  app.add_flag("--json", opt.json_out, "Machine-readable output");
  app.add_option("--bound", opt.bound, "Iteration bound for nilpotence searches (default 32 or ORE_FORGE_BOUND)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized checks");

  std::string src, expr;
  int level = 0;
  bool all = false, verify_only = false, tauvel = false, catenary = false, normal_sep = false;
  std::string poset_file;
  std::vector<std::string> monic;
  std::optional<std::string> innerd_expr;

  auto* check = app.add_subcommand("check", "Verify the CGL axioms and rewriting consistency");
  check->add_option("source", src, "Presentation file or built-in name")->required();
  auto* nf = app.add_subcommand("nf", "PBW normal form of an element expression");
  nf->add_option("source", src)->required();
  nf->add_option("expr", expr)->required();
  auto* theta = app.add_subcommand("theta", "Cauchon map at level j");
  theta->add_option("source", src)->required();
  theta->add_option("-j", level, "Inverted generator (1-based)")->required();
  theta->add_option("expr", expr)->required();
  auto* del = app.add_subcommand("delete", "Delete the top derivation (or all with --all)");
  del->add_option("source", src)->required();
  del->add_flag("--all", all, "Run the full deleting-derivations sequence");
  auto* normal = app.add_subcommand("normal", "Construct or verify a normal H-eigenvector");
  normal->add_option("source", src)->required();
  normal->add_option("expr", expr)->required();
  normal->add_flag("--verify", verify_only, "Only decide whether expr itself is normal in R");
  auto* innerd = app.add_subcommand("innerd", "Element d with delta = d r - sigma(r) d");
  innerd->add_option("source", src)->required();
  innerd->add_option("expr", innerd_expr, "Normal eigenvector a of R_{N-1}");
  innerd->add_option("--from-monic", monic, "a_expr c_expr n")->expected(3);
  auto* spectra = app.add_subcommand("spectra", "H-prime poset checks for a quantum affine space");
  spectra->add_option("source", src)->required();
  spectra->add_flag("--tauvel", tauvel);
  spectra->add_flag("--catenary", catenary);
  spectra->add_flag("--normal-sep", normal_sep);
  spectra->add_option("--poset", poset_file, "Check catenarity of this poset (lines \"a < b\") instead");
  auto* grade = app.add_subcommand("grade", "Filtration degrees, associated graded algebra, GK dimension");
  grade->add_option("source", src)->required();
  auto* examples = app.add_subcommand("examples", "List built-in presentations");

  // Element expressions such as "-q*x12" would otherwise be taken for short
  // options; a leading space keeps them positional and the parser skips it.
  std::vector<std::string> argv_store{"oreforge"};
  for (const auto& a : args) {
    const bool negative_expr = a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-j" && a != "-h";
    argv_store.push_back(negative_expr ? " " + a : a);
  }
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Context ctx{opt, out};
  try {
    if (check->parsed()) return cmd_check(ctx, src);
    if (nf->parsed()) return cmd_nf(ctx, src, expr);
    if (theta->parsed()) return cmd_theta(ctx, src, level, expr);
    if (del->parsed()) return cmd_delete(ctx, src, all);
    if (normal->parsed()) return cmd_normal(ctx, src, expr, verify_only);
    if (innerd->parsed()) return cmd_innerd(ctx, src, innerd_expr, monic);
    if (spectra->parsed()) return cmd_spectra(ctx, src, tauvel, catenary, normal_sep, poset_file);
    if (grade->parsed()) return cmd_grade(ctx, src);
    if (examples->parsed()) return cmd_examples(ctx);
  } catch (const ResourceError& e) {
    err << "resource bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace oreforge
