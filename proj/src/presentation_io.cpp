#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oreforge/errors.hpp"
#include "oreforge/presentation.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"", 0);
  return *it;
}

CoeffRat coeff_from(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return CoeffRat(v.get<long>());
    if (v.is_string()) return parse_coeff(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.position());
  }
  throw ParseError(where + ": expected a coefficient expression string", 0);
}

std::size_t index_from(const json& v, std::size_t n, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string("delta entry: \"") + what + "\" must be an integer", 0);
  const long k = v.get<long>();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw ParseError(std::string("delta entry: \"") + what + "\" out of range 1.." + std::to_string(n), 0);
  return static_cast<std::size_t>(k - 1);
}

std::vector<int> int_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of integers", 0);
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ParseError(where + ": expected an integer", 0);
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

Presentation presentation_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("presentation document must be an object", 0);
  Presentation::Data d;
  d.name = doc.value("name", std::string("unnamed"));
  for (const auto& g : field(doc, "generators")) {
    if (!g.is_string()) throw ParseError("generator names must be strings", 0);
    d.names.push_back(g.get<std::string>());
  }
  const std::size_t n = d.names.size();
  if (doc.contains("N") && doc["N"].get<std::size_t>() != n)
    throw ParseError("\"N\" does not match the number of generators", 0);
  const json& dj = field(doc, "d");
  if (!dj.is_number_integer() || dj.get<long>() < 0) throw ParseError("\"d\" must be a nonnegative integer", 0);
  d.torus_rank = dj.get<std::size_t>();

  const json& lam = field(doc, "lambda");
  if (!lam.is_array() || lam.size() != n) throw ParseError("\"lambda\" must be an N x N array", 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (!lam[r].is_array() || lam[r].size() != n) throw ParseError("\"lambda\" must be an N x N array", 0);
    std::vector<CoeffRat> row;
    for (std::size_t c = 0; c < n; ++c)
      row.push_back(coeff_from(lam[r][c], "lambda[" + std::to_string(r + 1) + "][" + std::to_string(c + 1) + "]"));
    d.lambda.push_back(std::move(row));
  }

  const json& weights = field(doc, "weights");
  if (!weights.is_array() || weights.size() != n) throw ParseError("\"weights\" needs one entry per generator", 0);
  for (std::size_t i = 0; i < n; ++i) d.weights.push_back({int_vector(weights[i], "weights[" + std::to_string(i + 1) + "]")});

  const json& hs = field(doc, "h");
  if (!hs.is_array() || hs.size() != n) throw ParseError("\"h\" needs one entry per generator", 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!hs[j].is_array()) throw ParseError("\"h\" entries must be arrays", 0);
    TorusElement h;
    for (std::size_t t = 0; t < hs[j].size(); ++t)
      h.coordinates.push_back(coeff_from(hs[j][t], "h[" + std::to_string(j + 1) + "][" + std::to_string(t + 1) + "]"));
    d.h.push_back(std::move(h));
  }

  if (doc.contains("filtration") && !doc["filtration"].is_null())
    d.filtration = int_vector(doc["filtration"], "filtration");

  // Delta values are element expressions written in any order; each is
  // normal-formed in the tower built from the derivations of lower levels.
  std::map<DeltaKey, std::string> pending;
  if (doc.contains("delta")) {
    for (const auto& entry : doc["delta"]) {
      const std::size_t j = index_from(field(entry, "j"), n, "j");
      const std::size_t i = index_from(field(entry, "i"), n, "i");
      if (i >= j) throw ParseError("delta entry needs i < j", 0);
      const json& v = field(entry, "value");
      if (!v.is_string() && !v.is_number_integer()) throw ParseError("delta value must be an element expression", 0);
      if (!pending.emplace(DeltaKey{j, i}, v.is_string() ? v.get<std::string>() : v.dump()).second)
        throw ParseError("duplicate delta entry", 0);
    }
  }
  auto build = [&]() {
    try {
      return Presentation(d);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), 0);
    }
  };
  for (const auto& [key, text] : pending) {
    Presentation partial = build();
    Ring ring(partial);
    try {
      d.delta.insert_or_assign(key, ring.parse(text));
    } catch (const ParseError& e) {
      throw ParseError("delta(" + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) +
                           "): " + e.what(),
                       e.position());
    }
  }
  return build();
}

json presentation_to_json(const Presentation& pres) {
  json doc;
  doc["name"] = pres.name();
  doc["N"] = pres.size();
  doc["d"] = pres.torus_rank();
  doc["generators"] = pres.names();
  json lam = json::array();
  for (std::size_t r = 0; r < pres.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < pres.size(); ++c) row.push_back(pres.lambda(r, c).to_string());
    lam.push_back(std::move(row));
  }
  doc["lambda"] = std::move(lam);
  json delta = json::array();
  for (const auto& [key, value] : pres.delta_entries())
    delta.push_back({{"j", key.first + 1}, {"i", key.second + 1}, {"value", value.to_string(pres.names())}});
  doc["delta"] = std::move(delta);
  json weights = json::array();
  for (const auto& w : pres.weights()) weights.push_back(w.exponents);
  doc["weights"] = std::move(weights);
  json hs = json::array();
  for (const auto& h : pres.h()) {
    json row = json::array();
    for (const auto& c : h.coordinates) row.push_back(c.to_string());
    hs.push_back(std::move(row));
  }
  doc["h"] = std::move(hs);
  if (pres.filtration()) doc["filtration"] = *pres.filtration();
  return doc;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presentation file '" + path + "'", 0);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what(), 0);
  }
  try {
    return presentation_from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what(), 0);
  }
}

std::size_t default_bound() {
  if (const char* env = std::getenv("ORE_FORGE_BOUND")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 32;
}

}  // namespace oreforge
