#include "oreforge/registry.hpp"

#include <filesystem>

#include "oreforge/errors.hpp"
#include "oreforge/ring.hpp"

namespace oreforge {

namespace {

CoeffRat qp(long k) { return CoeffRat::q_power(k); }

Presentation quantum_plane() {
  Presentation::Data d;
  d.name = "quantum-plane";
  d.torus_rank = 2;
  d.names = {"x1", "x2"};
  d.lambda = {{qp(0), qp(-1)}, {qp(1), qp(0)}};
  d.weights = {{{1, 0}}, {{0, 1}}};
  d.h = {{{qp(1), qp(0)}}, {{qp(1), qp(1)}}};
  return Presentation(std::move(d));
}

Presentation quantum_weyl() {
  Presentation::Data d;
  d.name = "quantum-weyl";
  d.torus_rank = 1;
  d.names = {"x1", "x2"};
  d.lambda = {{qp(0), qp(-1)}, {qp(1), qp(0)}};
  d.delta.emplace(DeltaKey{1, 0}, Element::constant(2, CoeffRat(1)));
  d.weights = {{{1}}, {{-1}}};
  d.h = {{{qp(1)}}, {{qp(1)}}};
  return Presentation(std::move(d));
}

Presentation qmat2() {
  Presentation::Data d;
  d.name = "qmat2";
  d.torus_rank = 4;
  d.names = {"x11", "x12", "x21", "x22"};
  d.lambda = {{qp(0), qp(1), qp(1), qp(0)},
              {qp(-1), qp(0), qp(0), qp(1)},
              {qp(-1), qp(0), qp(0), qp(1)},
              {qp(0), qp(-1), qp(-1), qp(0)}};
  // x22 x11 = x11 x22 - (q - q^-1) x12 x21
  d.delta.emplace(DeltaKey{3, 0}, Element::monomial({0, 1, 1, 0}, -(qp(1) - qp(-1))));
  d.weights = {{{1, 0, 1, 0}}, {{1, 0, 0, 1}}, {{0, 1, 1, 0}}, {{0, 1, 0, 1}}};
  d.h = {{{qp(1), qp(0), qp(0), qp(0)}},
         {{qp(0), qp(0), qp(-1), qp(1)}},
         {{qp(0), qp(2), qp(-1), qp(0)}},
         {{qp(0), qp(-1), qp(0), qp(-1)}}};
  return Presentation(std::move(d));
}

Presentation qaffine(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<CoeffRat>> lambda(n, std::vector<CoeffRat>(n, CoeffRat(1)));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) lambda[i][j] = qp(i > j ? 1 : -1);
  }
  return quantum_affine("qaffine-" + std::to_string(n), std::move(names), std::move(lambda));
}

}  // namespace

std::vector<std::string> builtin_names() { return {"quantum-plane", "quantum-weyl", "qmat2", "qaffine-N"}; }

Presentation builtin(const std::string& name) {
  if (name == "quantum-plane") return quantum_plane();
  if (name == "quantum-weyl") return quantum_weyl();
  if (name == "qmat2") return qmat2();
  const std::string prefix = "qaffine-";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() && digits.size() <= 2 && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(digits);
      if (n >= 1 && n <= 8) return qaffine(static_cast<std::size_t>(n));
    }
    throw PreconditionError("qaffine-N needs 1 <= N <= 8");
  }
  throw PreconditionError("unknown example '" + name + "'");
}

Presentation resolve_presentation(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return load_presentation(name_or_path);
  try {
    return builtin(name_or_path);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string(e.what()) + " (and no such file)", 0);
  }
}

}  // namespace oreforge
