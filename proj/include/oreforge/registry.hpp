#pragma once

// Built-in example presentations.

#include <string>
#include <vector>

#include "oreforge/presentation.hpp"

namespace oreforge {

/// Names accepted by builtin(); "qaffine-N" stands for qaffine-1 .. qaffine-8.
std::vector<std::string> builtin_names();

/// quantum-plane, quantum-weyl, qmat2, or qaffine-N (lambda_{ji} = q for j > i).
/// Throws PreconditionError for unknown names.
Presentation builtin(const std::string& name);

/// A built-in name or a path to a presentation file.
Presentation resolve_presentation(const std::string& name_or_path);

}  // namespace oreforge
