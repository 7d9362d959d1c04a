#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace oreforge {

/// One named pass/fail line with an optional witness or detail string.
struct CheckEntry {
  std::string check;
  bool passed = true;
  std::string detail;
};

/// Ordered list of check outcomes. Verification operations report failures
/// here instead of throwing.
class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  void add(std::string check, bool passed, std::string detail = {});
  void merge(const Report& other);

  const std::string& title() const noexcept { return title_; }
  const std::vector<CheckEntry>& entries() const noexcept { return entries_; }
  bool passed() const;
  std::size_t failures() const;
  /// First failing entry's description, or empty.
  std::string first_failure() const;

  std::string to_text() const;
  nlohmann::json to_json() const;

 private:
  std::string title_;
  std::vector<CheckEntry> entries_;
};

}  // namespace oreforge
