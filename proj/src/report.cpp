#include "oreforge/report.hpp"

#include <algorithm>
#include <sstream>

namespace oreforge {

void Report::add(std::string check, bool passed, std::string detail) {
  entries_.push_back({std::move(check), passed, std::move(detail)});
}

void Report::merge(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Report::passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.passed; });
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return !e.passed; }));
}

std::string Report::first_failure() const {
  for (const auto& e : entries_)
    if (!e.passed) return e.detail.empty() ? e.check : e.check + ": " + e.detail;
  return {};
}

std::string Report::to_text() const {
  std::ostringstream out;
  if (!title_.empty()) out << title_ << "\n";
  for (const auto& e : entries_) {
    out << (e.passed ? "  pass  " : "  FAIL  ") << e.check;
    if (!e.detail.empty()) out << "  [" << e.detail << "]";
    out << "\n";
  }
  out << (passed() ? "all checks passed" : std::to_string(failures()) + " check(s) failed") << " ("
      << entries_.size() << " total)\n";
  return out.str();
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["title"] = title_;
  j["passed"] = passed();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries_) j["entries"].push_back({{"check", e.check}, {"passed", e.passed}, {"detail", e.detail}});
  return j;
}

}  // namespace oreforge
