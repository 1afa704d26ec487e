#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace unital {

/// Outcome of an exhaustive or sampled verifier: a violation count, the first
/// few witnesses, and named tallies.
struct VerifyReport {
  static constexpr std::size_t kMaxWitnesses = 16;

  std::string name;
  std::uint64_t violations = 0;
  std::vector<std::string> witnesses;
  std::vector<std::pair<std::string, std::int64_t>> tallies;

  explicit VerifyReport(std::string n = {}) : name(std::move(n)) {}

  bool passed() const { return violations == 0; }

  void fail(std::string witness) {
    ++violations;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }

  void tally(const std::string& key, std::int64_t value) {
    for (auto& [k, v] : tallies) {
      if (k == key) {
        v = value;
        return;
      }
    }
    tallies.emplace_back(key, value);
  }

  std::int64_t get(const std::string& key, std::int64_t fallback = -1) const {
    for (const auto& [k, v] : tallies) {
      if (k == key) return v;
    }
    return fallback;
  }
};

inline std::ostream& operator<<(std::ostream& os, const VerifyReport& r) {
  os << r.name << ": " << (r.passed() ? "pass" : "FAIL");
  if (!r.passed()) os << " (" << r.violations << " violations)";
  for (const auto& [k, v] : r.tallies) os << ' ' << k << '=' << v;
  for (const auto& w : r.witnesses) os << "\n  witness: " << w;
  return os;
}

}  // namespace unital
