#pragma once

#include <string>
#include <vector>

namespace tva {

/// One failing (or notable) instance of a verification suite.
struct CheckInstance {
  std::string identity;
  std::string tuple;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

/// Outcome of an exhaustive verification suite.  Passing instances are only
/// counted; failures are kept (capped) for reporting.
struct Report {
  std::string name;
  long checked = 0;
  long failed = 0;
  std::vector<CheckInstance> failures;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;

  static constexpr size_t kMaxStoredFailures = 200;

  bool passed() const { return failed == 0; }
  void record(bool ok, const std::string& identity, const std::string& tuple,
              const std::string& lhs, const std::string& rhs);
  void merge(const Report& other);

  /// Canonical JSON (sorted keys, no timing so output is byte-stable).
  std::string to_json(int indent = 2) const;
  std::string summary() const;
};

}  // namespace tva
