#include "tva/report.hpp"

#include <json.hpp>

#include <sstream>

namespace tva {

void Report::record(bool ok, const std::string& identity, const std::string& tuple,
                    const std::string& lhs, const std::string& rhs) {
  ++checked;
  if (ok) return;
  ++failed;
  if (failures.size() < kMaxStoredFailures)
    failures.push_back({identity, tuple, lhs, rhs, false});
}

void Report::merge(const Report& other) {
  checked += other.checked;
  failed += other.failed;
  for (const auto& f : other.failures)
    if (failures.size() < kMaxStoredFailures) failures.push_back(f);
  for (const auto& n : other.notes) notes.push_back(n);
}

std::string Report::to_json(int indent) const {
  nlohmann::json j;
  j["name"] = name;
  j["checked"] = checked;
  j["failed"] = failed;
  j["pass"] = passed();
  j["notes"] = notes;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : failures) {
    nlohmann::json e;
    e["identity"] = f.identity;
    e["tuple"] = f.tuple;
    e["lhs"] = f.lhs;
    e["rhs"] = f.rhs;
    e["pass"] = f.pass;
    fs.push_back(e);
  }
  j["failures"] = fs;
  return j.dump(indent);
}

std::string Report::summary() const {
  std::ostringstream os;
  os << name << ": " << (passed() ? "PASS" : "FAIL") << " (" << checked
     << " instances, " << failed << " failures)";
  for (const auto& n : notes) os << "\n  note: " << n;
  if (!failures.empty()) {
    size_t shown = std::min<size_t>(failures.size(), 5);
    for (size_t i = 0; i < shown; ++i)
      os << "\n  " << failures[i].identity << " @ " << failures[i].tuple
         << ": lhs = " << failures[i].lhs << ", rhs = " << failures[i].rhs;
    if (failed > static_cast<long>(shown)) os << "\n  ...";
  }
  return os.str();
}

}  // namespace tva
