#include "cylkit/check.hpp"

#include <sstream>

#include "json.hpp"

namespace cylkit {

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "# suite " << suite_name << " on " << algebra << " mode=" << mode
     << " seed=" << seed;
  if (below_paper_scope) os << " (alpha below paper scope)";
  os << "\n";
  for (const auto& w : warnings) os << "# warning: " << w << "\n";
  for (const auto& r : results) {
    os << r.label << "  " << r.verdict.status_name();
    if (!r.verdict.detail.empty()) os << "  " << r.verdict.detail;
    os << "\n";
  }
  os << "# totals valid=" << count(Verdict::Valid)
     << " counterexamples=" << count(Verdict::CounterexampleFound)
     << " random-pass=" << count(Verdict::RandomPass) << "\n";
  return os.str();
}

std::string SuiteReport::summary_json() const {
  nlohmann::json j;
  j["suite"] = suite_name;
  j["algebra"] = algebra;
  j["mode"] = mode;
  j["seed"] = seed;
  j["below_paper_scope"] = below_paper_scope;
  j["totals"] = {
      {"instances", results.size()},
      {"valid", count(Verdict::Valid)},
      {"counterexamples", count(Verdict::CounterexampleFound)},
      {"random_pass", count(Verdict::RandomPass)},
  };
  if (!warnings.empty()) j["warnings"] = warnings;
  return j.dump(2);
}

}  // namespace cylkit
