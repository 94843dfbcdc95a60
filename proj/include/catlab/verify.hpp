// The bundled verification suite: one entry per acceptance criterion, each
// with its bounds pinned in code, plus report assembly. Shared by the CLI
// and the acceptance test binary.
#ifndef CATLAB_VERIFY_HPP_
#define CATLAB_VERIFY_HPP_

#include <string>
#include <vector>

#include <json.hpp>

namespace catlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  long long elapsed_ms = 0;
};

// Runs criteria 1..9 once. `deep` raises a few bounds (slower).
std::vector<CriterionResult> run_criteria(bool deep);

// Runs the whole bundle: criteria 1..9 plus the determinism criterion 10,
// which re-runs the suite and compares the stripped reports byte for byte.
std::vector<CriterionResult> run_acceptance(bool deep);

nlohmann::ordered_json acceptance_report(const std::vector<CriterionResult>& results,
                                         bool with_timing);

}  // namespace catlab

#endif  // CATLAB_VERIFY_HPP_
