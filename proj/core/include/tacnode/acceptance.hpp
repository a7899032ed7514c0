#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace tacnode {

struct AcceptanceConfig {
  std::uint64_t seed = 20240901ULL;
  int threads = 0;          // 0 = lab_thread_count()
  bool fast = false;        // reduced sample counts for smoke runs
  bool inject_gamma_sign_fault = false;  // test hook: flips the sign of Gamma
  bool informational_too = true;         // run the scaling-limit experiment
};

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  bool informational = false;
  double worst = 0.0;       // worst deviation measured
  double tolerance = 0.0;   // threshold it was held against
  std::string details;
};

struct Criterion {
  std::string id;
  std::string name;
  bool informational = false;
  std::function<CriterionResult(const AcceptanceConfig&)> run;
};

const std::vector<Criterion>& acceptance_criteria();

// Runs every criterion, prints one pass/fail line each, returns true when
// all hard criteria pass. `json_report` (when non-null) receives a
// nlohmann::json array of per-criterion records.
bool run_acceptance(const AcceptanceConfig& config, std::ostream& os,
                    void* json_report = nullptr);

}  // namespace tacnode
