#include "tacnode/acceptance.hpp"

#include "json.hpp"

namespace tacnode {

namespace detail {
std::vector<Criterion> build_criteria();
}

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = detail::build_criteria();
  return criteria;
}

bool run_acceptance(const AcceptanceConfig& config, std::ostream& os,
                    void* json_report) {
  bool all_pass = true;
  nlohmann::json report = nlohmann::json::array();
  for (const auto& criterion : acceptance_criteria()) {
    if (criterion.informational && !config.informational_too) continue;
    CriterionResult r = criterion.run(config);
    r.id = criterion.id;
    r.name = criterion.name;
    r.informational = criterion.informational;
    if (!r.informational && !r.pass) all_pass = false;
    os << (r.informational ? (r.pass ? "[info]" : "[info]")
                           : (r.pass ? "[PASS]" : "[FAIL]"))
       << ' ' << r.id << ' ' << r.name << " | worst=" << r.worst
       << " tol=" << r.tolerance;
    if (!r.details.empty()) os << " | " << r.details;
    os << '\n';
    os.flush();
    nlohmann::json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["informational"] = r.informational;
    j["measured_worst"] = r.worst;
    j["tolerance"] = r.tolerance;
    j["details"] = r.details;
    report.push_back(j);
  }
  if (json_report) *static_cast<nlohmann::json*>(json_report) = report;
  return all_pass;
}

}  // namespace tacnode
