#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ospyb/report.hpp"

namespace ospyb {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Suites: fundamental, brauer, osp, evaluation, spinor, fusion, js.
const std::vector<std::string>& suite_names();

struct CaseOptions {
  int n = 3;              // brauer: tensor power
  int degree = 1;         // js, spinor: polynomial module degree
  int kmax = 6;           // spinor: truncation
  int order = 1;          // evaluation: 1 linear (oscillator F), 2 quadratic (JS module)
  int alpha = 0;          // evaluation order 1: L(u) = (u + alpha) 1 + F
  Mode mode = Mode::exact;
  bool central = false;   // quadratic: add the central term to N
  bool traceless_projection = false;  // osp: project the oscillator F to str = 0 first
  bool perturb_beta = false;          // replace beta by beta + 1 where the suite uses it
};

struct SuiteCase {
  std::string suite;
  int N = 0;
  int M = 0;
  int eps = 1;
  CaseOptions options;

  /// e.g. "js(1|2,+1) degree=2"; non-default options only.
  std::string id() const;
};

struct SuiteConfig {
  std::vector<SuiteCase> cases;
  int jobs = 0;  // 0: hardware concurrency
  std::string out;
};

struct CaseReport {
  std::string case_id;
  VerificationReport report;
};

SuiteCase parse_case(const nlohmann::json& j);
nlohmann::json case_to_json(const SuiteCase& c);
SuiteConfig parse_config(const nlohmann::json& j);
SuiteConfig load_config(const std::string& path);

/// Family F plus the pure cases, with the options each check needs.
SuiteConfig default_config();

/// Worker count: OSPYB_JOBS when set, else `requested`, else hardware concurrency.
int resolve_jobs(int requested);

/// Reports of one case; DegenerateOmegaError becomes a skip, any other
/// exception a failure carrying the message.
std::vector<CaseReport> run_case(const SuiteCase& c);
/// Cases are pulled from a shared counter by `jobs` workers; output keeps
/// config order.
std::vector<CaseReport> run_suite(const SuiteConfig& config);
bool any_failed(const std::vector<CaseReport>& reports);

nlohmann::json reports_to_json(const std::vector<CaseReport>& reports);
std::vector<CaseReport> reports_from_json(const nlohmann::json& j);

struct StatusChange {
  std::string case_id;
  std::string identity;
  std::string before;  // "" when absent
  std::string after;
};

struct TimingDelta {
  std::string case_id;
  std::string identity;
  double before_ms = 0;
  double after_ms = 0;
};

struct ReportDiff {
  std::vector<StatusChange> regressions;     // now fail, or a pass that disappeared
  std::vector<StatusChange> newly_passing;   // now pass, was fail/skipped/absent
  std::vector<StatusChange> other_changes;   // any other status change
  std::vector<TimingDelta> timing;

  bool empty() const {
    return regressions.empty() && newly_passing.empty() && other_changes.empty() && timing.empty();
  }
};

/// Entries are matched on (case id, identity, occurrence). Timing deltas are
/// listed when the millisecond values differ. Throws ConfigError on a schema
/// mismatch.
ReportDiff diff_reports(const nlohmann::json& before, const nlohmann::json& after);
nlohmann::json diff_to_json(const ReportDiff& d);

}  // namespace ospyb
