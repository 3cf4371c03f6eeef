// verify: runs identity suites over superspace parameters and writes JSON reports.
//
//   verify fundamental --N 1 --M 2 --eps 1
//   verify all --jobs 4 --out report.json
//   verify all --config cases.json --mode sample
//   verify diff old.json new.json

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ospyb/suite.hpp"

using namespace ospyb;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int run_diff(const std::vector<std::string>& files) {
  if (files.size() != 2) throw ConfigError("diff needs two report files");
  const auto d = diff_reports(read_json(files[0]), read_json(files[1]));
  std::cout << diff_to_json(d).dump(2) << "\n";
  return d.regressions.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of osp(N|M) Yang-Baxter identities"};
  std::string verb;
  std::vector<std::string> files;
  std::optional<int> N, M, eps, n, degree, kmax, order, alpha, jobs;
  std::optional<std::string> mode, out, config;
  bool central = false, traceless = false, perturb = false, quiet = false;

  std::vector<std::string> verbs = suite_names();
  verbs.push_back("all");
  verbs.push_back("diff");
  app.add_option("verb", verb, "Suite to run, 'all', or 'diff'")->required()->check(CLI::IsMember(verbs));
  app.add_option("files", files, "Report files for diff");
  app.add_option("--N", N, "Even dimension");
  app.add_option("--M", M, "Odd dimension");
  app.add_option("--eps", eps, "Metric sign (+1 or -1)");
  app.add_option("--n", n, "Tensor power for brauer");
  app.add_option("--degree", degree, "Polynomial module degree");
  app.add_option("--kmax", kmax, "Spinorial R truncation");
  app.add_option("--order", order, "Evaluation order (1 or 2)");
  app.add_option("--alpha", alpha, "Shift in the linear evaluation");
  app.add_option("--mode", mode, "exact or sample")->check(CLI::IsMember({"exact", "sample"}));
  app.add_option("--jobs", jobs, "Worker threads (OSPYB_JOBS overrides)");
  app.add_option("--out", out, "Write the JSON report here");
  app.add_option("--config", config, "JSON config with cases, jobs and out");
  app.add_flag("--central", central, "Quadratic evaluation with the central term in N");
  app.add_flag("--traceless", traceless, "osp: project the oscillator generators to supertrace 0");
  app.add_flag("--perturb-beta", perturb, "Shift beta by one to check sensitivity");
  app.add_flag("-q,--quiet", quiet, "Print failures and the summary only");
  CLI11_PARSE(app, argc, argv);

  try {
    if (verb == "diff") return run_diff(files);

    SuiteConfig cfg = config ? load_config(*config) : SuiteConfig{};
    const bool explicit_space = N || M || eps;
    if (explicit_space) {
      cfg.cases.clear();
      for (const auto& s : suite_names()) {
        if (verb != "all" && verb != s) continue;
        SuiteCase c{s, N.value_or(0), M.value_or(0), eps.value_or(1), {}};
        if (c.N < 0 || c.M < 0 || c.N + c.M == 0) throw ConfigError("need N, M >= 0 with N + M > 0");
        if (c.eps != 1 && c.eps != -1) throw ConfigError("eps must be +1 or -1");
        cfg.cases.push_back(c);
      }
    } else if (cfg.cases.empty()) {
      cfg.cases = default_config().cases;
    }
    if (verb != "all")
      std::erase_if(cfg.cases, [&](const SuiteCase& c) { return c.suite != verb; });

    for (auto& c : cfg.cases) {
      auto& o = c.options;
      if (n) o.n = *n;
      if (degree) o.degree = *degree;
      if (kmax) o.kmax = *kmax;
      if (order) o.order = *order;
      if (alpha) o.alpha = *alpha;
      if (mode) o.mode = *mode == "sample" ? Mode::sample : Mode::exact;
      if (central) o.central = true;
      if (traceless) o.traceless_projection = true;
      if (perturb) o.perturb_beta = true;
    }
    if (jobs) cfg.jobs = *jobs;
    if (out) cfg.out = *out;

    const auto reports = run_suite(cfg);
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : reports) {
      const auto st = r.report.status;
      (st == Status::pass ? pass : st == Status::fail ? fail : skip)++;
      if (quiet && st != Status::fail) continue;
      std::printf("%-7s %-40s %-16s %9.1f ms", st == Status::pass ? "PASS" : st == Status::fail ? "FAIL" : "SKIP",
                  r.case_id.c_str(), r.report.identity.c_str(), r.report.millis);
      if (r.report.witness) std::printf("  %s", r.report.witness->c_str());
      std::printf("\n");
    }
    std::printf("%zu cases, %d pass, %d fail, %d skipped\n", cfg.cases.size(), pass, fail, skip);

    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out);
      if (!f) throw ConfigError("cannot write " + cfg.out);
      f << reports_to_json(reports).dump(2) << "\n";
    }
    return any_failed(reports) ? 1 : 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "verify: %s\n", e.what());
    return 2;
  }
}
