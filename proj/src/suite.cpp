#include "ospyb/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include "ospyb/brauer.hpp"
#include "ospyb/oscillator.hpp"
#include "ospyb/osp.hpp"
#include "ospyb/spinor.hpp"

namespace ospyb {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "ospyb-report/1";

std::string eps_label(int e) { return e > 0 ? "+1" : "-1"; }

ReportList run_fundamental(const SpacePtr& s, const CaseOptions& o) {
  YBEOptions opt;
  opt.mode = o.mode;
  if (o.perturb_beta) opt.beta = s->beta + 1;
  ReportList out;
  out.push_back(verify_braid_YBE(s, opt));
  out.push_back(verify_graded_YBE(s, opt));
  YBEOptions tw = opt;
  tw.form = RForm::twisted;
  out.push_back(verify_graded_YBE(s, tw));
  out.push_back(verify_unitarity(s, opt));
  for (auto& r : verify_pk_identities(s)) out.push_back(std::move(r));
  out.push_back(verify_fundamental_RLL(s, o.mode));
  out.push_back(verify_convention_equivalence(s, o.mode));
  return out;
}

ReportList run_brauer(const SpacePtr& s, const CaseOptions& o) {
  if (o.n < 2) return {skipped("defBrauer", "tensor power n must be at least 2")};
  return verify_brauer(brauer_generators(s, o.n));
}

ReportList run_osp(const SpacePtr& s, const CaseOptions& o) {
  ReportList out;
  if (o.traceless_projection) {
    // Throws DegenerateOmegaError at omega = 0, reported as a skip.
    const auto g = traceless_projection(build_F(oscillator_algebra(s)));
    return osp_relation_reports(g, true);
  }
  out.push_back(verify_structure_constants(s));
  out.push_back(verify_basis_K_condition(s));
  out.push_back(verify_basis_P_condition(s));
  out.push_back(verify_R_invariance(s));
  for (auto& r : osp_relation_reports(fundamental_G(s), true)) out.push_back(std::move(r));
  return out;
}

ReportList run_js(const SpacePtr& s, const CaseOptions& o) {
  if (o.degree < 1) return {skipped("eq:RLL", "module degree must be at least 1")};
  auto H = heisenberg_algebra(s);
  const auto G = represent_generators(build_M(H), finite_module(H, ModuleKind::polynomial, o.degree));
  ReportList out = osp_relation_reports(G, true);
  out.push_back(timed([&] { return verify_anticommutator_condition(G); }));
  out.push_back(timed([&] { return verify_cubic_characteristic(G); }));
  const auto l = o.central ? quadratic_evaluation_L(G, quadratic_central_term(G)) : quadratic_evaluation_L(G);
  for (auto& r : quadratic_condition_reports(l, o.mode)) out.push_back(std::move(r));
  return out;
}

ReportList run_evaluation(const SpacePtr& s, const CaseOptions& o) {
  if (o.order == 2) return run_js(s, o);
  if (o.order != 1) return {skipped("L01", "evaluation order must be 1 or 2")};
  const auto F = build_F(oscillator_algebra(s));
  return linear_evaluation_reports(F, Scalar(Rational(o.alpha)), o.mode);
}

bool pure_clifford(const GradedSpace& s) {
  return (s.M == 0 && s.eps == 1 && s.N % 2 == 0) || (s.N == 0 && s.eps == -1 && s.M % 2 == 0);
}

// With perturb_beta the recurrence is run with omega - 2 in place of omega
// (beta shifted by one).
SpinorROperator spinor_R_for(const SpacePtr& s, const CaseOptions& o) {
  if (!o.perturb_beta) return build_spinor_R(s, o.kmax);
  auto r = r_coefficients(s, o.kmax);
  const Scalar u = Scalar::u();
  for (std::size_t k = 0; k + 2 < r.values.size(); ++k) {
    const Scalar kk{Rational(static_cast<long>(k))};
    r.values[k + 2] = Scalar(4) * (u - kk) / (kk + Scalar(2) + u - Scalar(s->omega - 2)) * r.values[k];
  }
  return build_spinor_R(r, o.kmax);
}

ReportList run_spinor(const SpacePtr& s, const CaseOptions& o) {
  if (o.kmax < 2) return {skipped("eq:Rcond1", "kmax must be at least 2")};
  ReportList out;
  const auto r = r_coefficients(s, o.kmax);
  out.push_back(timed([&] { return verify_recurrence(r); }));
  out.push_back(timed([&] { return verify_gamma_ratios(r); }));
  if (s->M == 0 || s->N == 0) {
    for (auto& x : reduction_recurrences(s->M == 0 ? s->N : s->M, o.kmax)) out.push_back(std::move(x));
  }
  if (pure_clifford(*s)) {
    // The spinor module needs isotropic halves, so the R-operator is built on
    // the split metric of the same signature.
    const auto sp = split_space(s->N, s->M, s->eps);
    auto R = spinor_R_for(sp, o);
    out.push_back(verify_spinor_invariance(R));
    for (auto& x : verify_spinor_rll_conditions(R)) out.push_back(std::move(x));
    auto spinor = finite_module(oscillator_algebra(sp), ModuleKind::clifford_spinor);
    auto H = heisenberg_algebra(sp);
    auto mod = finite_module(H, ModuleKind::polynomial, std::max(1, o.degree));
    out.push_back(verify_spinor_RLL_full(R, spinor, represent_generators(build_M(H), mod), mod.state_parity));
  } else {
    auto R = spinor_R_for(s, o);
    out.push_back(verify_spinor_invariance(R));
    for (auto& x : verify_spinor_rll_conditions(R)) out.push_back(std::move(x));
    out.push_back(skipped("eq:RLL1", "no finite spinor module: the oscillator algebra has a Weyl sector or odd Clifford rank"));
  }
  return out;
}

ReportList run_fusion(const SpacePtr& s, const CaseOptions& o) {
  ReportList out;
  if (o.mode == Mode::sample)
    out.push_back(verify_fusion_sampled(s));
  else
    out = verify_fusion(s);
  out.push_back(verify_intertwiner_identity(s, o.perturb_beta ? Rational(1) : Rational(0)));
  return out;
}

const std::map<std::string, std::function<ReportList(const SpacePtr&, const CaseOptions&)>>& runners() {
  static const std::map<std::string, std::function<ReportList(const SpacePtr&, const CaseOptions&)>> m = {
      {"fundamental", run_fundamental}, {"brauer", run_brauer}, {"osp", run_osp},
      {"evaluation", run_evaluation},   {"spinor", run_spinor}, {"fusion", run_fusion},
      {"js", run_js}};
  return m;
}

template <class T>
void read_opt(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("option '") + key + "': " + e.what());
  }
}

Mode parse_mode(const std::string& m) {
  if (m == "exact") return Mode::exact;
  if (m == "sample") return Mode::sample;
  throw ConfigError("mode must be exact or sample, got '" + m + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"fundamental", "brauer", "osp", "evaluation",
                                                 "spinor",      "fusion", "js"};
  return names;
}

std::string SuiteCase::id() const {
  std::string s = suite + "(" + std::to_string(N) + "|" + std::to_string(M) + "," + eps_label(eps) + ")";
  const CaseOptions d;
  const auto& o = options;
  if (suite == "brauer") s += " n=" + std::to_string(o.n);
  if (suite == "js" || (suite == "evaluation" && o.order == 2) || (suite == "spinor" && o.degree != d.degree))
    s += " degree=" + std::to_string(o.degree);
  if (suite == "spinor") s += " kmax=" + std::to_string(o.kmax);
  if (suite == "evaluation") {
    s += " order=" + std::to_string(o.order);
    if (o.order == 1) s += " alpha=" + std::to_string(o.alpha);
  }
  if (o.central) s += " central";
  if (o.traceless_projection) s += " traceless";
  if (o.mode != d.mode) s += std::string(" mode=") + mode_name(o.mode);
  if (o.perturb_beta) s += " perturb-beta";
  return s;
}

SuiteCase parse_case(const json& j) {
  if (!j.is_object()) throw ConfigError("case must be an object");
  SuiteCase c;
  read_opt(j, "suite", c.suite);
  read_opt(j, "N", c.N);
  read_opt(j, "M", c.M);
  read_opt(j, "eps", c.eps);
  if (!runners().count(c.suite)) throw ConfigError("unknown suite '" + c.suite + "'");
  if (c.N < 0 || c.M < 0 || c.N + c.M == 0) throw ConfigError("need N, M >= 0 with N + M > 0");
  if (c.eps != 1 && c.eps != -1) throw ConfigError("eps must be +1 or -1");
  const json opts = j.value("options", json::object());
  if (!opts.is_object()) throw ConfigError("options must be an object");
  auto& o = c.options;
  read_opt(opts, "n", o.n);
  read_opt(opts, "degree", o.degree);
  read_opt(opts, "kmax", o.kmax);
  read_opt(opts, "order", o.order);
  read_opt(opts, "alpha", o.alpha);
  read_opt(opts, "central", o.central);
  read_opt(opts, "traceless_projection", o.traceless_projection);
  read_opt(opts, "perturb_beta", o.perturb_beta);
  if (opts.contains("mode")) {
    std::string m;
    read_opt(opts, "mode", m);
    o.mode = parse_mode(m);
  }
  return c;
}

json case_to_json(const SuiteCase& c) {
  const auto& o = c.options;
  return {{"suite", c.suite},
          {"N", c.N},
          {"M", c.M},
          {"eps", c.eps},
          {"options",
           {{"n", o.n},
            {"degree", o.degree},
            {"kmax", o.kmax},
            {"order", o.order},
            {"alpha", o.alpha},
            {"mode", mode_name(o.mode)},
            {"central", o.central},
            {"traceless_projection", o.traceless_projection},
            {"perturb_beta", o.perturb_beta}}}};
}

SuiteConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SuiteConfig cfg;
  read_opt(j, "jobs", cfg.jobs);
  read_opt(j, "out", cfg.out);
  if (j.contains("cases")) {
    if (!j["cases"].is_array()) throw ConfigError("cases must be an array");
    for (const auto& c : j["cases"]) cfg.cases.push_back(parse_case(c));
  }
  return cfg;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

SuiteConfig default_config() {
  const std::vector<std::tuple<int, int, int>> family = {{1, 2, 1}, {3, 2, 1}, {2, 2, -1}, {2, 4, 1}, {4, 2, -1}};
  const std::vector<std::tuple<int, int, int>> pure = {{4, 0, 1}, {0, 4, 1}};
  SuiteConfig cfg;
  auto add = [&](const std::string& suite, std::tuple<int, int, int> nme, CaseOptions o = {}) {
    cfg.cases.push_back({suite, std::get<0>(nme), std::get<1>(nme), std::get<2>(nme), o});
  };
  for (auto sp : family)
    for (int n : {3, 4}) add("brauer", sp, CaseOptions{.n = n});
  for (auto sp : family) add("fundamental", sp);
  for (auto sp : pure) add("fundamental", sp);
  add("fundamental", family[0], CaseOptions{.mode = Mode::sample});
  for (auto sp : family) add("osp", sp);
  add("osp", {2, 2, 1}, CaseOptions{.traceless_projection = true});
  for (auto sp : family)
    for (int a : {0, 5}) add("evaluation", sp, CaseOptions{.alpha = a});
  add("spinor", family[0], CaseOptions{.kmax = 8});
  add("spinor", family[1], CaseOptions{.kmax = 8});
  add("spinor", pure[0], CaseOptions{.kmax = 4});
  for (auto sp : family) add("fusion", sp);
  add("fusion", family[0], CaseOptions{.mode = Mode::sample});
  for (auto sp : {family[0], family[2]})
    for (int d = 1; d <= 3; ++d) add("js", sp, CaseOptions{.degree = d});
  return cfg;
}

int resolve_jobs(int requested) {
  if (const char* env = std::getenv("OSPYB_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CaseReport> run_case(const SuiteCase& c) {
  const std::string id = c.id();
  ReportList reps;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    const auto it = runners().find(c.suite);
    if (it == runners().end()) throw ConfigError("unknown suite '" + c.suite + "'");
    reps = it->second(make_space(c.N, c.M, c.eps), c.options);
  } catch (const DegenerateOmegaError& e) {
    reps = {skipped(c.suite, e.what())};
    reps.back().millis = elapsed();
  } catch (const std::exception& e) {
    reps = {VerificationReport{c.suite, Status::fail, std::string("exception: ") + e.what(), elapsed()}};
  }
  std::vector<CaseReport> out;
  for (auto& r : reps) {
    if (r.status == Status::fail && !r.witness) r.witness = "no witness recorded";
    out.push_back({id, std::move(r)});
  }
  return out;
}

std::vector<CaseReport> run_suite(const SuiteConfig& config) {
  const std::size_t n = config.cases.size();
  std::vector<std::vector<CaseReport>> per_case(n);
  const int jobs = std::min<int>(resolve_jobs(config.jobs), static_cast<int>(std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) per_case[i] = run_case(config.cases[i]);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<CaseReport> out;
  for (auto& v : per_case)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

bool any_failed(const std::vector<CaseReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const CaseReport& r) { return r.report.status == Status::fail; });
}

json reports_to_json(const std::vector<CaseReport>& reports) {
  json list = json::array();
  for (const auto& r : reports) {
    json e = {{"case", r.case_id},
              {"identity", r.report.identity},
              {"status", status_name(r.report.status)},
              {"millis", r.report.millis}};
    if (r.report.witness) e["witness"] = *r.report.witness;
    list.push_back(std::move(e));
  }
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports)
    (r.report.status == Status::pass ? pass : r.report.status == Status::fail ? fail : skip)++;
  return {{"schema", kSchema},
          {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skip}}},
          {"reports", list}};
}

std::vector<CaseReport> reports_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchema || !j.contains("reports") || !j["reports"].is_array())
    throw ConfigError(std::string("schema mismatch: expected a ") + kSchema + " document");
  std::vector<CaseReport> out;
  for (const auto& e : j["reports"]) {
    try {
      VerificationReport r;
      r.identity = e.at("identity").get<std::string>();
      const auto st = e.at("status").get<std::string>();
      if (st == "pass")
        r.status = Status::pass;
      else if (st == "fail")
        r.status = Status::fail;
      else if (st == "skipped")
        r.status = Status::skipped;
      else
        throw ConfigError("unknown status '" + st + "'");
      if (e.contains("witness")) r.witness = e["witness"].get<std::string>();
      r.millis = e.value("millis", 0.0);
      out.push_back({e.at("case").get<std::string>(), std::move(r)});
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("schema mismatch: ") + ex.what());
    }
  }
  return out;
}

ReportDiff diff_reports(const json& before, const json& after) {
  using Key = std::tuple<std::string, std::string, int>;
  auto index = [](const std::vector<CaseReport>& v) {
    std::map<Key, const VerificationReport*> m;
    std::map<std::pair<std::string, std::string>, int> seen;
    std::vector<Key> order;
    for (const auto& r : v) {
      Key k{r.case_id, r.report.identity, seen[{r.case_id, r.report.identity}]++};
      m[k] = &r.report;
      order.push_back(k);
    }
    return std::pair{m, order};
  };
  const auto a = reports_from_json(before), b = reports_from_json(after);
  const auto [ma, oa] = index(a);
  const auto [mb, ob] = index(b);

  ReportDiff d;
  auto classify = [&](const Key& k, const VerificationReport* x, const VerificationReport* y) {
    const std::string sx = x ? status_name(x->status) : "", sy = y ? status_name(y->status) : "";
    if (sx != sy) {
      StatusChange c{std::get<0>(k), std::get<1>(k), sx, sy};
      if (sy == "fail" || (sx == "pass" && sy.empty()))
        d.regressions.push_back(c);
      else if (sy == "pass")
        d.newly_passing.push_back(c);
      else
        d.other_changes.push_back(c);
    } else if (x && y && x->millis != y->millis) {
      d.timing.push_back({std::get<0>(k), std::get<1>(k), x->millis, y->millis});
    }
  };
  for (const auto& k : ob) {
    auto it = ma.find(k);
    classify(k, it == ma.end() ? nullptr : it->second, mb.at(k));
  }
  for (const auto& k : oa)
    if (!mb.count(k)) classify(k, ma.at(k), nullptr);
  return d;
}

json diff_to_json(const ReportDiff& d) {
  auto changes = [](const std::vector<StatusChange>& v) {
    json a = json::array();
    for (const auto& c : v)
      a.push_back({{"case", c.case_id}, {"identity", c.identity}, {"before", c.before}, {"after", c.after}});
    return a;
  };
  json t = json::array();
  for (const auto& x : d.timing)
    t.push_back({{"case", x.case_id},
                 {"identity", x.identity},
                 {"before_ms", x.before_ms},
                 {"after_ms", x.after_ms},
                 {"delta_ms", x.after_ms - x.before_ms}});
  return {{"regressions", changes(d.regressions)},
          {"newly_passing", changes(d.newly_passing)},
          {"other_changes", changes(d.other_changes)},
          {"timing", t}};
}

}  // namespace ospyb
