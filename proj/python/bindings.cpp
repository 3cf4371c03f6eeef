#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ospyb/brauer.hpp"
#include "ospyb/oscillator.hpp"
#include "ospyb/osp.hpp"
#include "ospyb/spinor.hpp"
#include "ospyb/suite.hpp"

namespace py = pybind11;
using namespace ospyb;

namespace {

Mode to_mode(const std::string& m) {
  if (m == "exact") return Mode::exact;
  if (m == "sample") return Mode::sample;
  throw py::value_error("mode must be 'exact' or 'sample'");
}

Var to_var(const std::string& name) {
  if (name == "u") return Var::u;
  if (name == "v") return Var::v;
  if (name == "kappa") return Var::kappa;
  throw py::value_error("variable must be u, v or kappa");
}

// Rationals cross the boundary as strings such as "-3/2".
std::string rat_str(const Rational& q) { return q.get_str(); }

YBEOptions ybe(const std::string& mode, bool twisted) {
  YBEOptions o;
  o.mode = to_mode(mode);
  if (twisted) o.form = RForm::twisted;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact verification of osp(N|M) Yang-Baxter identities";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateOmegaError>(m, "DegenerateOmegaError", PyExc_ArithmeticError);

  py::class_<Scalar>(m, "Scalar")
      .def(py::init([](const std::string& text) { return Scalar::parse(text); }), py::arg("text"))
      .def(py::init([](long c) { return Scalar(c); }), py::arg("value"))
      .def_static("u", &Scalar::u)
      .def_static("v", &Scalar::v)
      .def_static("kappa", &Scalar::kappa)
      .def("is_zero", &Scalar::is_zero)
      .def("is_polynomial", &Scalar::is_polynomial)
      .def("substitute",
           [](const Scalar& s, const std::string& var, const std::string& value) {
             return s.substitute(to_var(var), parse_rational(value));
           })
      .def("eval",
           [](const Scalar& s, const std::map<std::string, std::string>& at) {
             std::map<Var, Rational> pts;
             for (const auto& [k, v] : at) pts[to_var(k)] = parse_rational(v);
             return rat_str(s.eval(pts));
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &Scalar::str)
      .def("__repr__", [](const Scalar& s) { return "Scalar('" + s.str() + "')"; });

  py::class_<GradedSpace, std::shared_ptr<GradedSpace>>(m, "Space")
      .def_readonly("N", &GradedSpace::N)
      .def_readonly("M", &GradedSpace::M)
      .def_readonly("eps", &GradedSpace::eps)
      .def_readonly("dim", &GradedSpace::dim)
      .def_readonly("grading", &GradedSpace::grading)
      .def_property_readonly("omega", [](const GradedSpace& s) { return rat_str(s.omega); })
      .def_property_readonly("beta", [](const GradedSpace& s) { return rat_str(s.beta); })
      .def_property_readonly("label", &GradedSpace::label)
      .def("__repr__", [](const GradedSpace& s) { return "Space" + s.label(); });

  m.def("make_space", [](int N, int M, int eps) { return std::const_pointer_cast<GradedSpace>(make_space(N, M, eps)); },
        py::arg("N"), py::arg("M"), py::arg("eps") = 1);

  py::enum_<Status>(m, "Status").value("passed", Status::pass).value("failed", Status::fail).value("skipped", Status::skipped);

  py::class_<VerificationReport>(m, "Report")
      .def_readonly("identity", &VerificationReport::identity)
      .def_readonly("status", &VerificationReport::status)
      .def_readonly("witness", &VerificationReport::witness)
      .def_readonly("millis", &VerificationReport::millis)
      .def_property_readonly("passed", &VerificationReport::passed)
      .def("__repr__", [](const VerificationReport& r) {
        return "<Report " + r.identity + " " + status_name(r.status) + ">";
      });

  auto sp = [](int N, int M, int eps) { return make_space(N, M, eps); };

  m.def("verify_braid_ybe", [=](int N, int M, int eps, const std::string& mode) {
    return verify_braid_YBE(sp(N, M, eps), ybe(mode, false));
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("mode") = "exact");
  m.def("verify_graded_ybe", [=](int N, int M, int eps, const std::string& mode, bool twisted) {
    return verify_graded_YBE(sp(N, M, eps), ybe(mode, twisted));
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("mode") = "exact", py::arg("twisted") = false);
  m.def("verify_unitarity", [=](int N, int M, int eps, const std::string& mode) {
    return verify_unitarity(sp(N, M, eps), ybe(mode, false));
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("mode") = "exact");
  m.def("verify_brauer", [=](int N, int M, int eps, int n) {
    return verify_brauer(brauer_generators(sp(N, M, eps), n));
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("n") = 3);
  m.def("verify_fusion", [=](int N, int M, int eps) { return verify_fusion(sp(N, M, eps)); },
        py::arg("N"), py::arg("M"), py::arg("eps") = 1);
  m.def("verify_intertwiner_identity", [=](int N, int M, int eps, const std::string& shift) {
    return verify_intertwiner_identity(sp(N, M, eps), parse_rational(shift));
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("shift") = "0");
  m.def("r_coefficients", [=](int N, int M, int eps, int kmax) {
    std::vector<Scalar> out = r_coefficients(sp(N, M, eps), kmax).values;
    return out;
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("kmax") = 6);
  m.def("verify_spinor_R", [=](int N, int M, int eps, int kmax) {
    const auto R = build_spinor_R(sp(N, M, eps), kmax);
    ReportList out{verify_recurrence(R.coefficients), verify_gamma_ratios(R.coefficients), verify_spinor_invariance(R)};
    for (auto& r : verify_spinor_rll_conditions(R)) out.push_back(std::move(r));
    return out;
  }, py::arg("N"), py::arg("M"), py::arg("eps") = 1, py::arg("kmax") = 6);

  // Suite functions exchange JSON text; the Python package converts to dicts.
  m.def("_default_config", [] {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : default_config().cases) cases.push_back(case_to_json(c));
    return nlohmann::json{{"cases", cases}}.dump();
  });
  m.def("_run_suite", [](const std::string& config) {
    SuiteConfig cfg;
    try {
      cfg = parse_config(nlohmann::json::parse(config));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(e.what());
    }
    std::vector<CaseReport> reps;
    {
      py::gil_scoped_release release;
      reps = run_suite(cfg);
    }
    return reports_to_json(reps).dump();
  });
  m.def("_diff_reports", [](const std::string& before, const std::string& after) {
    return diff_to_json(diff_reports(nlohmann::json::parse(before), nlohmann::json::parse(after))).dump();
  });
  m.def("suite_names", &suite_names);
}
