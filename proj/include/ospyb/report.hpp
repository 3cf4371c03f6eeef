#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ospyb/graded_space.hpp"

namespace ospyb {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

/// Outcome of one identity check. `identity` is the anchor name of the
/// identity (e.g. "eq:YBEgraded"); `witness` holds the first failing
/// component and its residual, or the skip reason.
struct VerificationReport {
  std::string identity;
  Status status = Status::pass;
  std::optional<std::string> witness;
  double millis = 0;

  bool passed() const { return status == Status::pass; }
};

using ReportList = std::vector<VerificationReport>;

inline bool all_passed(const ReportList& r) {
  for (const auto& x : r)
    if (x.status == Status::fail) return false;
  return true;
}

/// Pass when `residual` vanishes, otherwise fail with its first nonzero entry.
template <class E>
VerificationReport zero_check(std::string identity, const OpMatrix<E>& residual) {
  VerificationReport r{std::move(identity), Status::pass, std::nullopt, 0};
  if (auto w = first_nonzero(residual)) {
    r.status = Status::fail;
    r.witness = *w;
  }
  return r;
}

inline VerificationReport bool_check(std::string identity, bool ok, std::string witness = {}) {
  VerificationReport r{std::move(identity), ok ? Status::pass : Status::fail, std::nullopt, 0};
  if (!ok) r.witness = witness.empty() ? "condition is false" : witness;
  return r;
}

inline VerificationReport skipped(std::string identity, std::string reason) {
  return {std::move(identity), Status::skipped, std::move(reason), 0};
}

/// Runs f() (which returns a VerificationReport) and fills in the elapsed time.
template <class F>
VerificationReport timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Folds several sub-checks into one report under `identity`; the first
/// failing sub-check provides the witness.
inline VerificationReport combine(std::string identity, const ReportList& parts) {
  VerificationReport r{std::move(identity), Status::pass, std::nullopt, 0};
  for (const auto& p : parts) {
    r.millis += p.millis;
    if (p.status == Status::fail && r.status != Status::fail) {
      r.status = Status::fail;
      r.witness = p.identity + ": " + p.witness.value_or("");
    }
  }
  return r;
}

enum class Mode { exact, sample };

inline const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "sample"; }

/// The 7x7 grid {-3..3}^2 used by sampling mode. Every identity checked this
/// way is polynomial of degree <= 6 in each of u and v, so vanishing on the
/// grid is equivalent to vanishing identically.
inline std::vector<std::pair<Rational, Rational>> sample_grid() {
  std::vector<std::pair<Rational, Rational>> g;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) g.emplace_back(a, b);
  return g;
}

/// Evaluates residual(u, v) either with formal u, v or at every grid point.
template <class F>
VerificationReport check_identity(std::string identity, Mode mode, F&& residual) {
  return timed([&] {
    if (mode == Mode::exact) return zero_check(identity, residual(Scalar::u(), Scalar::v()));
    for (const auto& [a, b] : sample_grid()) {
      auto r = zero_check(identity, residual(Scalar(a), Scalar(b)));
      if (!r.passed()) {
        r.witness = "at u=" + to_string(a) + ", v=" + to_string(b) + ": " + *r.witness;
        return r;
      }
    }
    return VerificationReport{identity, Status::pass, std::nullopt, 0};
  });
}

}  // namespace ospyb
