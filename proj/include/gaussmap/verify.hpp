#pragma once

// Named verification checks over catalog examples and the reports they
// produce. Every check evaluates a seeded sample plan in a fixed order, so a
// report is a pure function of (check, example, params, seed, tolerances).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gaussmap/sampling.hpp"

namespace gaussmap {

inline constexpr const char* kReportFormat = "gaussmap-report/1";

/// What a record is supposed to show: residual below tolerance, residual
/// above a threshold (negative control / non-existence), or nothing.
enum class Expect { Pass, Fail, Info };
enum class Verdict { Pass, Fail, FailExpected, UnexpectedPass, Info };

const char* to_string(Expect e);
const char* to_string(Verdict v);

/// Pass: residual ≤ tol. Fail: residual > tol gives FailExpected. NaN
/// residuals never pass.
Verdict judge(Expect expect, double residual, double tolerance);
bool is_failure(Verdict v);

using Params = std::map<std::string, std::string>;

struct CheckRecord {
  std::string check_id;
  std::string example;
  std::string label;
  Params params;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Expect expect = Expect::Pass;
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<std::string, double>> values;
};

struct VerifyRequest {
  std::string check_id;
  std::string example;  // empty: the check's default example
  Params params;
  std::uint64_t seed = kDefaultSeed;
  ToleranceProfile tolerances;
};

struct CheckInfo {
  std::string id;
  std::string default_example;
  std::string summary;
  std::vector<std::string> params;  // accepted parameter keys
};

const std::vector<CheckInfo>& check_catalog();
const CheckInfo& check_info(const std::string& id);

/// Runs one check. Unknown checks, examples or parameters, and examples the
/// check cannot handle, raise UsageError.
std::vector<CheckRecord> run_check(const VerifyRequest& request);

/// (check, example) pairs of the full suite.
std::vector<std::pair<std::string, std::string>> suite_plan();
std::vector<CheckRecord> run_suite(std::uint64_t seed, const ToleranceProfile& tolerances);

struct VerificationReport {
  std::string format_version = kReportFormat;
  std::string run_id;
  std::uint64_t seed = kDefaultSeed;
  ToleranceProfile tolerances;
  std::vector<CheckRecord> records;

  bool ok() const;
  int exit_code() const { return ok() ? 0 : 1; }
};

VerificationReport make_report(std::uint64_t seed, const ToleranceProfile& tolerances,
                               std::vector<CheckRecord> records);

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);
/// Reads back a JSON report (for schema round-trips in tests).
VerificationReport report_from_json(const std::string& text);

/// "key=lo:hi:count;key=v1,v2;key=v" → list of parameter assignments in
/// row-major order (first key slowest).
std::vector<Params> expand_grid(const std::string& spec);

/// Substitutes {key} placeholders of an example template.
std::string instantiate_example(const std::string& tmpl, const Params& params);

struct ScanRow {
  Params point;
  CheckRecord record;
};

/// Runs `check_id` at every grid point. Grid keys that appear as {key} in the
/// example template are substituted there; the rest become check params.
std::vector<ScanRow> run_scan(const std::string& check_id, const std::string& example_template,
                              const std::string& grid_spec, std::uint64_t seed,
                              const ToleranceProfile& tolerances);

std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_json(const std::vector<ScanRow>& rows, std::uint64_t seed,
                         const ToleranceProfile& tolerances);

}  // namespace gaussmap
