// Command-line front end: verify, scan, suite and list.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "gaussmap/catalog.hpp"
#include "gaussmap/errors.hpp"
#include "gaussmap/verify.hpp"

namespace {

using namespace gaussmap;

constexpr int kExitUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

std::string format_of(const std::string& requested, const std::string& path) {
  if (!requested.empty()) return requested;
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return "csv";
  return "json";
}

void print_summary(const VerificationReport& rep) {
  int bad = 0;
  for (const auto& r : rep.records) {
    if (!is_failure(r.verdict)) continue;
    ++bad;
    std::fprintf(stderr, "FAILED %s %s [%s] residual=%.3e tol=%.1e (%s)\n", r.check_id.c_str(), r.example.c_str(),
                 r.label.c_str(), r.max_residual, r.tolerance, to_string(r.verdict));
  }
  std::fprintf(stderr, "%zu records, %d failing, run %s\n", rep.records.size(), bad, rep.run_id.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss map harmonicity verifier"};
  app.require_subcommand(1);

  std::uint64_t seed = seed_from_env();
  std::string tol_name = "default";
  std::string format;
  std::string out_path;

  auto* verify = app.add_subcommand("verify", "run one check on one example");
  std::string check_id;
  std::string example;
  std::vector<std::string> raw_params;
  verify->add_option("check", check_id, "check id (see `list`)")->required();
  verify->add_option("--example,-e", example, "catalog example, e.g. circles(0.6)");
  verify->add_option("--param,-p", raw_params, "check parameter key=value")->allow_extra_args(false);
  verify->add_option("--seed", seed, "sample seed (default 42 or GAUSSMAP_SEED)");
  verify->add_option("--tol", tol_name, "tolerance profile: default, strict, loose");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out,-o", out_path, "output file (stdout if omitted)");

  auto* scan = app.add_subcommand("scan", "run a check over a parameter grid");
  std::string scan_check;
  std::string grid;
  std::string scan_example;
  scan->add_option("check", scan_check, "check id")->required();
  scan->add_option("--grid", grid, "e.g. \"r=0.3:0.8:6;theta=0,1\"")->required();
  scan->add_option("--example,-e", scan_example, "example template with {key} placeholders");
  scan->add_option("--seed", seed, "sample seed");
  scan->add_option("--tol", tol_name, "tolerance profile");
  scan->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--out,-o", out_path, "output file")->required();

  auto* suite = app.add_subcommand("suite", "run every check of the standard suite");
  suite->add_option("--seed", seed, "sample seed");
  suite->add_option("--tol", tol_name, "tolerance profile");
  suite->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--out,-o", out_path, "output file (stdout if omitted)");

  auto* list = app.add_subcommand("list", "list checks and examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const ToleranceProfile tol = ToleranceProfile::by_name(tol_name);
    if (*list) {
      std::cout << "checks:\n";
      for (const auto& c : check_catalog()) {
        std::cout << "  " << c.id << "  (default " << c.default_example << ")  " << c.summary << "\n";
      }
      std::cout << "examples:\n";
      for (const auto& n : example_names()) std::cout << "  " << n << "\n";
      return 0;
    }
    if (*verify || *suite) {
      std::vector<CheckRecord> records;
      if (*verify) {
        records = run_check({check_id, example, parse_params(raw_params), seed, tol});
      } else {
        records = run_suite(seed, tol);
      }
      const VerificationReport rep = make_report(seed, tol, std::move(records));
      emit(format_of(format, out_path) == "csv" ? to_csv(rep) : to_json(rep), out_path);
      print_summary(rep);
      return rep.exit_code();
    }
    const auto rows = run_scan(scan_check, scan_example, grid, seed, tol);
    emit(format_of(format, out_path) == "csv" ? scan_to_csv(rows) : scan_to_json(rows, seed, tol), out_path);
    int bad = 0;
    for (const auto& r : rows) bad += is_failure(r.record.verdict) ? 1 : 0;
    std::fprintf(stderr, "%zu rows, %d failing\n", rows.size(), bad);
    return bad == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
