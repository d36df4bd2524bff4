#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <sstream>

#include "gaussmap/errors.hpp"
#include "gaussmap/verify.hpp"

namespace gaussmap {
namespace {

using ojson = nlohmann::ordered_json;

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Non-finite residuals are written as strings so the JSON stays valid.
ojson number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_number(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  return s == "inf" ? HUGE_VAL : -HUGE_VAL;
}

ojson tolerances_json(const ToleranceProfile& t) {
  return {{"profile", t.name},
          {"structural", t.structural},
          {"derived", t.derived},
          {"spectrum", t.spectrum},
          {"contract", t.contract}};
}

ojson record_json(const CheckRecord& r) {
  ojson values = ojson::object();
  for (const auto& [k, v] : r.values) values[k] = number(v);
  return {{"check", r.check_id},  {"example", r.example},       {"label", r.label},
          {"params", r.params},   {"samples", r.samples},       {"max_residual", number(r.max_residual)},
          {"tolerance", r.tolerance}, {"expect", to_string(r.expect)}, {"verdict", to_string(r.verdict)},
          {"values", values}};
}

ojson records_json(const std::vector<CheckRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr;
}

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> all) {
  for (E e : all)
    if (s == to_string(e)) return e;
  throw UsageError("unknown enum value '" + s + "' in report");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string params_text(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string values_text(const std::vector<std::pair<std::string, double>>& values) {
  std::string out;
  for (const auto& [k, v] : values) {
    if (!out.empty()) out += ';';
    out += k + "=" + fmt(v);
  }
  return out;
}

const char* kCsvHeader = "check,example,label,params,samples,max_residual,tolerance,expect,verdict,values";

std::string record_csv(const CheckRecord& r) {
  return csv_field(r.check_id) + "," + csv_field(r.example) + "," + csv_field(r.label) + "," +
         csv_field(params_text(r.params)) + "," + std::to_string(r.samples) + "," + fmt(r.max_residual) + "," +
         fmt(r.tolerance) + "," + to_string(r.expect) + "," + to_string(r.verdict) + "," +
         csv_field(values_text(r.values));
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double grid_number(const std::string& key, const std::string& raw) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(v)) {
    throw UsageError("grid axis '" + key + "': bad number '" + raw + "'");
  }
  return v;
}

}  // namespace

bool VerificationReport::ok() const {
  return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return is_failure(r.verdict); });
}

VerificationReport make_report(std::uint64_t seed, const ToleranceProfile& tolerances,
                               std::vector<CheckRecord> records) {
  VerificationReport rep;
  rep.seed = seed;
  rep.tolerances = tolerances;
  rep.records = std::move(records);
  ojson id_basis = {{"seed", seed}, {"tolerances", tolerances_json(tolerances)}, {"records", records_json(rep.records)}};
  rep.run_id = fnv1a(id_basis.dump());
  return rep;
}

std::string to_json(const VerificationReport& report) {
  int counts[5] = {0, 0, 0, 0, 0};
  for (const auto& r : report.records) ++counts[static_cast<int>(r.verdict)];
  ojson j = {{"format_version", report.format_version},
             {"run_id", report.run_id},
             {"seed", report.seed},
             {"tolerances", tolerances_json(report.tolerances)},
             {"summary",
              {{"records", report.records.size()},
               {"pass", counts[static_cast<int>(Verdict::Pass)]},
               {"fail", counts[static_cast<int>(Verdict::Fail)]},
               {"fail_expected", counts[static_cast<int>(Verdict::FailExpected)]},
               {"unexpected_pass", counts[static_cast<int>(Verdict::UnexpectedPass)]},
               {"info", counts[static_cast<int>(Verdict::Info)]},
               {"ok", report.ok()}}},
             {"records", records_json(report.records)}};
  return j.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : report.records) out += record_csv(r) + "\n";
  return out;
}

VerificationReport report_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
  try {
    VerificationReport rep;
    rep.format_version = j.at("format_version").get<std::string>();
    if (rep.format_version != kReportFormat) throw UsageError("unsupported report format " + rep.format_version);
    rep.run_id = j.at("run_id").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    const auto& t = j.at("tolerances");
    rep.tolerances.name = t.at("profile").get<std::string>();
    rep.tolerances.structural = t.at("structural").get<double>();
    rep.tolerances.derived = t.at("derived").get<double>();
    rep.tolerances.spectrum = t.at("spectrum").get<double>();
    rep.tolerances.contract = t.at("contract").get<double>();
    for (const auto& rj : j.at("records")) {
      CheckRecord r;
      r.check_id = rj.at("check").get<std::string>();
      r.example = rj.at("example").get<std::string>();
      r.label = rj.at("label").get<std::string>();
      r.params = rj.at("params").get<Params>();
      r.samples = rj.at("samples").get<int>();
      r.max_residual = read_number(rj.at("max_residual"));
      r.tolerance = rj.at("tolerance").get<double>();
      r.expect = parse_enum(rj.at("expect").get<std::string>(), {Expect::Pass, Expect::Fail, Expect::Info});
      r.verdict = parse_enum(rj.at("verdict").get<std::string>(),
                             {Verdict::Pass, Verdict::Fail, Verdict::FailExpected, Verdict::UnexpectedPass, Verdict::Info});
      for (const auto& [k, v] : rj.at("values").items()) r.values.emplace_back(k, read_number(v));
      rep.records.push_back(std::move(r));
    }
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
}

std::vector<Params> expand_grid(const std::string& spec) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& part : split(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("grid axis '" + part + "' is not key=values");
    const std::string key = trim(part.substr(0, eq));
    const std::string rhs = trim(part.substr(eq + 1));
    if (std::any_of(axes.begin(), axes.end(), [&](const auto& a) { return a.first == key; })) {
      throw UsageError("grid axis '" + key + "' given twice");
    }
    std::vector<std::string> values;
    const auto range = split(rhs, ':');
    if (range.size() == 3) {
      const double lo = grid_number(key, range[0]);
      const double hi = grid_number(key, range[1]);
      const double count = grid_number(key, range[2]);
      if (count < 1 || count != std::floor(count) || count > 10000) {
        throw UsageError("grid axis '" + key + "': count must be an integer in 1..10000");
      }
      const int c = static_cast<int>(count);
      for (int i = 0; i < c; ++i) values.push_back(fmt(c == 1 ? lo : lo + (hi - lo) * i / (c - 1)));
    } else if (range.size() == 1) {
      values = split(rhs, ',');
      if (std::any_of(values.begin(), values.end(), [](const std::string& v) { return v.empty(); })) {
        throw UsageError("grid axis '" + key + "' has an empty value");
      }
    } else {
      throw UsageError("grid axis '" + key + "': expected lo:hi:count or a value list");
    }
    axes.emplace_back(key, std::move(values));
  }
  if (axes.empty()) throw UsageError("empty grid");
  std::vector<Params> out{Params{}};
  for (const auto& [key, values] : axes) {
    std::vector<Params> next;
    for (const auto& base : out) {
      for (const auto& v : values) {
        Params p = base;
        p[key] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string instantiate_example(const std::string& tmpl, const Params& params) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out += tmpl[i];
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string::npos) throw UsageError("unterminated placeholder in '" + tmpl + "'");
    const std::string key = tmpl.substr(i + 1, close - i - 1);
    auto it = params.find(key);
    if (it == params.end()) throw UsageError("no grid axis for placeholder {" + key + "}");
    out += it->second;
    i = close;
  }
  return out;
}

std::vector<ScanRow> run_scan(const std::string& check_id, const std::string& example_template,
                              const std::string& grid_spec, std::uint64_t seed,
                              const ToleranceProfile& tolerances) {
  const CheckInfo& info = check_info(check_id);
  const std::string tmpl = example_template.empty() ? info.default_example : example_template;
  std::vector<ScanRow> rows;
  for (const Params& point : expand_grid(grid_spec)) {
    VerifyRequest req;
    req.check_id = check_id;
    req.example = instantiate_example(tmpl, point);
    req.seed = seed;
    req.tolerances = tolerances;
    for (const auto& [k, v] : point) {
      if (tmpl.find("{" + k + "}") == std::string::npos) req.params[k] = v;
    }
    for (auto& rec : run_check(req)) rows.push_back({point, std::move(rec)});
  }
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = std::string("point,") + kCsvHeader + "\n";
  for (const auto& row : rows) out += csv_field(params_text(row.point)) + "," + record_csv(row.record) + "\n";
  return out;
}

std::string scan_to_json(const std::vector<ScanRow>& rows, std::uint64_t seed,
                         const ToleranceProfile& tolerances) {
  ojson arr = ojson::array();
  for (const auto& row : rows) {
    ojson rj = record_json(row.record);
    arr.push_back({{"point", row.point}, {"record", rj}});
  }
  ojson j = {{"format_version", kReportFormat},
             {"seed", seed},
             {"tolerances", tolerances_json(tolerances)},
             {"rows", arr}};
  j["run_id"] = fnv1a(j.dump());
  return j.dump(2) + "\n";
}

}  // namespace gaussmap
