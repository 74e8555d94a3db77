#include "asymtrunc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

void SweepReport::push(double lam, double l, double r) {
  lambda.push_back(lam);
  lhs.push_back(l);
  rhs.push_back(r);
  ratio.push_back(safe_ratio(l, r));
}

double SweepReport::max_ratio() const {
  double m = 0.0;
  for (double r : ratio) m = std::max(m, r);
  return m;
}

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a number in report, got " + j.dump());
}

namespace {

Json json_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

}  // namespace

Json SweepReport::to_json() const {
  Json j;
  j["kind"] = kind;
  j["lambda"] = json_array(lambda);
  j["lhs"] = json_array(lhs);
  j["rhs"] = json_array(rhs);
  j["ratio"] = json_array(ratio);
  for (const auto& [k, v] : extra) j[k] = json_array(v);
  j["max_ratio"] = json_number(max_ratio());
  j["generator"] = generator;
  j["params"] = params;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string library_version() { return ASYMTRUNC_VERSION; }

namespace {

std::vector<std::string> table_columns(const Json& r) {
  if (!r.is_object() || !r.contains("lambda") || !r["lambda"].is_array()) {
    throw FormatError("report has no 'lambda' array");
  }
  const std::size_t n = r["lambda"].size();
  static const std::vector<std::string> leading = {"lambda", "lhs", "rhs", "ratio"};
  for (const auto& key : leading) {
    if (!r.contains(key) || !r[key].is_array() || r[key].size() != n) {
      throw FormatError("report column '" + key + "' missing or of wrong length");
    }
  }
  std::vector<std::string> cols = leading;
  std::vector<std::string> rest;
  for (const auto& [key, value] : r.items()) {
    if (std::find(leading.begin(), leading.end(), key) != leading.end()) continue;
    if (value.is_array() && value.size() == n) {
      const bool numeric = std::all_of(value.begin(), value.end(), [](const Json& x) {
        return x.is_number() || x.is_string();
      });
      if (numeric) rest.push_back(key);
    }
  }
  std::sort(rest.begin(), rest.end());
  cols.insert(cols.end(), rest.begin(), rest.end());
  return cols;
}

std::string generator_label(const Json& r) {
  if (!r.contains("generator")) return "";
  const Json& g = r["generator"];
  if (g.is_string()) return g.get<std::string>();
  if (g.is_object() && g.contains("label") && g["label"].is_string()) return g["label"].get<std::string>();
  if (g.is_object() && g.contains("kind") && g["kind"].is_string()) return g["kind"].get<std::string>();
  return g.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_table(const std::vector<Json>& reports) {
  std::ostringstream os;
  if (reports.empty()) {
    os << "lambda,lhs,rhs,ratio,generator\n";
    return os.str();
  }
  const auto cols = table_columns(reports.front());
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (table_columns(reports[i]) != cols) {
      throw FormatError("inconsistent report schemas: report " + std::to_string(i) +
                        " has different columns than report 0");
    }
  }
  for (const auto& c : cols) os << c << ',';
  os << "generator\n";
  for (const auto& r : reports) {
    const std::string label = csv_escape(generator_label(r));
    const std::size_t n = r["lambda"].size();
    for (std::size_t row = 0; row < n; ++row) {
      for (const auto& c : cols) {
        const Json& cell = r[c][row];
        os << (cell.is_number() ? format_number(cell.get<double>()) : csv_escape(cell.get<std::string>()))
           << ',';
      }
      os << label << '\n';
    }
  }
  return os.str();
}

}  // namespace asymtrunc
