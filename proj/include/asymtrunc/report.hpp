#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace asymtrunc {

using Json = nlohmann::json;

// lhs / rhs with 0/0 = 0 and x/0 = +inf.
double safe_ratio(double lhs, double rhs);

// One inequality evaluated over a lambda sweep. extra holds further
// per-lambda columns (same length as lambda).
struct SweepReport {
  std::string kind;
  std::vector<double> lambda;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> ratio;
  std::map<std::string, std::vector<double>> extra;
  Json generator = Json::object();
  Json params = Json::object();
  std::vector<std::string> notes;

  void push(double lam, double l, double r);
  double max_ratio() const;
  Json to_json() const;
};

// Non-finite numbers are written as the strings "inf", "-inf" or "nan" so
// that reports stay valid JSON.
Json json_number(double x);
double number_from_json(const Json& j);

// CSV with columns lambda, lhs, rhs, ratio, remaining per-lambda array keys
// in sorted order, then generator. Each report contributes one row per
// lambda. Throws FormatError when the reports do not share the same columns.
std::string emit_table(const std::vector<Json>& reports);

// Shortest round-trippable form with 17 significant digits.
std::string format_number(double x);

std::string library_version();

}  // namespace asymtrunc
