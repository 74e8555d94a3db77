#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymtrunc/grid.hpp"
#include "asymtrunc/maximal.hpp"
#include "asymtrunc/report.hpp"

namespace asymtrunc::cli {

// A field written by `gen` (or any single field file) plus its sidecar.
struct Loaded {
  VectorField field;
  std::optional<Mask> region;
  Json generator = Json::object();
};

// Accepts a file path or a stem: <stem>.trnc, <stem>.0.trnc ... and
// <stem>.meta.json are looked up in that order.
Loaded load_input(const std::string& stem);
ScalarField load_scalar(const std::string& stem);

RadiusSet parse_radii(const std::string& mode, const GridSpec& g);

// Explicit list if given, else lo * 2^j for j < count.
std::vector<double> lambda_sweep(const std::vector<double>& given, double lo, std::size_t count);

// "-" writes to stdout.
void write_text(const std::string& text, const std::string& path);

struct GenOptions {
  std::string kind;
  std::size_t n = 128;
  double beta = 0.5;
  std::optional<double> r0;
  double r1 = 1.0;
  double spike_slope = 9.0;
  double base_slope = 1.0;
  double spike_frac = 0.1;
  std::size_t periods = 1;
  std::size_t dims = 1;
  double p = 3.0;
  std::size_t n_dim = 2;
  std::string out;
  std::string format = "binary";
};
Json run_gen(const GenOptions& o);

struct MaximalOptions {
  std::string op = "M";
  std::size_t axis = 0;
  std::string radii = "auto";
  std::string in;
  std::string out;
};
Json run_maximal(const MaximalOptions& o);

struct TruncateOptions {
  double lambda = 1.0;
  double mu = 1.0;
  double eps = 1.0;
  std::optional<double> inflation;
  std::string zero_boundary;
  std::string radii = "auto";
  std::string in;
  std::string out;
  std::string kept_out;
};
Json run_truncate(const TruncateOptions& o);

struct VerifyOptions {
  std::string in;
  std::string functional = "det2";
  double p = 2.0;
  double alpha = 0.0;
  std::vector<double> lambdas;
  double lambda_lo = 1.0 / 64.0;
  std::size_t lambda_count = 20;
  double set_constant = 1.0;
  double tolerance = 0.02;
  std::string radii = "auto";
  bool use_region = true;
  std::string op = "M";
  double eps = 0.5;
  double mu_scale = 1.0;
  std::size_t n = 64;
  std::size_t modes = 3;
  int kmax = 2;
  double amplitude = 0.05;
  std::uint64_t seed = 1;
  std::vector<double> matrix;
  double r = 0.0;
  double q = 0.0;
  double delta = 0.05;
};
Json run_verify(const std::string& what, const VerifyOptions& o);

// Reads JSON sweep reports and returns the merged CSV table.
std::string run_report(const std::vector<std::string>& inputs);

}  // namespace asymtrunc::cli
