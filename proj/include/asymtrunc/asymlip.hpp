#pragma once

#include <span>
#include <vector>

#include "asymtrunc/grid.hpp"

namespace asymtrunc {

struct AsymMetricParams {
  double lambda = 1.0;
  double mu = 1.0;

  AsymMetricParams() = default;
  AsymMetricParams(double lambda_, double mu_);
  void validate() const;
  AsymMetricParams swapped() const { return {mu, lambda}; }
  AsymMetricParams scaled(double c) const { return {c * lambda, c * mu}; }
};

// lambda * t for t >= 0, -mu * t for t < 0.
double d_scalar(double t, const AsymMetricParams& m);
// Sum over coordinates of d_scalar(x_i - y_i).
double d_vec(std::span<const double> x, std::span<const double> y, const AsymMetricParams& m);
// d_vec between the centers of two cells (flat indices).
double d_cells(const GridSpec& g, std::size_t x, std::size_t y, const AsymMetricParams& m);

// Values of u on the cells selected by mask; other cells are ignored.
struct SampleSet {
  Mask mask;
  ScalarField values;

  SampleSet() = default;
  SampleSet(Mask m, ScalarField v);
  std::vector<std::size_t> indices() const;
};

// Smallest c >= 0 with u(x) - u(y) <= c d(x, y) on all pairs of X, by
// enumerating ordered pairs.
double asym_lip_modulus(const SampleSet& s, const AsymMetricParams& m);
// Same quantity from repeated sweep extensions: each round raises c to the
// largest ratio among pairs (x, nearest source of x) that still violate.
double asym_lip_modulus_fast(const SampleSet& s, const AsymMetricParams& m);

enum class Envelope { lower, upper };

struct ExtensionResult {
  ScalarField field;
  double modulus = 0.0;
  // modulus <= 1: the extension equals u on X.
  bool agrees = true;
};

// min_y (u(y) + d(x, y)) over y in X (upper: max_y (u(y) - d(y, x))),
// one cell at a time.
ExtensionResult mcshane_extend(const SampleSet& s, const AsymMetricParams& m,
                               Envelope env = Envelope::lower);
// Same envelope from forward/backward sweeps along each axis. Every interior
// forward difference lies in [-mu, lambda] as evaluated in floating point,
// except next to pairs of X cells whose own difference is outside that range.
ExtensionResult mcshane_extend_fast(const SampleSet& s, const AsymMetricParams& m,
                                    Envelope env = Envelope::lower);

// Sweep extension with caller-chosen pinning; the modulus is not computed.
ScalarField sweep_extension(const SampleSet& s, const AsymMetricParams& m, bool pin_samples);

// Per-axis sup of (D)_+ and (D)_- over forward differences D between
// neighbouring grid cells (the zero-extension face is not included).
struct SlopeSummary {
  std::vector<double> sup_positive;
  std::vector<double> sup_negative;
};
SlopeSummary interior_slopes(const ScalarField& f);
bool slopes_within(const ScalarField& f, double up, double down);

}  // namespace asymtrunc
