#pragma once

#include <optional>
#include <span>
#include <vector>

#include "asymtrunc/asymlip.hpp"
#include "asymtrunc/grid.hpp"
#include "asymtrunc/maximal.hpp"
#include "asymtrunc/report.hpp"

namespace asymtrunc {

struct TruncationParams {
  double lambda = 1.0;
  double mu = 1.0;
  double eps = 1.0;
  // Factor applied to (lambda, mu) before extending. Unset means
  // max(1, measured modulus on the kept set).
  std::optional<double> inflation;

  void validate() const;
};

// Half-space normal . x <= offset.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
};

struct ConvexPolytope {
  std::vector<HalfSpace> halfspaces;

  // Axis-aligned box lo <= x <= hi.
  static ConvexPolytope box(std::span<const double> lo, std::span<const double> hi);
  static ConvexPolytope from_json(const Json& j);
  Json to_json() const;

  bool contains(std::span<const double> x) const;
  // Cells whose centers satisfy every half-space.
  Mask inside_cells(const GridSpec& g) const;
};

struct T4Bound {
  double lhs = 0.0;
  double rhs = 0.0;
  // lhs / rhs (0 when lhs = 0, inf when only rhs = 0).
  double constant = 0.0;
};

struct TruncationResult {
  ScalarField field;
  // Source cells of the extension on which the output equals u.
  Mask kept;
  double lambda = 0.0;
  double mu = 0.0;
  double bad_measure = 0.0;
  double changed_measure = 0.0;
  double modulus = 0.0;
  double inflation = 1.0;
  // inflation * lambda and inflation * mu; all interior forward differences
  // of field lie in [-slope_down, slope_up].
  double slope_up = 0.0;
  double slope_down = 0.0;
  bool agrees = true;
  SlopeSummary slopes;
  // max_i sup (d_i field)_+ / lambda and max_i sup (d_i field)_- / mu.
  double t1 = 0.0;
  double t2 = 0.0;
  std::optional<T4Bound> t4;

  Json to_json() const;
};

// Per cell, max over axes of N(d_i u)_+ and of N(d_i u)_-.
struct BadSetLevels {
  ScalarField positive;
  ScalarField negative;
};
BadSetLevels bad_set_levels(const ScalarField& u, const RadiusSet& radii);
Mask good_set(const BadSetLevels& levels, double lambda, double mu);
Mask good_set(const ScalarField& u, double lambda, double mu, const RadiusSet& radii);

// Extension stage shared by all pipelines: extend u from kept with slopes
// (c lambda, c mu).
TruncationResult truncate_on_set(const ScalarField& u, const Mask& kept, double lambda, double mu,
                                 std::optional<double> inflation = std::nullopt);

// kept = {M(|grad u|_1) <= lambda}, symmetric slopes.
TruncationResult lipschitz_truncate(const ScalarField& u, double lambda, const RadiusSet& radii,
                                    std::optional<double> inflation = std::nullopt);
// kept = good_set(u, lambda, mu); fills t4.
TruncationResult asym_truncate(const ScalarField& u, const TruncationParams& params,
                               const RadiusSet& radii);
// Cells outside omega are added to the sources with value 0; u must vanish there.
TruncationResult asym_truncate_zero_boundary(const ScalarField& u, const ConvexPolytope& omega,
                                             const TruncationParams& params, const RadiusSet& radii);

// lhs = |{u != result.field}|; rhs = lambda^-(1+eps) int_{P >= lambda/2} P^(1+eps)
// + mu^-(1+eps) int_{Q >= mu/2} Q^(1+eps) with P, Q the l1 norms of the
// positive and negative parts of grad u.
T4Bound t4_bound(const ScalarField& u, const TruncationParams& params, const TruncationResult& result);

// asym_truncate over a lambda sweep with mu = mu_scale * lambda. lhs/rhs are
// the T4 sides; extra columns hold mu, bad_measure, inflation, t1 and t2.
SweepReport t4_sweep(const ScalarField& u, std::span<const double> lambdas, double mu_scale, double eps,
                     const RadiusSet& radii);

}  // namespace asymtrunc
