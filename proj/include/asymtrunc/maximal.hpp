#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asymtrunc/grid.hpp"
#include "asymtrunc/report.hpp"

namespace asymtrunc {

enum class RadiusMode { full, dyadic, custom };

// Per-axis half-widths in cells. A half-width k selects the centered window
// of 2k + 1 cells. k = 0 is always present so every operator dominates |v|.
class RadiusSet {
 public:
  // {0, 1, ..., n_a - 1} on every axis.
  static RadiusSet full(const GridSpec& g);
  // {0, 1, 2, 4, ...} below n_a - 1, plus n_a - 1.
  static RadiusSet dyadic(const GridSpec& g);
  // dyadic for d >= 2, full for d = 1.
  static RadiusSet automatic(const GridSpec& g);
  // Explicit lists; 0 is inserted if missing. Lists must be strictly increasing.
  static RadiusSet custom(std::vector<std::vector<std::size_t>> per_axis);

  RadiusMode mode() const { return mode_; }
  std::size_t dims() const { return axes_.size(); }
  const std::vector<std::size_t>& axis(std::size_t a) const { return axes_.at(a); }
  // Sorted union of all axes, used as cube half-widths by hl_maximal.
  std::vector<std::size_t> cube_radii() const;
  // Number of per-axis half-width combinations.
  std::uint64_t combinations() const;
  // Throws ValidationError if the set does not fit the grid.
  void check(const GridSpec& g) const;

 private:
  RadiusMode mode_ = RadiusMode::custom;
  std::vector<std::vector<std::size_t>> axes_;
};

struct AnisoOptions {
  // Upper bound on cells * half-width combinations for the box operator.
  std::uint64_t max_box_evaluations = std::uint64_t{1} << 31;
};

// Max over cube half-widths of the average of |v| on centered cubes.
ScalarField hl_maximal(const ScalarField& v, const RadiusSet& radii);
// 1D maximal of |v| along one axis.
ScalarField directional_maximal(const ScalarField& v, std::size_t axis, const RadiusSet& radii);
// directional_maximal along axes 0, 1, ..., d-1 in turn.
ScalarField composed_maximal(const ScalarField& v, const RadiusSet& radii);
// Max over all per-axis half-width combinations of box averages of |v|.
ScalarField aniso_maximal(const ScalarField& v, const RadiusSet& radii, const AnisoOptions& opts = {});

enum class MaximalOp { hardy_littlewood, anisotropic };

// Per lambda: weak (1,1), the restricted (lambda/2 cut) form and the 1+eps
// form. The primary lhs/rhs columns hold the restricted form for the
// Hardy-Littlewood operator and the 1+eps form for the box operator.
SweepReport weak_type_constants(const ScalarField& v, MaximalOp op, std::span<const double> lambdas,
                                double eps, const RadiusSet& radii);

// ||N v||_p / ||v||_p, 0 when v == 0.
double lp_norm_ratio(const ScalarField& v, double p, const RadiusSet& radii);

}  // namespace asymtrunc
