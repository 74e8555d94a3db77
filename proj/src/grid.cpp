#include "asymtrunc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

GridSpec::GridSpec(std::vector<std::size_t> s, std::vector<double> h, std::vector<double> o)
    : sizes(std::move(s)), spacings(std::move(h)), origin(std::move(o)) {
  if (origin.empty()) origin.assign(sizes.size(), 0.0);
  validate();
}

GridSpec GridSpec::cube(std::size_t dims, std::size_t n, double h, double lower) {
  return GridSpec(std::vector<std::size_t>(dims, n), std::vector<double>(dims, h),
                  std::vector<double>(dims, lower));
}

void GridSpec::validate() const {
  const std::size_t d = sizes.size();
  if (d < 1 || d > kMaxDims) {
    throw ValidationError("grid dimension must be 1, 2 or 3 (got " + std::to_string(d) + ")");
  }
  if (spacings.size() != d || origin.size() != d) {
    throw ValidationError("grid sizes, spacings and origin must have the same length");
  }
  for (std::size_t a = 0; a < d; ++a) {
    if (sizes[a] < 2) throw ValidationError("grid sizes must be >= 2");
    if (!(spacings[a] > 0.0) || !std::isfinite(spacings[a])) {
      throw ValidationError("grid spacings must be positive and finite");
    }
    if (!std::isfinite(origin[a])) throw ValidationError("grid origin must be finite");
  }
}

std::size_t GridSpec::cell_count() const {
  std::size_t n = 1;
  for (auto s : sizes) n *= s;
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (auto h : spacings) v *= h;
  return v;
}

std::size_t GridSpec::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t a = axis + 1; a < sizes.size(); ++a) s *= sizes[a];
  return s;
}

std::array<std::size_t, kMaxDims> GridSpec::unravel(std::size_t flat) const {
  std::array<std::size_t, kMaxDims> idx{};
  for (std::size_t a = sizes.size(); a-- > 0;) {
    idx[a] = flat % sizes[a];
    flat /= sizes[a];
  }
  return idx;
}

std::size_t GridSpec::ravel(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a) flat = flat * sizes[a] + index[a];
  return flat;
}

double GridSpec::center(std::size_t axis, std::size_t index) const {
  return origin[axis] + (static_cast<double>(index) + 0.5) * spacings[axis];
}

bool GridSpec::compatible(const GridSpec& other) const {
  return sizes == other.sizes && spacings == other.spacings;
}

void require_compatible(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!a.compatible(b)) throw ValidationError(std::string(what) + ": grid mismatch");
}

ScalarField::ScalarField(GridSpec g, double fill) : grid(std::move(g)) {
  grid.validate();
  values.assign(grid.cell_count(), fill);
}

ScalarField::ScalarField(GridSpec g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  grid.validate();
  if (values.size() != grid.cell_count()) {
    throw ValidationError("field has " + std::to_string(values.size()) + " values, grid needs " +
                          std::to_string(grid.cell_count()));
  }
  if (!std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); })) {
    throw ValidationError("field values must be finite");
  }
}

VectorField::VectorField(GridSpec g, std::size_t count, double fill) : grid(std::move(g)) {
  components.assign(count, ScalarField(grid, fill));
}

VectorField::VectorField(std::vector<ScalarField> comps) : components(std::move(comps)) {
  if (components.empty()) throw ValidationError("vector field needs at least one component");
  grid = components.front().grid;
  for (const auto& c : components) require_compatible(grid, c.grid, "vector field components");
}

MatrixField::MatrixField(GridSpec g, std::size_t r, std::size_t c)
    : grid(std::move(g)), rows(r), cols(c) {
  entries.assign(r * c, ScalarField(grid));
}

Mask::Mask(GridSpec g, bool fill) : grid(std::move(g)) {
  grid.validate();
  cells.assign(grid.cell_count(), fill ? 1 : 0);
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

Mask Mask::complement() const {
  Mask out = *this;
  for (auto& c : out.cells) c = c ? 0 : 1;
  return out;
}

bool Mask::subset_of(const Mask& other) const {
  require_compatible(grid, other.grid, "mask subset");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] && !other.cells[i]) return false;
  }
  return true;
}

}  // namespace asymtrunc
