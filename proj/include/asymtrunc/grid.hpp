#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace asymtrunc {

inline constexpr std::size_t kMaxDims = 3;

// Axis-aligned cell grid. Axis 0 is the slowest index in row-major storage.
// origin is the lower corner of the box; cell i on axis a is centered at
// origin[a] + (i + 0.5) * spacings[a].
struct GridSpec {
  std::vector<std::size_t> sizes;
  std::vector<double> spacings;
  std::vector<double> origin;

  GridSpec() = default;
  GridSpec(std::vector<std::size_t> sizes, std::vector<double> spacings,
           std::vector<double> origin = {});

  // Same number of cells and spacing on every axis.
  static GridSpec cube(std::size_t dims, std::size_t n, double h, double lower = 0.0);

  std::size_t dims() const { return sizes.size(); }
  std::size_t cell_count() const;
  double cell_volume() const;
  std::size_t stride(std::size_t axis) const;
  std::array<std::size_t, kMaxDims> unravel(std::size_t flat) const;
  std::size_t ravel(std::span<const std::size_t> index) const;
  double center(std::size_t axis, std::size_t index) const;

  // Same sizes and spacings; origin is ignored because it does not affect
  // any discrete operator.
  bool compatible(const GridSpec& other) const;
  bool operator==(const GridSpec& other) const = default;

  // Throws ValidationError when an invariant is broken.
  void validate() const;
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(GridSpec g, double fill = 0.0);
  // Rejects a size mismatch and non-finite entries.
  ScalarField(GridSpec g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

// One component per entry; used for gradients (one per axis) and for
// vector-valued maps u = (u_1, ..., u_m).
struct VectorField {
  GridSpec grid;
  std::vector<ScalarField> components;

  VectorField() = default;
  VectorField(GridSpec g, std::size_t count, double fill = 0.0);
  explicit VectorField(std::vector<ScalarField> comps);

  std::size_t size() const { return components.size(); }
  ScalarField& operator[](std::size_t i) { return components[i]; }
  const ScalarField& operator[](std::size_t i) const { return components[i]; }
};

// entries[r * cols + c]; for a Jacobian, row r is the component of u and
// column c the differentiation axis.
struct MatrixField {
  GridSpec grid;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<ScalarField> entries;

  MatrixField() = default;
  MatrixField(GridSpec g, std::size_t r, std::size_t c);

  ScalarField& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const ScalarField& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct Mask {
  GridSpec grid;
  std::vector<std::uint8_t> cells;

  Mask() = default;
  explicit Mask(GridSpec g, bool fill = false);

  std::size_t size() const { return cells.size(); }
  bool operator[](std::size_t i) const { return cells[i] != 0; }
  void set(std::size_t i, bool v) { cells[i] = v ? 1 : 0; }
  std::size_t count() const;
  double measure() const { return static_cast<double>(count()) * grid.cell_volume(); }
  Mask complement() const;
  bool subset_of(const Mask& other) const;
};

// Throws ValidationError unless the grids agree in sizes and spacings.
void require_compatible(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace asymtrunc
