#include "asymtrunc/field.hpp"

#include <cmath>
#include <string>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

OrliczWeight::OrliczWeight(double p_, double alpha_) : p(p_), alpha(alpha_) { validate(); }

void OrliczWeight::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw ValidationError("Orlicz exponent p must be > 1 (got " + std::to_string(p) + ")");
  }
  if (!std::isfinite(alpha)) throw ValidationError("Orlicz alpha must be finite");
}

VectorField gradient(const ScalarField& u) {
  const GridSpec& g = u.grid;
  const std::size_t d = g.dims();
  VectorField out(g, d);
  for (std::size_t axis = 0; axis < d; ++axis) {
    const std::size_t n = g.sizes[axis];
    const std::size_t stride = g.stride(axis);
    const std::size_t outer = g.cell_count() / (n * stride);
    const double h = g.spacings[axis];
    double* dst = out[axis].values.data();
    const double* src = u.values.data();
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = o * n * stride;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = base + i * stride;
        for (std::size_t t = 0; t < stride; ++t) {
          const double next = (i + 1 < n) ? src[row + stride + t] : 0.0;
          dst[row + t] = (next - src[row + t]) / h;
        }
      }
    }
  }
  return out;
}

MatrixField jacobian(const VectorField& u) {
  const std::size_t m = u.size();
  const std::size_t d = u.grid.dims();
  MatrixField out(u.grid, m, d);
  for (std::size_t r = 0; r < m; ++r) {
    VectorField gr = gradient(u[r]);
    for (std::size_t c = 0; c < d; ++c) out.at(r, c) = std::move(gr[c]);
  }
  return out;
}

ScalarField positive_part(const ScalarField& v) {
  ScalarField out(v.grid);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? v[i] : 0.0;
  return out;
}

ScalarField negative_part(const ScalarField& v) {
  ScalarField out(v.grid);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0.0 ? -v[i] : 0.0;
  return out;
}

ScalarField abs_field(const ScalarField& v) {
  ScalarField out(v.grid);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::fabs(v[i]);
  return out;
}

namespace {

template <class F>
ScalarField reduce_components(const VectorField& v, F f) {
  ScalarField out(v.grid);
  for (const auto& c : v.components) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f(c[i]);
  }
  return out;
}

bool in_region(const Mask* region, std::size_t i) { return region == nullptr || (*region)[i]; }

void check_region(const ScalarField& g, const Mask* region) {
  if (region) require_compatible(g.grid, region->grid, "integration region");
}

}  // namespace

ScalarField ell1_norm(const VectorField& v) {
  return reduce_components(v, [](double x) { return std::fabs(x); });
}

ScalarField ell1_positive(const VectorField& v) {
  return reduce_components(v, [](double x) { return x > 0.0 ? x : 0.0; });
}

ScalarField ell1_negative(const VectorField& v) {
  return reduce_components(v, [](double x) { return x < 0.0 ? -x : 0.0; });
}

ScalarField frobenius_norm(const MatrixField& m) {
  ScalarField out(m.grid);
  for (const auto& e : m.entries) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += e[i] * e[i];
  }
  for (auto& x : out.values) x = std::sqrt(x);
  return out;
}

double integrate(const ScalarField& g, const Mask* region) {
  check_region(g, region);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (in_region(region, i)) s += g[i];
  }
  return s * g.grid.cell_volume();
}

double orlicz_integral(const ScalarField& g, const OrliczWeight& w, const Mask* region) {
  w.validate();
  check_region(g, region);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = std::fabs(g[i]);
    if (t == 0.0 || !in_region(region, i)) continue;
    double term = std::pow(t, w.p);
    if (w.alpha != 0.0) term *= std::pow(std::log1p(t), w.alpha);
    s += term;
  }
  return s * g.grid.cell_volume();
}

double log_integral(const ScalarField& g, double alpha, const Mask* region) {
  check_region(g, region);
  const double e = alpha + 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g[i];
    if (t < 0.0) throw ValidationError("log_integral needs a nonnegative field");
    if (t == 0.0 || !in_region(region, i)) continue;
    s += e == 0.0 ? t : t * std::pow(std::log1p(t), e);
  }
  return s * g.grid.cell_volume();
}

double log_integral(const ScalarField& g, const OrliczWeight& w, const Mask* region) {
  return log_integral(g, w.alpha, region);
}

double superlevel_measure(const ScalarField& g, double t, const Mask* region) {
  check_region(g, region);
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > t && in_region(region, i)) ++count;
  }
  return static_cast<double>(count) * g.grid.cell_volume();
}

double lp_norm(const ScalarField& g, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_norm needs p >= 1");
  double s = 0.0;
  for (double x : g.values) s += std::pow(std::fabs(x), p);
  return std::pow(s * g.grid.cell_volume(), 1.0 / p);
}

ScalarField scaled(const ScalarField& g, double c) {
  ScalarField out = g;
  for (auto& x : out.values) x *= c;
  return out;
}

}  // namespace asymtrunc
