#pragma once

#include <cstddef>
#include <optional>

#include "asymtrunc/grid.hpp"
#include "asymtrunc/report.hpp"

namespace asymtrunc {

// Continuum integrals of u(x) = x |x|^(beta - 1) over r0 <= |x| <= r1.
struct RadialMapAnalytic {
  double beta = 1.0;
  double r0 = 0.0;
  double r1 = 1.0;
  double det_integral = 0.0;
  double grad_sq_integral = 0.0;
  double det_log_integral = 0.0;

  double det_at(double rho) const;
  // Frobenius norm of the Jacobian at radius rho.
  double grad_norm_at(double rho) const;
  // int |grad u|^p log(1 + |grad u|)^alpha
  double gradient_orlicz(double p, double alpha) const;
  // int det log(1 + det)^(alpha + 1)
  double det_log_power(double alpha) const;
};

struct RadialMap {
  VectorField u;
  // Cells with r0 <= |center| <= r1 whose forward neighbours lie in the box.
  Mask annulus;
  RadialMapAnalytic analytic;

  Json info() const;
};

// Map on [-1, 1]^2 with n cells per axis. r0 defaults to 8 cells.
RadialMap gen_radial_map(double beta, std::size_t n, std::optional<double> r0 = std::nullopt,
                         double r1 = 1.0);

struct SawtoothAnalytic {
  double spike_slope = 0.0;
  double base_slope = 0.0;
  double spike_frac = 0.0;
  double length = 1.0;
  double peak = 0.0;

  // int (du)_+^r and int (du)_-^q over the unit interval.
  double positive_moment(double r) const;
  double negative_moment(double q) const;
};

struct Sawtooth {
  ScalarField u;
  SawtoothAnalytic analytic;
  std::size_t periods = 1;

  Json info() const;
};

// Teeth on [0, 1] (n cells, h = 1/n): each period rises with spike_slope on a
// spike_frac share of its cells and falls back to 0 with base_slope. dims = 2
// gives the normalized product s(x) s(y) / peak.
Sawtooth gen_sawtooth(double spike_slope, double base_slope, double spike_frac, std::size_t n,
                      std::size_t periods = 1, std::size_t dims = 1);

struct PHarmonicAnalytic {
  double p = 3.0;
  std::size_t n_dim = 2;
  double r0 = 0.0;
  double r1 = 1.0;
  double gamma = 0.0;          // u = |x|^gamma
  double grad_coeff = 0.0;     // |grad u| = grad_coeff * |x|^grad_exponent
  double grad_exponent = 0.0;
  double lr_threshold = 0.0;   // |grad u| in L^r near 0 iff r < lr_threshold

  double grad_norm_at(double rho) const;
  // int over the annulus of |grad u|^r
  double grad_power_integral(double r) const;
};

struct PHarmonic {
  ScalarField u;
  Mask annulus;
  PHarmonicAnalytic analytic;

  Json info() const;
};

// |x|^((p - n)/(p - 1)) on [-1, 1]^n_dim with n cells per axis.
PHarmonic gen_p_harmonic_radial(double p, std::size_t n_dim, std::size_t n,
                                std::optional<double> r0 = std::nullopt, double r1 = 1.0);

}  // namespace asymtrunc
