#include "asymtrunc/verify/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

namespace {

constexpr double kPi = std::numbers::pi;

// int_{r0}^{r1} f(rho) 2 pi rho d rho
template <class F>
double radial_integral(F f, double r0, double r1) {
  auto g = [&](double rho) { return f(rho) * 2.0 * kPi * rho; };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, r0, r1, 20, 1e-13);
}

double center_radius(const GridSpec& g, std::size_t flat) {
  const auto idx = g.unravel(flat);
  double s = 0.0;
  for (std::size_t a = 0; a < g.dims(); ++a) {
    const double x = g.center(a, idx[a]);
    s += x * x;
  }
  return std::sqrt(s);
}

Mask annulus_mask(const GridSpec& g, double r0, double r1) {
  Mask m(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto idx = g.unravel(i);
    bool interior = true;
    for (std::size_t a = 0; a < g.dims(); ++a) interior = interior && idx[a] + 1 < g.sizes[a];
    const double rho = center_radius(g, i);
    m.set(i, interior && rho >= r0 && rho <= r1);
  }
  return m;
}

void check_annulus(double r0, double r1, double h) {
  if (!(r0 > 0.0)) throw ValidationError("annulus inner radius must be > 0");
  if (!(r0 <= r1)) throw ValidationError("annulus needs r0 <= r1");
  if (!(r1 <= 1.0)) throw ValidationError("annulus outer radius must be <= 1");
  if (r0 <= h) {
    throw ValidationError("annulus inner radius " + std::to_string(r0) +
                          " is not larger than the grid spacing " + std::to_string(h) +
                          "; refine the grid or enlarge r0");
  }
}

}  // namespace

double RadialMapAnalytic::det_at(double rho) const { return beta * std::pow(rho, 2.0 * beta - 2.0); }

double RadialMapAnalytic::grad_norm_at(double rho) const {
  return std::sqrt(1.0 + beta * beta) * std::pow(rho, beta - 1.0);
}

double RadialMapAnalytic::gradient_orlicz(double p, double alpha) const {
  return radial_integral(
      [&](double rho) {
        const double t = grad_norm_at(rho);
        return std::pow(t, p) * std::pow(std::log1p(t), alpha);
      },
      r0, r1);
}

double RadialMapAnalytic::det_log_power(double alpha) const {
  return radial_integral(
      [&](double rho) {
        const double t = det_at(rho);
        return t * std::pow(std::log1p(t), alpha + 1.0);
      },
      r0, r1);
}

Json RadialMap::info() const {
  return {{"kind", "radial"},
          {"label", "radial beta=" + format_number(analytic.beta)},
          {"beta", analytic.beta},
          {"r0", analytic.r0},
          {"r1", analytic.r1},
          {"n", u.grid.sizes[0]},
          {"det_integral", analytic.det_integral},
          {"grad_sq_integral", analytic.grad_sq_integral},
          {"det_log_integral", analytic.det_log_integral}};
}

RadialMap gen_radial_map(double beta, std::size_t n, std::optional<double> r0, double r1) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be > 0");
  if (n < 4) throw ValidationError("radial map needs n >= 4");
  const GridSpec g = GridSpec::cube(2, n, 2.0 / static_cast<double>(n), -1.0);
  const double h = g.spacings[0];
  const double inner = r0.value_or(8.0 * h);
  check_annulus(inner, r1, h);

  RadialMap out;
  out.u = VectorField(g, 2);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto idx = g.unravel(i);
    const double x = g.center(0, idx[0]);
    const double y = g.center(1, idx[1]);
    const double scale = std::pow(std::hypot(x, y), beta - 1.0);
    out.u[0][i] = x * scale;
    out.u[1][i] = y * scale;
  }
  out.annulus = annulus_mask(g, inner, r1);

  RadialMapAnalytic& a = out.analytic;
  a.beta = beta;
  a.r0 = inner;
  a.r1 = r1;
  const double e = 2.0 * beta;
  a.det_integral = kPi * (std::pow(r1, e) - std::pow(inner, e));
  a.grad_sq_integral = kPi * (1.0 + beta * beta) * (std::pow(r1, e) - std::pow(inner, e)) / beta;
  a.det_log_integral =
      radial_integral([&](double rho) { return a.det_at(rho) * std::log1p(a.grad_norm_at(rho)); },
                      inner, r1);
  return out;
}

double SawtoothAnalytic::positive_moment(double r) const {
  return std::pow(spike_slope, r) * spike_frac * length;
}

double SawtoothAnalytic::negative_moment(double q) const {
  return std::pow(base_slope, q) * (1.0 - spike_frac) * length;
}

Json Sawtooth::info() const {
  return {{"kind", "sawtooth"},
          {"label", "sawtooth spike=" + format_number(analytic.spike_slope) +
                        " base=" + format_number(analytic.base_slope)},
          {"spike_slope", analytic.spike_slope},
          {"base_slope", analytic.base_slope},
          {"spike_frac", analytic.spike_frac},
          {"periods", periods},
          {"dims", u.grid.dims()},
          {"n", u.grid.sizes[0]},
          {"peak", analytic.peak}};
}

Sawtooth gen_sawtooth(double spike_slope, double base_slope, double spike_frac, std::size_t n,
                      std::size_t periods, std::size_t dims) {
  if (!(spike_slope > 0.0) || !(base_slope > 0.0)) throw ValidationError("slopes must be > 0");
  if (!(spike_frac > 0.0) || !(spike_frac <= 0.5)) throw ValidationError("spike_frac must lie in (0, 1/2]");
  if (dims != 1 && dims != 2) throw ValidationError("sawtooth dims must be 1 or 2");
  if (periods == 0 || n % periods != 0) {
    throw ValidationError("n must be a positive multiple of the number of periods");
  }
  const double rise = spike_slope * spike_frac;
  const double fall = base_slope * (1.0 - spike_frac);
  if (std::fabs(rise - fall) > 1e-12 * std::max(rise, fall)) {
    throw ValidationError("slopes are not closable: spike_slope*spike_frac = " + format_number(rise) +
                          " but base_slope*(1-spike_frac) = " + format_number(fall));
  }
  const std::size_t period = n / periods;
  const double up_cells = spike_frac * static_cast<double>(period);
  const auto m_up = static_cast<std::size_t>(std::llround(up_cells));
  if (std::fabs(up_cells - static_cast<double>(m_up)) > 1e-9 || m_up == 0 || m_up >= period) {
    throw ValidationError("spike_frac * (n / periods) must be a whole number of cells");
  }
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> line(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = i % period;
    line[i] = l <= m_up ? spike_slope * static_cast<double>(l) * h
                        : base_slope * static_cast<double>(period - l) * h;
  }
  Sawtooth out;
  out.periods = periods;
  out.analytic = {spike_slope, base_slope, spike_frac, 1.0, spike_slope * static_cast<double>(m_up) * h};
  if (dims == 1) {
    out.u = ScalarField(GridSpec({n}, {h}), std::move(line));
  } else {
    const GridSpec g({n, n}, {h, h});
    out.u = ScalarField(g);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.u[i * n + j] = line[i] * line[j] / out.analytic.peak;
    }
  }
  return out;
}

double PHarmonicAnalytic::grad_norm_at(double rho) const {
  return grad_coeff * std::pow(rho, grad_exponent);
}

double PHarmonicAnalytic::grad_power_integral(double r) const {
  const double sphere = n_dim == 2 ? 2.0 * kPi : 4.0 * kPi;
  const double e = static_cast<double>(n_dim) + r * grad_exponent;
  const double radial = e == 0.0 ? std::log(r1 / r0) : (std::pow(r1, e) - std::pow(r0, e)) / e;
  return std::pow(grad_coeff, r) * sphere * radial;
}

Json PHarmonic::info() const {
  return {{"kind", "p-harmonic"},
          {"label", "p-harmonic p=" + format_number(analytic.p) + " n=" + std::to_string(analytic.n_dim)},
          {"p", analytic.p},
          {"n_dim", analytic.n_dim},
          {"r0", analytic.r0},
          {"r1", analytic.r1},
          {"n", u.grid.sizes[0]},
          {"gamma", analytic.gamma},
          {"lr_threshold", analytic.lr_threshold}};
}

PHarmonic gen_p_harmonic_radial(double p, std::size_t n_dim, std::size_t n, std::optional<double> r0,
                                double r1) {
  if (n_dim != 2 && n_dim != 3) throw ValidationError("p-harmonic generator supports n_dim 2 or 3");
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("p must be > 1");
  if (p == static_cast<double>(n_dim)) {
    throw ValidationError("p equals the dimension: the fundamental solution is logarithmic");
  }
  if (n < 4) throw ValidationError("p-harmonic generator needs n >= 4");
  const GridSpec g = GridSpec::cube(n_dim, n, 2.0 / static_cast<double>(n), -1.0);
  const double h = g.spacings[0];
  const double inner = r0.value_or(8.0 * h);
  check_annulus(inner, r1, h);

  PHarmonic out;
  PHarmonicAnalytic& a = out.analytic;
  a.p = p;
  a.n_dim = n_dim;
  a.r0 = inner;
  a.r1 = r1;
  const double nd = static_cast<double>(n_dim);
  a.gamma = (p - nd) / (p - 1.0);
  a.grad_coeff = std::fabs(a.gamma);
  a.grad_exponent = (1.0 - nd) / (p - 1.0);
  a.lr_threshold = nd * (p - 1.0) / (nd - 1.0);

  out.u = ScalarField(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) out.u[i] = std::pow(center_radius(g, i), a.gamma);
  out.annulus = annulus_mask(g, inner, r1);
  return out;
}

}  // namespace asymtrunc
