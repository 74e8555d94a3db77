#include "asymtrunc/verify/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/field.hpp"
#include "asymtrunc/truncate.hpp"

namespace asymtrunc {

EllipticOperatorSpec EllipticOperatorSpec::isotropic(const GridSpec& g, double p, A1Kind kind, double nu,
                                                     double eps_a) {
  EllipticOperatorSpec s;
  s.p = p;
  s.a1_kind = kind;
  s.eps_a = eps_a;
  s.nu = nu;
  s.a2 = VectorField(g, g.dims(), 1.0);
  s.validate();
  return s;
}

double EllipticOperatorSpec::a1(double t) const {
  if (a1_kind == A1Kind::unit) return 1.0;
  if (t >= 1.0) return std::pow(t, p - 2.0);
  return std::pow(t, -1.0 + eps_a) * std::min(1.0, std::pow(t, p - 1.0 - eps_a));
}

void EllipticOperatorSpec::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("p must be > 1");
  if (!(nu >= 1.0) || !std::isfinite(nu)) throw ValidationError("nu must be >= 1");
  if (!(eps_a > 0.0) || !std::isfinite(eps_a)) throw ValidationError("eps_a must be > 0");
  if (a2.components.empty()) throw ValidationError("a2 needs one diagonal entry per axis");
  for (const auto& c : a2.components) {
    for (double v : c.values) {
      if (!(v >= 1.0 && v <= nu)) {
        throw ValidationError("a2 entry " + std::to_string(v) + " lies outside [1, nu] with nu = " +
                              std::to_string(nu));
      }
    }
  }
}

A1Check check_a1(const EllipticOperatorSpec& spec, std::size_t samples) {
  A1Check c;
  c.large_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= samples; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(samples);
    const double big = std::pow(10.0, 6.0 * s);     // (1, 1e6]
    const double small = std::pow(10.0, -6.0 * s);  // [1e-6, 1)
    const double rl = spec.a1(big) / std::pow(big, spec.p - 2.0);
    c.large_min = std::min(c.large_min, rl);
    c.large_max = std::max(c.large_max, rl);
    if (small < 1.0) c.small_max = std::max(c.small_max, spec.a1(small) / std::pow(small, -1.0 + spec.eps_a));
  }
  // A flat ratio over six decades is the sampled form of c t^(p-2) <= a1 <= C t^(p-2).
  c.bounded = c.large_min > 0.0 && std::isfinite(c.large_max) && std::isfinite(c.small_max) &&
              c.large_max / c.large_min < 10.0;
  return c;
}

VectorField elliptic_eval(const EllipticOperatorSpec& spec, const VectorField& grad) {
  spec.validate();
  require_compatible(spec.a2.grid, grad.grid, "elliptic_eval");
  if (spec.a2.size() != grad.size()) throw ValidationError("a2 and gradient have different component counts");
  VectorField out(grad.grid, grad.size());
  for (std::size_t i = 0; i < grad.grid.cell_count(); ++i) {
    double t2 = 0.0;
    for (const auto& c : grad.components) t2 += c[i] * c[i];
    if (t2 == 0.0) continue;
    const double a = spec.a1(std::sqrt(t2));
    for (std::size_t k = 0; k < grad.size(); ++k) out[k][i] = a * (spec.a2[k][i] * grad[k][i]);
  }
  return out;
}

double weak_form_pairing(const EllipticOperatorSpec& spec, const ScalarField& u, const ScalarField& test,
                         const VectorField& f) {
  require_compatible(u.grid, test.grid, "weak_form_pairing test");
  require_compatible(u.grid, f.grid, "weak_form_pairing f");
  if (f.size() != u.grid.dims()) throw ValidationError("f needs one component per axis");
  const VectorField A = elliptic_eval(spec, gradient(u));
  const VectorField gt = gradient(test);
  double s = 0.0;
  for (std::size_t k = 0; k < A.size(); ++k) {
    for (std::size_t i = 0; i < u.size(); ++i) s += (A[k][i] - f[k][i]) * gt[k][i];
  }
  return s * u.grid.cell_volume();
}

std::pair<Mask, Mask> good_bad_split(const ScalarField& u, double lambda, double mu, const RadiusSet& radii) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ValidationError("levels must be > 0");
  Mask good = good_set(u, lambda, mu, radii);
  Mask bad = good.complement();
  return {std::move(good), std::move(bad)};
}

}  // namespace asymtrunc
