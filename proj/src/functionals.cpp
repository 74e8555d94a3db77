#include "asymtrunc/verify/functionals.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

QuasiconcaveFunctional QuasiconcaveFunctional::det2() { return {FunctionalKind::det2, 2.0}; }

QuasiconcaveFunctional QuasiconcaveFunctional::det3() { return {FunctionalKind::det3, 3.0}; }

QuasiconcaveFunctional QuasiconcaveFunctional::neg_ell1_power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("neg_ell1_power needs p >= 1");
  return {FunctionalKind::neg_ell1_power, p};
}

QuasiconcaveFunctional QuasiconcaveFunctional::from_name(const std::string& name, double p) {
  if (name == "det2") return det2();
  if (name == "det3") return det3();
  if (name == "neg-ell1" || name == "neg_ell1_power") return neg_ell1_power(p);
  throw ValidationError("unknown functional '" + name + "' (expected det2, det3 or neg-ell1)");
}

std::string QuasiconcaveFunctional::name() const {
  switch (kind) {
    case FunctionalKind::det2: return "det2";
    case FunctionalKind::det3: return "det3";
    case FunctionalKind::neg_ell1_power: return "neg_ell1_power";
  }
  return "unknown";
}

std::size_t QuasiconcaveFunctional::required_dim() const {
  switch (kind) {
    case FunctionalKind::det2: return 2;
    case FunctionalKind::det3: return 3;
    case FunctionalKind::neg_ell1_power: return 0;
  }
  return 0;
}

double QuasiconcaveFunctional::growth_constant(std::size_t dim) const {
  switch (kind) {
    // |ad - bc| <= (a^2 + b^2 + c^2 + d^2) / 2
    case FunctionalKind::det2: return 0.5;
    // Hadamard plus AM-GM on the column norms
    case FunctionalKind::det3: return std::pow(3.0, -1.5);
    // |v|_1 <= dim |v|_F for dim x dim matrices
    case FunctionalKind::neg_ell1_power: return std::pow(static_cast<double>(dim), p);
  }
  return 0.0;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det3(std::span<const double> m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double QuasiconcaveFunctional::operator()(std::span<const double> m, std::size_t dim) const {
  const std::size_t need = required_dim();
  if ((need != 0 && dim != need) || m.size() != dim * dim) {
    throw ValidationError(name() + ": matrix shape does not match");
  }
  switch (kind) {
    case FunctionalKind::det2: return asymtrunc::det2(m[0], m[1], m[2], m[3]);
    case FunctionalKind::det3: return asymtrunc::det3(m);
    case FunctionalKind::neg_ell1_power: {
      double s = 0.0;
      for (double x : m) s += std::fabs(x);
      return -std::pow(s, p);
    }
  }
  return 0.0;
}

ScalarField F_eval(const QuasiconcaveFunctional& F, const MatrixField& grad) {
  const std::size_t need = F.required_dim();
  if (grad.rows != grad.cols || (need != 0 && grad.rows != need)) {
    throw ValidationError(F.name() + ": gradient is " + std::to_string(grad.rows) + "x" +
                          std::to_string(grad.cols) + ", expected a square matrix" +
                          (need ? " of size " + std::to_string(need) : std::string()));
  }
  const std::size_t dim = grad.rows;
  ScalarField out(grad.grid);
  std::vector<double> m(dim * dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t e = 0; e < m.size(); ++e) m[e] = grad.entries[e][i];
    out[i] = F(m, dim);
  }
  return out;
}

std::pair<ScalarField, ScalarField> F_split(const QuasiconcaveFunctional& F, const MatrixField& grad) {
  const ScalarField f = F_eval(F, grad);
  ScalarField pos(f.grid), neg(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    pos[i] = f[i] > 0.0 ? f[i] : 0.0;
    neg[i] = f[i] < 0.0 ? -f[i] : 0.0;
  }
  return {std::move(pos), std::move(neg)};
}

PeriodicField PeriodicField::zero(std::size_t dim) {
  PeriodicField f;
  f.dim = dim;
  f.components.assign(dim, {});
  return f;
}

PeriodicField PeriodicField::random(std::size_t dim, std::size_t modes, int kmax, double amplitude,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wave(-kmax, kmax);
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  PeriodicField f = zero(dim);
  for (auto& comp : f.components) {
    for (std::size_t m = 0; m < modes; ++m) {
      TrigMode mode;
      for (std::size_t a = 0; a < dim; ++a) mode.wavevector.push_back(wave(rng));
      mode.cos_amp = amp(rng);
      mode.sin_amp = amp(rng);
      comp.push_back(std::move(mode));
    }
  }
  return f;
}

void PeriodicField::validate() const {
  if (components.size() != dim) throw ValidationError("periodic field needs one component per axis");
  for (const auto& comp : components) {
    for (const auto& mode : comp) {
      if (mode.wavevector.size() != dim) throw ValidationError("wavevector dimension mismatch");
      for (double k : mode.wavevector) {
        if (!std::isfinite(k) || k != std::round(k)) {
          throw ValidationError("psi is not periodic on the unit torus: wavevector entry " +
                                std::to_string(k) + " is not an integer");
        }
      }
    }
  }
}

double PeriodicField::value(std::size_t component, std::span<const double> x) const {
  double s = 0.0;
  for (const auto& mode : components[component]) {
    double phase = 0.0;
    for (std::size_t a = 0; a < dim; ++a) phase += mode.wavevector[a] * x[a];
    phase *= 2.0 * std::numbers::pi;
    s += mode.cos_amp * std::cos(phase) + mode.sin_amp * std::sin(phase);
  }
  return s;
}

NullLagrangianResult null_lagrangian_check(const QuasiconcaveFunctional& F, std::span<const double> A,
                                           const PeriodicField& psi, std::size_t n) {
  psi.validate();
  const std::size_t d = psi.dim;
  if (A.size() != d * d) throw ValidationError("matrix A must be dim x dim");
  if (n < 2) throw ValidationError("torus grid needs n >= 2");
  const GridSpec g = GridSpec::cube(d, n, 1.0 / static_cast<double>(n));
  const double h = g.spacings[0];

  // psi at the grid nodes i h
  std::vector<std::vector<double>> vals(d, std::vector<double>(g.cell_count()));
  std::vector<double> x(d);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto idx = g.unravel(i);
    for (std::size_t a = 0; a < d; ++a) x[a] = static_cast<double>(idx[a]) * h;
    for (std::size_t r = 0; r < d; ++r) vals[r][i] = psi.value(r, x);
  }

  NullLagrangianResult res;
  res.lhs = F(A, d);
  std::vector<double> m(d * d);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto idx = g.unravel(i);
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t stride = g.stride(c);
      const std::size_t next = idx[c] + 1 < n ? i + stride : i + stride - n * stride;
      for (std::size_t r = 0; r < d; ++r) m[r * d + c] = A[r * d + c] + (vals[r][next] - vals[r][i]) / h;
    }
    sum += F(m, d);
  }
  res.rhs = sum / static_cast<double>(g.cell_count());
  const double diff = std::fabs(res.lhs - res.rhs);
  res.defect = res.lhs != 0.0 ? diff / std::fabs(res.lhs) : diff;
  return res;
}

}  // namespace asymtrunc
