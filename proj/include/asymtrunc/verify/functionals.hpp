#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asymtrunc/grid.hpp"

namespace asymtrunc {

enum class FunctionalKind { det2, det3, neg_ell1_power };

// F with F(0) = 0 and |F(v)| <= C (1 + |v|^p), |v| the Frobenius norm.
struct QuasiconcaveFunctional {
  FunctionalKind kind = FunctionalKind::det2;
  double p = 2.0;

  static QuasiconcaveFunctional det2();
  static QuasiconcaveFunctional det3();
  // F(v) = -|v|_1^p, the l1 norm taken over all matrix entries.
  static QuasiconcaveFunctional neg_ell1_power(double p);
  static QuasiconcaveFunctional from_name(const std::string& name, double p = 2.0);

  std::string name() const;
  // Square size required by the kind; 0 for any size.
  std::size_t required_dim() const;
  // Growth constant C for square matrices of size dim.
  double growth_constant(std::size_t dim) const;
  // Row-major square matrix of size dim.
  double operator()(std::span<const double> m, std::size_t dim) const;
};

double det2(double a, double b, double c, double d);
double det3(std::span<const double> m);

ScalarField F_eval(const QuasiconcaveFunctional& F, const MatrixField& grad);
// (F_+, F_-) with F = F_+ - F_-.
std::pair<ScalarField, ScalarField> F_split(const QuasiconcaveFunctional& F, const MatrixField& grad);

// a cos(2 pi k.x) + b sin(2 pi k.x)
struct TrigMode {
  std::vector<double> wavevector;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

// Vector field on the unit torus; components[r] is a sum of modes.
struct PeriodicField {
  std::size_t dim = 2;
  std::vector<std::vector<TrigMode>> components;

  static PeriodicField zero(std::size_t dim);
  // modes per component with integer wavevectors in [-kmax, kmax]^dim.
  static PeriodicField random(std::size_t dim, std::size_t modes, int kmax, double amplitude,
                              std::uint64_t seed);
  // Throws ValidationError unless every wavevector is integral.
  void validate() const;
  double value(std::size_t component, std::span<const double> x) const;
};

struct NullLagrangianResult {
  double lhs = 0.0;     // F(A)
  double rhs = 0.0;     // mean of F(A + D psi)
  double defect = 0.0;  // |lhs - rhs| / |lhs| (absolute when lhs = 0)
};

// A is row-major dim x dim; psi sampled on the n^dim torus grid with
// forward periodic differences.
NullLagrangianResult null_lagrangian_check(const QuasiconcaveFunctional& F, std::span<const double> A,
                                           const PeriodicField& psi, std::size_t n);

}  // namespace asymtrunc
