#pragma once

#include "asymtrunc/grid.hpp"

namespace asymtrunc {

// Weight t^p * log(1 + t)^alpha.
struct OrliczWeight {
  double p = 2.0;
  double alpha = 0.0;

  OrliczWeight() = default;
  OrliczWeight(double p_, double alpha_);
  void validate() const;
};

// Forward differences (u(x + h_i e_i) - u(x)) / h_i; the last cell on each
// axis differences against the zero extension.
VectorField gradient(const ScalarField& u);

// Gradient of each component: entry (r, c) = d u_r / d x_c.
MatrixField jacobian(const VectorField& u);

ScalarField positive_part(const ScalarField& v);
ScalarField negative_part(const ScalarField& v);
ScalarField abs_field(const ScalarField& v);

// Pointwise sum over components of |v_i|.
ScalarField ell1_norm(const VectorField& v);
// Pointwise sum over components of (v_i)_+ (resp. (v_i)_-).
ScalarField ell1_positive(const VectorField& v);
ScalarField ell1_negative(const VectorField& v);
// Pointwise Frobenius norm of a matrix field.
ScalarField frobenius_norm(const MatrixField& m);

// Midpoint sums. region, when given, restricts the sum to its cells.
double integrate(const ScalarField& g, const Mask* region = nullptr);
double orlicz_integral(const ScalarField& g, const OrliczWeight& w, const Mask* region = nullptr);
// sum g * log(1 + g)^(alpha + 1) * vol for g >= 0; w.p is not used.
double log_integral(const ScalarField& g, const OrliczWeight& w, const Mask* region = nullptr);
double log_integral(const ScalarField& g, double alpha, const Mask* region = nullptr);
// (number of cells with g > t) * vol.
double superlevel_measure(const ScalarField& g, double t, const Mask* region = nullptr);
// (sum |g|^p vol)^(1/p), p >= 1.
double lp_norm(const ScalarField& g, double p);

ScalarField scaled(const ScalarField& g, double c);

}  // namespace asymtrunc
