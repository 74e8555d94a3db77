#pragma once

#include <utility>

#include "asymtrunc/grid.hpp"
#include "asymtrunc/maximal.hpp"

namespace asymtrunc {

enum class A1Kind { power, unit };

// A(x, xi) = a1(|xi|) a2(x) xi with a2 diagonal.
struct EllipticOperatorSpec {
  double p = 2.0;
  A1Kind a1_kind = A1Kind::power;
  // power kind: a1(t) = t^(p-2) for t >= 1 and t^(-1+eps_a) min(1, t^(p-1-eps_a)) below.
  double eps_a = 0.5;
  VectorField a2;
  double nu = 1.0;

  // a2 = identity on grid g.
  static EllipticOperatorSpec isotropic(const GridSpec& g, double p, A1Kind kind, double nu = 1.0,
                                        double eps_a = 0.5);
  double a1(double t) const;
  // Throws ValidationError on p <= 1, nu < 1, eps_a <= 0 or a2 outside [1, nu].
  void validate() const;
};

// Sampled bounds of the growth assumption on a1.
struct A1Check {
  double large_min = 0.0;  // min over t > 1 of a1(t) / t^(p-2)
  double large_max = 0.0;  // max over t > 1 of a1(t) / t^(p-2)
  double small_max = 0.0;  // max over 0 < t < 1 of a1(t) / t^(-1+eps_a)
  bool bounded = false;    // large_min > 0 and all ratios finite and the large range flat
};
A1Check check_a1(const EllipticOperatorSpec& spec, std::size_t samples = 200);

VectorField elliptic_eval(const EllipticOperatorSpec& spec, const VectorField& grad);

// sum (A(x, grad u) - f) . grad test * vol
double weak_form_pairing(const EllipticOperatorSpec& spec, const ScalarField& u, const ScalarField& test,
                         const VectorField& f);

// Good set {max_i N(d_i u)_+ <= lambda} n {max_i N(d_i u)_- <= mu} and its complement.
std::pair<Mask, Mask> good_bad_split(const ScalarField& u, double lambda, double mu, const RadiusSet& radii);

}  // namespace asymtrunc
