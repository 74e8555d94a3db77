#pragma once

#include <span>

#include "asymtrunc/field.hpp"
#include "asymtrunc/maximal.hpp"
#include "asymtrunc/report.hpp"
#include "asymtrunc/verify/functionals.hpp"

namespace asymtrunc {

// S = {M|grad u| > lambda} (within region); lhs = int_S F(grad u),
// rhs = lambda int_S (|grad u|^(p-1) + lambda^(p-1)). |grad u| is Frobenius.
SweepReport verify_consequently(const VectorField& u, const QuasiconcaveFunctional& F,
                                std::span<const double> lambdas, const RadiusSet& radii,
                                const Mask* region = nullptr);

// lhs = int_{F_+ <= C lambda^p} F_+,
// rhs = C lambda^(p-1) int_{|grad u| >= lambda/2} |grad u| + int_{F_- <= C lambda^p} F_-.
SweepReport verify_intermediary(const VectorField& u, const QuasiconcaveFunctional& F,
                                std::span<const double> lambdas, const Mask* region = nullptr,
                                double set_constant = 1.0);

struct OrliczConclusion {
  double hypothesis_gradient = 0.0;  // int |grad u|^p log(1+|grad u|)^alpha
  double hypothesis_negative = 0.0;  // int F_- log(1+F_-)^(alpha+1)
  double conclusion = 0.0;           // int F_+ log(1+F_+)^(alpha+1)
  double conclusion_coarse = 0.0;    // same on every other cell (spacing 2h)
  double relative_change = 0.0;
  double tolerance = 0.02;
  bool converged = false;

  Json to_json() const;
};

// The coarse level keeps every other cell of u and region; region cells on
// the coarse far face are dropped since their differences would reach the
// zero extension one coarse cell early.
OrliczConclusion orlicz_conclusion_check(const VectorField& u, const QuasiconcaveFunctional& F,
                                         const OrliczWeight& w, const Mask* region = nullptr,
                                         double tolerance = 0.02);

// Every other cell starting at index 0; origin shifted by -h/2 so that
// coarse centers coincide with the kept fine centers.
ScalarField subsample(const ScalarField& u);
Mask subsample(const Mask& m);

// Weights used when integrating level-set estimates in lambda.
double power_weight(double lambda, double s, double p);  // lambda^(s-p-1)
double log_weight(double lambda, double alpha);          // (1+lambda)^-1 log(1+lambda)^alpha

}  // namespace asymtrunc
