#pragma once

#include <array>
#include <optional>
#include <vector>

#include "asymtrunc/report.hpp"

namespace asymtrunc {

// alpha = (r + 1) / (q + 1); requires 1 < r < q.
double exponent_alpha(double r, double q);
// s = q (r + 1) / (q + 1); requires 1 < r < q.
double improvement_step(double r, double q);

struct ExponentState {
  double p = 0.0;
  double r = 0.0;
  double q = 0.0;
  double s = 0.0;
  double eps = 0.0;
  double alpha = 0.0;

  // alpha = (r+1)/(q+1), s = alpha q, eps = r - 1.
  static ExponentState from_proof(double p, double r, double q);
  // Requires max(1, p-1) < r < q < p, 0 < alpha <= 1, eps > 0.
  void validate() const;
  double q1() const;
  double q2() const;
  double q3() const;
};

struct FeasibilityReport {
  double q1 = 0.0, q2 = 0.0, q3 = 0.0;
  // (1+eps) + (s-1-eps)/alpha, (p-1+eps) + (1+s-p-eps)/alpha, s/alpha
  std::array<double, 3> lhs{};
  std::array<double, 3> slack{};  // q - lhs
  std::array<bool, 3> holds{};
  // (1+eps) + (q3+s-p-eps)/alpha, the combined form of the three conditions
  double combined_lhs = 0.0;
  // 0-based index of the condition with the least slack; ties go to the last
  std::size_t binding = 2;
  bool feasible = false;
  // s <= r + 1 - alpha, the condition for the gradient term
  bool gradient_term_ok = false;
  // int_1^inf lambda^(s-p-1) d lambda = 1/(p-s)
  double weight_integral = 0.0;

  Json to_json() const;
};

FeasibilityReport q3_feasibility(const ExponentState& state);

struct ExponentIteration {
  std::vector<double> s;  // s_0 = r0, s_{k+1} = improvement_step(s_k, q)
  std::size_t k_star = 0;
  std::size_t k_star_closed_form = 0;
  // Feasibility at each step (r = s_k) when p is given.
  std::vector<FeasibilityReport> checks;

  Json to_json() const;
};

// Iterates until q - s_k <= delta. Requires delta > 0 and 1 < r0 < q.
ExponentIteration exponent_iterate(double r0, double q, double delta, std::optional<double> p = std::nullopt);

// 0 if q - r0 <= delta, else ceil(log((q - r0)/delta) / log((q + 1)/q)).
std::size_t closed_form_k_star(double r0, double q, double delta);

}  // namespace asymtrunc
