#include "asymtrunc/verify/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

namespace {

constexpr double kSlackTol = 1e-12;

void check_order(double r, double q) {
  if (!std::isfinite(r) || !std::isfinite(q) || !(r > 1.0) || !(r < q)) {
    throw ValidationError("exponents must satisfy 1 < r < q (got r=" + format_number(r) +
                          ", q=" + format_number(q) + ")");
  }
}

}  // namespace

double exponent_alpha(double r, double q) {
  check_order(r, q);
  return (r + 1.0) / (q + 1.0);
}

double improvement_step(double r, double q) {
  check_order(r, q);
  return q * (r + 1.0) / (q + 1.0);
}

ExponentState ExponentState::from_proof(double p, double r, double q) {
  ExponentState st;
  st.p = p;
  st.r = r;
  st.q = q;
  st.alpha = exponent_alpha(r, q);
  st.s = st.alpha * q;
  st.eps = r - 1.0;
  st.validate();
  return st;
}

void ExponentState::validate() const {
  for (double v : {p, r, q, s, eps, alpha}) {
    if (!std::isfinite(v)) throw ValidationError("exponent state entries must be finite");
  }
  if (!(r > std::max(1.0, p - 1.0)) || !(r < q) || !(q < p)) {
    throw ValidationError("exponents must satisfy max(1, p-1) < r < q < p (got p=" + format_number(p) +
                          ", r=" + format_number(r) + ", q=" + format_number(q) + ")");
  }
  if (!(alpha > 0.0) || !(alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
}

double ExponentState::q1() const { return std::max(p - 2.0 + alpha, (p - 1.0) * alpha); }
double ExponentState::q2() const { return std::max(p - 1.0, 1.0 + (p - 2.0) * alpha); }
double ExponentState::q3() const { return std::max(q2(), p - (1.0 + eps) * alpha + eps); }

FeasibilityReport q3_feasibility(const ExponentState& st) {
  st.validate();
  FeasibilityReport f;
  f.q1 = st.q1();
  f.q2 = st.q2();
  f.q3 = st.q3();
  const double a = st.alpha, e = st.eps, s = st.s, p = st.p;
  f.lhs = {(1.0 + e) + (s - 1.0 - e) / a, (p - 1.0 + e) + (1.0 + s - p - e) / a, s / a};
  for (std::size_t i = 0; i < 3; ++i) {
    f.slack[i] = st.q - f.lhs[i];
    f.holds[i] = f.slack[i] >= -kSlackTol;
  }
  f.combined_lhs = (1.0 + e) + (f.q3 + s - p - e) / a;
  f.binding = 2;
  for (std::size_t i = 0; i < 2; ++i) {
    if (f.slack[i] < f.slack[f.binding] - kSlackTol) f.binding = i;
  }
  f.feasible = f.holds[0] && f.holds[1] && f.holds[2];
  f.gradient_term_ok = s <= st.r + 1.0 - a + kSlackTol;
  f.weight_integral = s < p ? 1.0 / (p - s) : std::numeric_limits<double>::infinity();
  return f;
}

Json FeasibilityReport::to_json() const {
  return {{"q1", q1},
          {"q2", q2},
          {"q3", q3},
          {"lhs", {lhs[0], lhs[1], lhs[2]}},
          {"slack", {slack[0], slack[1], slack[2]}},
          {"holds", {holds[0], holds[1], holds[2]}},
          {"combined_lhs", combined_lhs},
          {"binding", binding + 1},
          {"feasible", feasible},
          {"gradient_term_ok", gradient_term_ok},
          {"weight_integral", json_number(weight_integral)}};
}

std::size_t closed_form_k_star(double r0, double q, double delta) {
  const double gap = q - r0;
  if (gap <= delta) return 0;
  return static_cast<std::size_t>(std::ceil(std::log(gap / delta) / std::log((q + 1.0) / q)));
}

ExponentIteration exponent_iterate(double r0, double q, double delta, std::optional<double> p) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be > 0");
  check_order(r0, q);
  ExponentIteration it;
  it.s.push_back(r0);
  while (q - it.s.back() > delta) {
    const double r = it.s.back();
    if (p) it.checks.push_back(q3_feasibility(ExponentState::from_proof(*p, r, q)));
    it.s.push_back(improvement_step(r, q));
    if (it.s.size() > 100000) throw ValidationError("delta too small for the iteration");
  }
  it.k_star = it.s.size() - 1;
  it.k_star_closed_form = closed_form_k_star(r0, q, delta);
  return it;
}

Json ExponentIteration::to_json() const {
  Json j;
  j["s"] = s;
  j["k_star"] = k_star;
  j["k_star_closed_form"] = k_star_closed_form;
  Json c = Json::array();
  for (const auto& f : checks) c.push_back(f.to_json());
  j["checks"] = c;
  return j;
}

}  // namespace asymtrunc
