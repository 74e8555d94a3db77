#include "asymtrunc/truncate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/field.hpp"

namespace asymtrunc {

void TruncationParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0 and finite");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be > 0 and finite");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be > 0 and finite");
  if (inflation && (!(*inflation >= 1.0) || !std::isfinite(*inflation))) {
    throw ValidationError("inflation must be >= 1");
  }
}

ConvexPolytope ConvexPolytope::box(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size() || lo.empty()) throw ValidationError("box corners must have equal dimension");
  ConvexPolytope p;
  for (std::size_t a = 0; a < lo.size(); ++a) {
    std::vector<double> n(lo.size(), 0.0);
    n[a] = 1.0;
    p.halfspaces.push_back({n, hi[a]});
    n[a] = -1.0;
    p.halfspaces.push_back({n, -lo[a]});
  }
  return p;
}

ConvexPolytope ConvexPolytope::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("halfspaces") || !j["halfspaces"].is_array()) {
    throw FormatError("polytope JSON needs a 'halfspaces' array");
  }
  ConvexPolytope p;
  for (const auto& h : j["halfspaces"]) {
    if (!h.is_object() || !h.contains("normal") || !h.contains("offset") || !h["normal"].is_array() ||
        !h["offset"].is_number()) {
      throw FormatError("each half-space needs 'normal' (array) and 'offset' (number)");
    }
    HalfSpace hs;
    for (const auto& x : h["normal"]) {
      if (!x.is_number()) throw FormatError("half-space normal entries must be numbers");
      hs.normal.push_back(x.get<double>());
    }
    hs.offset = h["offset"].get<double>();
    p.halfspaces.push_back(std::move(hs));
  }
  if (p.halfspaces.empty()) throw FormatError("polytope has no half-spaces");
  return p;
}

Json ConvexPolytope::to_json() const {
  Json hs = Json::array();
  for (const auto& h : halfspaces) hs.push_back({{"normal", h.normal}, {"offset", h.offset}});
  return {{"halfspaces", hs}};
}

bool ConvexPolytope::contains(std::span<const double> x) const {
  for (const auto& h : halfspaces) {
    if (h.normal.size() != x.size()) throw ValidationError("half-space dimension does not match point");
    double dot = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) dot += h.normal[a] * x[a];
    if (dot > h.offset) return false;
  }
  return true;
}

Mask ConvexPolytope::inside_cells(const GridSpec& g) const {
  for (const auto& h : halfspaces) {
    if (h.normal.size() != g.dims()) {
      throw ValidationError("polytope dimension " + std::to_string(h.normal.size()) +
                            " does not match grid dimension " + std::to_string(g.dims()));
    }
    if (std::all_of(h.normal.begin(), h.normal.end(), [](double v) { return v == 0.0; })) {
      throw ValidationError("half-space normal must be nonzero");
    }
  }
  Mask m(g);
  std::vector<double> x(g.dims());
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto idx = g.unravel(i);
    for (std::size_t a = 0; a < g.dims(); ++a) x[a] = g.center(a, idx[a]);
    m.set(i, contains(x));
  }
  return m;
}

Json TruncationResult::to_json() const {
  Json j;
  j["lambda"] = lambda;
  j["mu"] = mu;
  j["inflation"] = inflation;
  j["modulus"] = modulus;
  j["agrees"] = agrees;
  j["slope_up"] = slope_up;
  j["slope_down"] = slope_down;
  j["kept_measure"] = kept.measure();
  j["bad_measure"] = bad_measure;
  j["changed_measure"] = changed_measure;
  j["t1"] = json_number(t1);
  j["t2"] = json_number(t2);
  j["sup_positive"] = slopes.sup_positive;
  j["sup_negative"] = slopes.sup_negative;
  if (t4) {
    j["t4"] = {{"lhs", t4->lhs}, {"rhs", t4->rhs}, {"constant", json_number(t4->constant)}};
  }
  return j;
}

BadSetLevels bad_set_levels(const ScalarField& u, const RadiusSet& radii) {
  const VectorField g = gradient(u);
  BadSetLevels lv{ScalarField(u.grid), ScalarField(u.grid)};
  for (std::size_t a = 0; a < g.size(); ++a) {
    const ScalarField np = aniso_maximal(positive_part(g[a]), radii);
    const ScalarField nn = aniso_maximal(negative_part(g[a]), radii);
    for (std::size_t i = 0; i < u.size(); ++i) {
      lv.positive[i] = std::max(lv.positive[i], np[i]);
      lv.negative[i] = std::max(lv.negative[i], nn[i]);
    }
  }
  return lv;
}

Mask good_set(const BadSetLevels& levels, double lambda, double mu) {
  Mask m(levels.positive.grid);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.set(i, levels.positive[i] <= lambda && levels.negative[i] <= mu);
  }
  return m;
}

Mask good_set(const ScalarField& u, double lambda, double mu, const RadiusSet& radii) {
  return good_set(bad_set_levels(u, radii), lambda, mu);
}

TruncationResult truncate_on_set(const ScalarField& u, const Mask& kept, double lambda, double mu,
                                 std::optional<double> inflation) {
  const AsymMetricParams base(lambda, mu);
  require_compatible(u.grid, kept.grid, "kept mask");
  if (inflation && (!(*inflation >= 1.0) || !std::isfinite(*inflation))) {
    throw ValidationError("inflation must be >= 1");
  }
  if (kept.count() == 0) {
    throw ValidationError("lambda below global minimum of maximal function: no cell is kept");
  }
  const SampleSet samples(kept, u);
  TruncationResult r;
  r.lambda = lambda;
  r.mu = mu;
  r.modulus = asym_lip_modulus_fast(samples, base);
  double c = inflation.value_or(std::max(1.0, r.modulus));
  r.agrees = r.modulus <= c;

  // A pair of adjacent kept cells can sit exactly on the slope bound and
  // round just past it; nudge c upward until the rounded bounds hold.
  bool ok = false;
  for (int attempt = 0; attempt < 60 && !ok; ++attempt) {
    const AsymMetricParams scaled = base.scaled(c);
    r.field = sweep_extension(samples, scaled, r.agrees);
    r.slope_up = scaled.lambda;
    r.slope_down = scaled.mu;
    ok = slopes_within(r.field, r.slope_up, r.slope_down);
    if (!ok) c *= 1.0 + std::ldexp(1.0, attempt - 50);
  }
  if (!ok) throw std::logic_error("extension slopes exceed the inflated bounds");
  r.inflation = c;

  const double vol = u.grid.cell_volume();
  r.kept = kept;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool same = r.field[i] == u[i];
    if (!same) ++changed;
    if (!same) r.kept.set(i, false);
  }
  r.changed_measure = static_cast<double>(changed) * vol;
  r.bad_measure = static_cast<double>(u.size() - kept.count()) * vol;
  r.slopes = interior_slopes(r.field);
  for (std::size_t a = 0; a < u.grid.dims(); ++a) {
    r.t1 = std::max(r.t1, r.slopes.sup_positive[a] / lambda);
    r.t2 = std::max(r.t2, r.slopes.sup_negative[a] / mu);
  }
  return r;
}

TruncationResult lipschitz_truncate(const ScalarField& u, double lambda, const RadiusSet& radii,
                                    std::optional<double> inflation) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0 and finite");
  const ScalarField level = hl_maximal(ell1_norm(gradient(u)), radii);
  Mask kept(u.grid);
  for (std::size_t i = 0; i < kept.size(); ++i) kept.set(i, level[i] <= lambda);
  return truncate_on_set(u, kept, lambda, lambda, inflation);
}

TruncationResult asym_truncate(const ScalarField& u, const TruncationParams& params,
                               const RadiusSet& radii) {
  params.validate();
  const Mask kept = good_set(u, params.lambda, params.mu, radii);
  TruncationResult r = truncate_on_set(u, kept, params.lambda, params.mu, params.inflation);
  r.t4 = t4_bound(u, params, r);
  return r;
}

TruncationResult asym_truncate_zero_boundary(const ScalarField& u, const ConvexPolytope& omega,
                                             const TruncationParams& params, const RadiusSet& radii) {
  params.validate();
  const Mask inside = omega.inside_cells(u.grid);
  if (inside.count() == 0) throw ValidationError("the domain contains no grid cell center");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!inside[i] && u[i] != 0.0) {
      throw ValidationError("u must vanish on cells outside the domain");
    }
  }
  Mask sources = good_set(u, params.lambda, params.mu, radii);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!inside[i]) sources.set(i, true);
  }
  TruncationResult r = truncate_on_set(u, sources, params.lambda, params.mu, params.inflation);
  if (!r.agrees) {
    throw ValidationError("inflation " + std::to_string(*params.inflation) +
                          " is below the measured modulus " + std::to_string(r.modulus) +
                          "; zero boundary values cannot be kept");
  }
  r.t4 = t4_bound(u, params, r);
  return r;
}

T4Bound t4_bound(const ScalarField& u, const TruncationParams& params, const TruncationResult& result) {
  params.validate();
  require_compatible(u.grid, result.field.grid, "t4_bound");
  const VectorField g = gradient(u);
  const ScalarField pos = ell1_positive(g);
  const ScalarField neg = ell1_negative(g);
  const double e = 1.0 + params.eps;
  double sp = 0.0, sn = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (pos[i] >= params.lambda / 2) sp += std::pow(pos[i], e);
    if (neg[i] >= params.mu / 2) sn += std::pow(neg[i], e);
  }
  const double vol = u.grid.cell_volume();
  T4Bound t;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < u.size(); ++i) changed += result.field[i] != u[i];
  t.lhs = static_cast<double>(changed) * vol;
  t.rhs = sp * vol / std::pow(params.lambda, e) + sn * vol / std::pow(params.mu, e);
  t.constant = safe_ratio(t.lhs, t.rhs);
  return t;
}

SweepReport t4_sweep(const ScalarField& u, std::span<const double> lambdas, double mu_scale, double eps,
                     const RadiusSet& radii) {
  if (!(mu_scale > 0.0) || !std::isfinite(mu_scale)) throw ValidationError("mu scale must be > 0");
  const BadSetLevels levels = bad_set_levels(u, radii);
  SweepReport rep;
  rep.kind = "t4";
  rep.params = {{"mu_scale", mu_scale}, {"eps", eps}};
  for (double lam : lambdas) {
    const TruncationParams params{lam, mu_scale * lam, eps, std::nullopt};
    params.validate();
    const TruncationResult r = truncate_on_set(u, good_set(levels, params.lambda, params.mu), params.lambda,
                                               params.mu);
    const T4Bound t = t4_bound(u, params, r);
    rep.push(lam, t.lhs, t.rhs);
    rep.extra["mu"].push_back(params.mu);
    rep.extra["bad_measure"].push_back(r.bad_measure);
    rep.extra["inflation"].push_back(r.inflation);
    rep.extra["t1"].push_back(r.t1);
    rep.extra["t2"].push_back(r.t2);
  }
  return rep;
}

}  // namespace asymtrunc
