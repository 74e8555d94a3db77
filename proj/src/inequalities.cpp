#include "asymtrunc/verify/inequalities.hpp"

#include <array>
#include <cmath>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

namespace {

bool in_region(const Mask* region, std::size_t i) { return region == nullptr || (*region)[i]; }

void check_lambdas(std::span<const double> lambdas) {
  for (double lam : lambdas) {
    if (!(lam > 0.0) || !std::isfinite(lam)) throw ValidationError("lambdas must be positive and finite");
  }
}

Json lambda_params(const QuasiconcaveFunctional& F) { return {{"functional", F.name()}, {"p", F.p}}; }

}  // namespace

SweepReport verify_consequently(const VectorField& u, const QuasiconcaveFunctional& F,
                                std::span<const double> lambdas, const RadiusSet& radii,
                                const Mask* region) {
  check_lambdas(lambdas);
  if (region) require_compatible(u.grid, region->grid, "region");
  const MatrixField J = jacobian(u);
  const ScalarField norm = frobenius_norm(J);
  const ScalarField f = F_eval(F, J);
  const ScalarField m = hl_maximal(norm, radii);
  const double vol = u.grid.cell_volume();

  SweepReport rep;
  rep.kind = "consequently";
  rep.params = lambda_params(F);
  auto& measure = rep.extra["set_measure"];
  for (double lam : lambdas) {
    double lhs = 0.0, rhs = 0.0;
    std::size_t count = 0;
    const double lam_pow = std::pow(lam, F.p - 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!(m[i] > lam) || !in_region(region, i)) continue;
      ++count;
      lhs += f[i];
      rhs += std::pow(norm[i], F.p - 1.0) + lam_pow;
    }
    rep.push(lam, lhs * vol, lam * rhs * vol);
    measure.push_back(static_cast<double>(count) * vol);
  }
  return rep;
}

SweepReport verify_intermediary(const VectorField& u, const QuasiconcaveFunctional& F,
                                std::span<const double> lambdas, const Mask* region,
                                double set_constant) {
  check_lambdas(lambdas);
  if (!(set_constant > 0.0)) throw ValidationError("set constant must be > 0");
  if (region) require_compatible(u.grid, region->grid, "region");
  const MatrixField J = jacobian(u);
  const ScalarField norm = frobenius_norm(J);
  const auto [fp, fn] = F_split(F, J);
  const double vol = u.grid.cell_volume();

  SweepReport rep;
  rep.kind = "intermediary";
  rep.params = lambda_params(F);
  rep.params["set_constant"] = set_constant;
  auto& grad_term = rep.extra["gradient_term"];
  auto& neg_term = rep.extra["negative_term"];
  for (double lam : lambdas) {
    const double level = set_constant * std::pow(lam, F.p);
    double lhs = 0.0, grad = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      if (!in_region(region, i)) continue;
      if (fp[i] <= level) lhs += fp[i];
      if (norm[i] >= lam / 2) grad += norm[i];
      if (fn[i] <= level) neg += fn[i];
    }
    const double g = set_constant * std::pow(lam, F.p - 1.0) * grad * vol;
    rep.push(lam, lhs * vol, g + neg * vol);
    grad_term.push_back(g);
    neg_term.push_back(neg * vol);
  }
  return rep;
}

Json OrliczConclusion::to_json() const {
  return {{"hypothesis_gradient", json_number(hypothesis_gradient)},
          {"hypothesis_negative", json_number(hypothesis_negative)},
          {"conclusion", json_number(conclusion)},
          {"conclusion_coarse", json_number(conclusion_coarse)},
          {"relative_change", json_number(relative_change)},
          {"tolerance", tolerance},
          {"converged", converged}};
}

ScalarField subsample(const ScalarField& u) {
  const GridSpec& g = u.grid;
  std::vector<std::size_t> sizes;
  std::vector<double> spacings, origin;
  for (std::size_t a = 0; a < g.dims(); ++a) {
    if (g.sizes[a] < 4) throw ValidationError("subsampling needs at least 4 cells per axis");
    sizes.push_back(g.sizes[a] / 2);
    spacings.push_back(2.0 * g.spacings[a]);
    origin.push_back(g.origin[a] - 0.5 * g.spacings[a]);
  }
  ScalarField out(GridSpec(sizes, spacings, origin));
  std::array<std::size_t, kMaxDims> fine{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = out.grid.unravel(i);
    for (std::size_t a = 0; a < g.dims(); ++a) fine[a] = 2 * idx[a];
    out[i] = u[g.ravel(std::span<const std::size_t>(fine.data(), g.dims()))];
  }
  return out;
}

Mask subsample(const Mask& m) {
  ScalarField as_field(m.grid);
  for (std::size_t i = 0; i < m.size(); ++i) as_field[i] = m[i] ? 1.0 : 0.0;
  const ScalarField coarse = subsample(as_field);
  Mask out(coarse.grid);
  for (std::size_t i = 0; i < coarse.size(); ++i) out.set(i, coarse[i] != 0.0);
  return out;
}

OrliczConclusion orlicz_conclusion_check(const VectorField& u, const QuasiconcaveFunctional& F,
                                         const OrliczWeight& w, const Mask* region, double tolerance) {
  w.validate();
  if (region) require_compatible(u.grid, region->grid, "region");
  OrliczConclusion out;
  out.tolerance = tolerance;
  {
    const MatrixField J = jacobian(u);
    const auto [fp, fn] = F_split(F, J);
    out.hypothesis_gradient = orlicz_integral(frobenius_norm(J), w, region);
    out.hypothesis_negative = log_integral(fn, w.alpha, region);
    out.conclusion = log_integral(fp, w.alpha, region);
  }
  std::vector<ScalarField> coarse_components;
  for (const auto& c : u.components) coarse_components.push_back(subsample(c));
  const VectorField coarse(std::move(coarse_components));
  Mask coarse_region;
  if (region) {
    coarse_region = subsample(*region);
    const GridSpec& cg = coarse_region.grid;
    for (std::size_t i = 0; i < cg.cell_count(); ++i) {
      const auto idx = cg.unravel(i);
      for (std::size_t a = 0; a < cg.dims(); ++a) {
        if (idx[a] + 1 == cg.sizes[a]) coarse_region.set(i, false);
      }
    }
  }
  const auto [cp, cn] = F_split(F, jacobian(coarse));
  out.conclusion_coarse = log_integral(cp, w.alpha, region ? &coarse_region : nullptr);
  const double diff = std::fabs(out.conclusion - out.conclusion_coarse);
  out.relative_change = out.conclusion != 0.0 ? diff / std::fabs(out.conclusion) : diff;
  out.converged = std::isfinite(out.conclusion) && out.relative_change <= tolerance;
  return out;
}

double power_weight(double lambda, double s, double p) { return std::pow(lambda, s - p - 1.0); }

double log_weight(double lambda, double alpha) {
  return std::pow(std::log1p(lambda), alpha) / (1.0 + lambda);
}

}  // namespace asymtrunc
