#include "asymtrunc/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/field.hpp"

namespace asymtrunc {

namespace {

// Cells of one axis viewed as outer x n x inner.
struct Lines {
  std::size_t outer, n, inner;
};

Lines lines_of(const GridSpec& g, std::size_t axis) {
  const std::size_t n = g.sizes[axis];
  const std::size_t inner = g.stride(axis);
  return {g.cell_count() / (n * inner), n, inner};
}

// P has shape outer x (n + 1) x inner with P[.,0,.] = 0.
void prefix_along(const double* src, double* P, const Lines& L) {
  for (std::size_t o = 0; o < L.outer; ++o) {
    double* po = P + o * (L.n + 1) * L.inner;
    const double* so = src + o * L.n * L.inner;
    std::fill(po, po + L.inner, 0.0);
    for (std::size_t i = 0; i < L.n; ++i) {
      const double* prev = po + i * L.inner;
      double* next = po + (i + 1) * L.inner;
      const double* s = so + i * L.inner;
      for (std::size_t t = 0; t < L.inner; ++t) next[t] = prev[t] + s[t];
    }
  }
}

// Zero-extended window sums of half-width k from a prefix array.
void window_from_prefix(const double* P, double* dst, const Lines& L, std::size_t k) {
  for (std::size_t o = 0; o < L.outer; ++o) {
    const double* po = P + o * (L.n + 1) * L.inner;
    double* d = dst + o * L.n * L.inner;
    for (std::size_t i = 0; i < L.n; ++i) {
      const std::size_t lo = i >= k ? i - k : 0;
      const std::size_t hi = std::min(L.n, i + k + 1);
      const double* ph = po + hi * L.inner;
      const double* pl = po + lo * L.inner;
      double* di = d + i * L.inner;
      for (std::size_t t = 0; t < L.inner; ++t) di[t] = ph[t] - pl[t];
    }
  }
}

// Calls f(i, window(P, k)[i]) along one contiguous line. The window
// [i - k, i + k] is clipped to [0, n); each clipping pattern gets its own
// branch-free loop.
template <class F>
void scan_windows(const double* P, std::size_t n, std::size_t k, F&& f) {
  const std::size_t a = std::min(k, n);     // i < a: clipped below
  const std::size_t b = n > k ? n - k : 0;  // i >= b: clipped above
  if (a <= b) {
    for (std::size_t i = 0; i < a; ++i) f(i, P[i + k + 1] - P[0]);
    for (std::size_t i = a; i < b; ++i) f(i, P[i + k + 1] - P[i - k]);
    for (std::size_t i = b; i < n; ++i) f(i, P[n] - P[i - k]);
  } else {
    const double whole = P[n] - P[0];
    for (std::size_t i = 0; i < b; ++i) f(i, P[i + k + 1] - P[0]);
    for (std::size_t i = b; i < a; ++i) f(i, whole);
    for (std::size_t i = a; i < n; ++i) f(i, P[n] - P[i - k]);
  }
}

std::vector<double> abs_values(const ScalarField& v) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::fabs(v[i]);
  return a;
}

double width(std::size_t k) { return static_cast<double>(2 * k + 1); }

// out[i] = max over per-axis half-width combinations of box sum / box volume.
// The last axis is handled one line at a time from a prefix sum; the axis
// before it feeds window rows straight into that pass. Lines are independent,
// so they are split across threads without changing the result.
class BoxMax {
 public:
  BoxMax(const GridSpec& g, const RadiusSet& r, double* out) : g_(g), radii_(r), out_(out), d_(g.dims()) {
    prefix_.resize(d_);
    window_.resize(d_);
    for (std::size_t a = 0; a + 1 < d_; ++a) {
      const Lines L = lines_of(g, a);
      prefix_[a].resize(L.outer * (L.n + 1) * L.inner);
      if (a + 2 < d_) window_[a].resize(g.cell_count());
    }
  }

  void run(const double* cur, std::size_t axis, double volume) {
    const std::size_t n = g_.sizes[d_ - 1];
    if (axis + 1 == d_) {
      const auto lines = static_cast<std::ptrdiff_t>(g_.cell_count() / n);
#pragma omp parallel
      {
        std::vector<double> P(n + 1);
#pragma omp for schedule(static)
        for (std::ptrdiff_t l = 0; l < lines; ++l) line(cur + l * n, P.data(), volume, l * n);
      }
      return;
    }
    const Lines L = lines_of(g_, axis);
    prefix_along(cur, prefix_[axis].data(), L);
    for (std::size_t k : radii_.axis(axis)) {
      if (k == 0) {
        run(cur, axis + 1, volume);
      } else if (axis + 2 == d_) {
        rows(prefix_[axis].data(), L, k, volume * width(k));
      } else {
        window_from_prefix(prefix_[axis].data(), window_[axis].data(), L, k);
        run(window_[axis].data(), axis + 1, volume * width(k));
      }
    }
  }

 private:
  void line(const double* src, double* P, double volume, std::size_t offset) {
    const std::size_t n = g_.sizes[d_ - 1];
    double* out = out_ + offset;
    P[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) P[i + 1] = P[i] + src[i];
    for (std::size_t k : radii_.axis(d_ - 1)) {
      if (k == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], src[i] / volume);
      } else {
        const double denom = volume * width(k);
        scan_windows(P, n, k, [&](std::size_t i, double s) { out[i] = std::max(out[i], s / denom); });
      }
    }
  }

  void rows(const double* P, const Lines& L, std::size_t k, double volume) {
    const auto count = static_cast<std::ptrdiff_t>(L.outer * L.n);
#pragma omp parallel
    {
      std::vector<double> row(L.inner), line_prefix(L.inner + 1);
#pragma omp for schedule(static)
      for (std::ptrdiff_t r = 0; r < count; ++r) {
        const std::size_t o = static_cast<std::size_t>(r) / L.n;
        const std::size_t i = static_cast<std::size_t>(r) % L.n;
        const double* po = P + o * (L.n + 1) * L.inner;
        const double* ph = po + std::min(L.n, i + k + 1) * L.inner;
        const double* pl = po + (i >= k ? i - k : 0) * L.inner;
        for (std::size_t t = 0; t < L.inner; ++t) row[t] = ph[t] - pl[t];
        line(row.data(), line_prefix.data(), volume, static_cast<std::size_t>(r) * L.inner);
      }
    }
  }

  const GridSpec& g_;
  const RadiusSet& radii_;
  double* out_;
  std::size_t d_;
  std::vector<std::vector<double>> prefix_;
  std::vector<std::vector<double>> window_;
};

std::vector<std::size_t> normalized(std::vector<std::size_t> ks, const char* what) {
  if (ks.empty() || ks.front() != 0) ks.insert(ks.begin(), 0);
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] <= ks[i - 1]) {
      throw ValidationError(std::string(what) + ": half-widths must be strictly increasing");
    }
  }
  return ks;
}

}  // namespace

RadiusSet RadiusSet::full(const GridSpec& g) {
  g.validate();
  RadiusSet r;
  r.mode_ = RadiusMode::full;
  for (std::size_t n : g.sizes) {
    std::vector<std::size_t> ks(n);
    for (std::size_t k = 0; k < n; ++k) ks[k] = k;
    r.axes_.push_back(std::move(ks));
  }
  return r;
}

RadiusSet RadiusSet::dyadic(const GridSpec& g) {
  g.validate();
  RadiusSet r;
  r.mode_ = RadiusMode::dyadic;
  for (std::size_t n : g.sizes) {
    std::vector<std::size_t> ks{0};
    for (std::size_t p = 1; p < n - 1; p *= 2) ks.push_back(p);
    ks.push_back(n - 1);
    r.axes_.push_back(std::move(ks));
  }
  return r;
}

RadiusSet RadiusSet::automatic(const GridSpec& g) {
  return g.dims() >= 2 ? dyadic(g) : full(g);
}

RadiusSet RadiusSet::custom(std::vector<std::vector<std::size_t>> per_axis) {
  if (per_axis.empty() || per_axis.size() > kMaxDims) {
    throw ValidationError("radius set needs one half-width list per axis");
  }
  RadiusSet r;
  r.mode_ = RadiusMode::custom;
  for (auto& ks : per_axis) r.axes_.push_back(normalized(std::move(ks), "radius set"));
  return r;
}

std::vector<std::size_t> RadiusSet::cube_radii() const {
  std::vector<std::size_t> all;
  for (const auto& ks : axes_) all.insert(all.end(), ks.begin(), ks.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::uint64_t RadiusSet::combinations() const {
  std::uint64_t c = 1;
  for (const auto& ks : axes_) c *= ks.size();
  return c;
}

void RadiusSet::check(const GridSpec& g) const {
  if (axes_.empty()) throw ValidationError("empty radius set");
  if (axes_.size() != g.dims()) {
    throw ValidationError("radius set has " + std::to_string(axes_.size()) + " axes, grid has " +
                          std::to_string(g.dims()));
  }
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].empty()) throw ValidationError("empty radius set");
    if (axes_[a].back() > g.sizes[a] - 1) {
      throw ValidationError("half-width " + std::to_string(axes_[a].back()) +
                            " exceeds the grid extent on axis " + std::to_string(a));
    }
  }
}

ScalarField directional_maximal(const ScalarField& v, std::size_t axis, const RadiusSet& radii) {
  const GridSpec& g = v.grid;
  if (axis >= g.dims()) {
    throw ValidationError("axis " + std::to_string(axis) + " out of range for a " +
                          std::to_string(g.dims()) + "-d grid");
  }
  radii.check(g);
  const Lines L = lines_of(g, axis);
  const std::vector<double> a = abs_values(v);
  std::vector<double> P(L.outer * (L.n + 1) * L.inner);
  std::vector<double> w(g.cell_count());
  prefix_along(a.data(), P.data(), L);
  ScalarField out(g);
  out.values = a;
  for (std::size_t k : radii.axis(axis)) {
    if (k == 0) continue;
    window_from_prefix(P.data(), w.data(), L, k);
    const double wk = width(k);
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::max(out[i], w[i] / wk);
  }
  return out;
}

ScalarField composed_maximal(const ScalarField& v, const RadiusSet& radii) {
  radii.check(v.grid);
  ScalarField w = v;
  for (std::size_t a = 0; a < v.grid.dims(); ++a) w = directional_maximal(w, a, radii);
  return w;
}

ScalarField hl_maximal(const ScalarField& v, const RadiusSet& radii) {
  const GridSpec& g = v.grid;
  radii.check(g);
  const std::size_t d = g.dims();
  const std::vector<double> a = abs_values(v);
  ScalarField out(g);
  out.values = a;
  std::vector<double> cur(g.cell_count()), next(g.cell_count()), P;
  for (std::size_t k : radii.cube_radii()) {
    if (k == 0) continue;
    cur = a;
    for (std::size_t axis = 0; axis < d; ++axis) {
      const Lines L = lines_of(g, axis);
      P.resize(L.outer * (L.n + 1) * L.inner);
      prefix_along(cur.data(), P.data(), L);
      window_from_prefix(P.data(), next.data(), L, k);
      std::swap(cur, next);
    }
    const double vol = std::pow(width(k), static_cast<double>(d));
    for (std::size_t i = 0; i < cur.size(); ++i) out[i] = std::max(out[i], cur[i] / vol);
  }
  return out;
}

namespace {

void check_box_work(const GridSpec& g, const RadiusSet& radii, const AnisoOptions& opts) {
  radii.check(g);
  const std::uint64_t work = radii.combinations() * static_cast<std::uint64_t>(g.cell_count());
  if (work > opts.max_box_evaluations) {
    throw ValidationError("box maximal needs " + std::to_string(work) +
                          " box evaluations, above the cap of " +
                          std::to_string(opts.max_box_evaluations) + "; use dyadic radii");
  }
}

}  // namespace

ScalarField aniso_maximal(const ScalarField& v, const RadiusSet& radii, const AnisoOptions& opts) {
  const GridSpec& g = v.grid;
  check_box_work(g, radii, opts);
  const std::vector<double> a = abs_values(v);
  ScalarField out(g);
  BoxMax(g, radii, out.values.data()).run(a.data(), 0, 1.0);
  return out;
}

SweepReport weak_type_constants(const ScalarField& v, MaximalOp op, std::span<const double> lambdas,
                                double eps, const RadiusSet& radii) {
  if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
  for (double lam : lambdas) {
    if (!(lam > 0.0) || !std::isfinite(lam)) throw ValidationError("lambdas must be positive and finite");
  }
  const ScalarField m = op == MaximalOp::hardy_littlewood ? hl_maximal(v, radii) : aniso_maximal(v, radii);
  const ScalarField a = abs_field(v);
  const double vol = v.grid.cell_volume();

  SweepReport rep;
  rep.kind = op == MaximalOp::hardy_littlewood ? "weak_type_M" : "weak_type_N";
  rep.params = {{"op", op == MaximalOp::hardy_littlewood ? "M" : "N"}, {"eps", eps}};
  auto& w11_lhs = rep.extra["weak11_lhs"];
  auto& w11_rhs = rep.extra["weak11_rhs"];
  auto& w11_ratio = rep.extra["weak11_ratio"];
  auto& cut_lhs = rep.extra["cut_lhs"];
  auto& cut_rhs = rep.extra["cut_rhs"];
  auto& cut_ratio = rep.extra["cut_ratio"];
  auto& eps_lhs = rep.extra["eps_lhs"];
  auto& eps_rhs = rep.extra["eps_rhs"];
  auto& eps_ratio = rep.extra["eps_ratio"];
  auto& disp_rhs = rep.extra["displayed_rhs"];
  auto& disp_ratio = rep.extra["displayed_ratio"];

  const double total = integrate(a);
  for (double lam : lambdas) {
    std::size_t ge = 0, gt = 0;
    for (double x : m.values) {
      ge += x >= lam;
      gt += x > lam;
    }
    double cut = 0.0, cut_closed = 0.0, cut_pow = 0.0;
    for (double x : a.values) {
      if (x > lam / 2) cut += x;
      if (x >= lam / 2) {
        cut_closed += x;
        cut_pow += std::pow(x, 1.0 + eps);
      }
    }
    const double lam_pow = std::pow(lam, 1.0 + eps);
    const double m_ge = static_cast<double>(ge) * vol;
    const double m_gt = static_cast<double>(gt) * vol;

    w11_lhs.push_back(m_ge);
    w11_rhs.push_back(total / lam);
    w11_ratio.push_back(safe_ratio(m_ge, total / lam));
    cut_lhs.push_back(m_gt);
    cut_rhs.push_back(cut * vol / lam);
    cut_ratio.push_back(safe_ratio(m_gt, cut * vol / lam));
    eps_lhs.push_back(m_ge);
    eps_rhs.push_back(cut_pow * vol / lam_pow);
    eps_ratio.push_back(safe_ratio(m_ge, cut_pow * vol / lam_pow));
    disp_rhs.push_back(cut_closed * vol / lam_pow);
    disp_ratio.push_back(safe_ratio(m_ge, cut_closed * vol / lam_pow));

    if (op == MaximalOp::hardy_littlewood) {
      rep.push(lam, cut_lhs.back(), cut_rhs.back());
    } else {
      rep.push(lam, eps_lhs.back(), eps_rhs.back());
    }
  }
  if (op == MaximalOp::anisotropic) {
    rep.notes.push_back(
        "displayed_* columns use the |u| integrand printed in the statement; the primary rhs uses "
        "|u|^(1+eps) as derived in the proof");
  }
  return rep;
}

double lp_norm_ratio(const ScalarField& v, double p, const RadiusSet& radii) {
  if (!(p > 1.0)) throw ValidationError("lp_norm_ratio needs p > 1");
  const double base = lp_norm(v, p);
  if (base == 0.0) return 0.0;
  return lp_norm(aniso_maximal(v, radii), p) / base;
}

}  // namespace asymtrunc
