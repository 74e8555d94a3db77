#include "asymtrunc/asymlip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "asymtrunc/errors.hpp"

namespace asymtrunc {

AsymMetricParams::AsymMetricParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
  validate();
}

void AsymMetricParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0 and finite");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be > 0 and finite");
}

double d_scalar(double t, const AsymMetricParams& m) { return t >= 0.0 ? m.lambda * t : -m.mu * t; }

double d_vec(std::span<const double> x, std::span<const double> y, const AsymMetricParams& m) {
  if (x.size() != y.size()) {
    throw ValidationError("d_vec: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += d_scalar(x[i] - y[i], m);
  return s;
}

double d_cells(const GridSpec& g, std::size_t x, std::size_t y, const AsymMetricParams& m) {
  const auto ix = g.unravel(x);
  const auto iy = g.unravel(y);
  double s = 0.0;
  for (std::size_t a = 0; a < g.dims(); ++a) {
    const double delta = static_cast<double>(ix[a]) - static_cast<double>(iy[a]);
    s += d_scalar(g.spacings[a] * delta, m);
  }
  return s;
}

SampleSet::SampleSet(Mask m, ScalarField v) : mask(std::move(m)), values(std::move(v)) {
  require_compatible(mask.grid, values.grid, "sample set");
  if (mask.count() == 0) throw ValidationError("sample set is empty");
}

std::vector<std::size_t> SampleSet::indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) idx.push_back(i);
  }
  return idx;
}

namespace {

struct Lines {
  std::size_t outer, n, inner;
};

Lines lines_of(const GridSpec& g, std::size_t axis) {
  const std::size_t n = g.sizes[axis];
  const std::size_t inner = g.stride(axis);
  return {g.cell_count() / (n * inner), n, inner};
}

// Largest v near x + step whose floating-point slope (v - x) / h stays
// within bound; never below x.
inline double raise(double x, double step, double h, double bound) {
  double v = x + step;
  while ((v - x) / h > bound) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
  return v;
}

double sentinel(const SampleSet& s, const AsymMetricParams& m) {
  double top = 0.0;
  for (std::size_t i = 0; i < s.mask.size(); ++i) {
    if (s.mask[i]) top = std::max(top, std::fabs(s.values[i]));
  }
  double diam = 0.0;
  const GridSpec& g = s.mask.grid;
  for (std::size_t a = 0; a < g.dims(); ++a) {
    diam += std::max(m.lambda, m.mu) * g.spacings[a] * static_cast<double>(g.sizes[a] - 1);
  }
  return top + diam + 1.0;
}

bool extension_pass(std::vector<double>& f, const std::uint8_t* pin, const Lines& L, double h,
                    double bound, bool forward) {
  const double step = bound * h;
  bool changed = false;
  for (std::size_t o = 0; o < L.outer; ++o) {
    double* line = f.data() + o * L.n * L.inner;
    const std::uint8_t* pl = pin ? pin + o * L.n * L.inner : nullptr;
    for (std::size_t j = 1; j < L.n; ++j) {
      const std::size_t i = forward ? j : L.n - 1 - j;
      const std::size_t prev = forward ? i - 1 : i + 1;
      double* cur = line + i * L.inner;
      const double* src = line + prev * L.inner;
      const std::uint8_t* pc = pl ? pl + i * L.inner : nullptr;
      for (std::size_t t = 0; t < L.inner; ++t) {
        if (pc && pc[t]) continue;
        const double cand = raise(src[t], step, h, bound);
        if (cand < cur[t]) {
          cur[t] = cand;
          changed = true;
        }
      }
    }
  }
  return changed;
}

void witness_pass(std::vector<double>& f, std::vector<std::size_t>& source, const Lines& L,
                  double step, bool forward) {
  for (std::size_t o = 0; o < L.outer; ++o) {
    const std::size_t base = o * L.n * L.inner;
    for (std::size_t j = 1; j < L.n; ++j) {
      const std::size_t i = forward ? j : L.n - 1 - j;
      const std::size_t prev = forward ? i - 1 : i + 1;
      for (std::size_t t = 0; t < L.inner; ++t) {
        const std::size_t c = base + i * L.inner + t;
        const std::size_t p = base + prev * L.inner + t;
        const double cand = f[p] + step;
        if (cand < f[c]) {
          f[c] = cand;
          source[c] = source[p];
        }
      }
    }
  }
}

// Lower envelope with slopes (up, down) and the sample that attains it.
void witness_envelope(const SampleSet& s, double up, double down, std::vector<double>& f,
                      std::vector<std::size_t>& source) {
  const GridSpec& g = s.mask.grid;
  double top = 0.0;
  for (std::size_t i = 0; i < s.mask.size(); ++i) {
    if (s.mask[i]) top = std::max(top, std::fabs(s.values[i]));
  }
  for (std::size_t a = 0; a < g.dims(); ++a) {
    top += std::max(up, down) * g.spacings[a] * static_cast<double>(g.sizes[a] - 1);
  }
  top += 1.0;
  f.assign(g.cell_count(), top);
  source.assign(g.cell_count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (s.mask[i]) {
      f[i] = s.values[i];
      source[i] = i;
    }
  }
  for (std::size_t a = 0; a < g.dims(); ++a) {
    const Lines L = lines_of(g, a);
    witness_pass(f, source, L, up * g.spacings[a], true);
    witness_pass(f, source, L, down * g.spacings[a], false);
  }
}

ExtensionResult negate_result(ExtensionResult r) {
  for (auto& v : r.field.values) v = -v;
  return r;
}

SampleSet negated(const SampleSet& s) {
  SampleSet out = s;
  for (auto& v : out.values.values) v = -v;
  return out;
}

}  // namespace

double asym_lip_modulus(const SampleSet& s, const AsymMetricParams& m) {
  m.validate();
  const auto idx = s.indices();
  const GridSpec& g = s.mask.grid;
  double c = 0.0;
  for (std::size_t x : idx) {
    for (std::size_t y : idx) {
      if (x == y) continue;
      c = std::max(c, (s.values[x] - s.values[y]) / d_cells(g, x, y, m));
    }
  }
  return c;
}

double asym_lip_modulus_fast(const SampleSet& s, const AsymMetricParams& m) {
  m.validate();
  const auto idx = s.indices();
  if (idx.size() < 2) return 0.0;
  const GridSpec& g = s.mask.grid;
  std::vector<double> f(g.cell_count());
  std::vector<std::size_t> source;
  double c = 0.0;
  // Each round raises c to the worst ratio among violated witness pairs;
  // c strictly increases over a finite set of pair ratios.
  for (int round = 0; round < 1000; ++round) {
    witness_envelope(s, c * m.lambda, c * m.mu, f, source);
    double next = c;
    for (std::size_t x : idx) {
      if (f[x] < s.values[x]) {
        const std::size_t y = source[x];
        next = std::max(next, (s.values[x] - s.values[y]) / d_cells(g, x, y, m));
      }
    }
    if (!(next > c)) return c;
    c = next;
  }
  throw std::logic_error("asym_lip_modulus_fast did not converge");
}

ScalarField sweep_extension(const SampleSet& s, const AsymMetricParams& m, bool pin_samples) {
  m.validate();
  const GridSpec& g = s.mask.grid;
  ScalarField out(g, sentinel(s, m));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (s.mask[i]) out[i] = s.values[i];
  }
  const std::uint8_t* pin = pin_samples ? s.mask.cells.data() : nullptr;
  // The first round is the exact two-sweep envelope; later rounds only repair
  // floating-point slack introduced by the other axes.
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (std::size_t a = 0; a < g.dims(); ++a) {
      const Lines L = lines_of(g, a);
      const double h = g.spacings[a];
      changed |= extension_pass(out.values, pin, L, h, m.lambda, true);
      changed |= extension_pass(out.values, pin, L, h, m.mu, false);
    }
    if (!changed) return out;
  }
  throw std::logic_error("sweep_extension did not reach a fixed point");
}

ExtensionResult mcshane_extend(const SampleSet& s, const AsymMetricParams& m, Envelope env) {
  m.validate();
  const GridSpec& g = s.mask.grid;
  const std::size_t d = g.dims();
  const auto idx = s.indices();
  ExtensionResult r;
  r.modulus = asym_lip_modulus(s, m);
  r.agrees = r.modulus <= 1.0;
  r.field = ScalarField(g);

  // cost[a][delta + n_a - 1] = d_scalar(h_a * delta)
  std::vector<std::vector<double>> cost(d);
  for (std::size_t a = 0; a < d; ++a) {
    const long n = static_cast<long>(g.sizes[a]);
    cost[a].resize(2 * n - 1);
    for (long delta = -(n - 1); delta <= n - 1; ++delta) {
      cost[a][delta + n - 1] = d_scalar(g.spacings[a] * static_cast<double>(delta), m);
    }
  }
  std::vector<std::array<std::size_t, kMaxDims>> coords;
  coords.reserve(idx.size());
  for (std::size_t y : idx) coords.push_back(g.unravel(y));

  const bool lower = env == Envelope::lower;
  for (std::size_t x = 0; x < g.cell_count(); ++x) {
    const auto cx = g.unravel(x);
    double best = lower ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      double dist = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        const std::size_t n = g.sizes[a];
        // lower uses d(x, y), upper uses d(y, x)
        const std::size_t off = lower ? cx[a] + n - 1 - coords[j][a] : coords[j][a] + n - 1 - cx[a];
        dist += cost[a][off];
      }
      const double val = s.values[idx[j]];
      best = lower ? std::min(best, val + dist) : std::max(best, val - dist);
    }
    r.field[x] = best;
  }
  if (r.agrees) {
    for (std::size_t y : idx) r.field[y] = s.values[y];
  }
  return r;
}

ExtensionResult mcshane_extend_fast(const SampleSet& s, const AsymMetricParams& m, Envelope env) {
  m.validate();
  if (env == Envelope::upper) {
    return negate_result(mcshane_extend_fast(negated(s), m.swapped(), Envelope::lower));
  }
  ExtensionResult r;
  r.modulus = asym_lip_modulus_fast(s, m);
  r.agrees = r.modulus <= 1.0;
  r.field = sweep_extension(s, m, r.agrees);
  return r;
}

SlopeSummary interior_slopes(const ScalarField& f) {
  const GridSpec& g = f.grid;
  SlopeSummary out;
  out.sup_positive.assign(g.dims(), 0.0);
  out.sup_negative.assign(g.dims(), 0.0);
  for (std::size_t a = 0; a < g.dims(); ++a) {
    const Lines L = lines_of(g, a);
    const double h = g.spacings[a];
    for (std::size_t o = 0; o < L.outer; ++o) {
      const double* line = f.values.data() + o * L.n * L.inner;
      for (std::size_t i = 0; i + 1 < L.n; ++i) {
        for (std::size_t t = 0; t < L.inner; ++t) {
          const double diff = (line[(i + 1) * L.inner + t] - line[i * L.inner + t]) / h;
          out.sup_positive[a] = std::max(out.sup_positive[a], diff);
          out.sup_negative[a] = std::max(out.sup_negative[a], -diff);
        }
      }
    }
  }
  return out;
}

bool slopes_within(const ScalarField& f, double up, double down) {
  const SlopeSummary s = interior_slopes(f);
  for (std::size_t a = 0; a < s.sup_positive.size(); ++a) {
    if (s.sup_positive[a] > up || s.sup_negative[a] > down) return false;
  }
  return true;
}

}  // namespace asymtrunc
