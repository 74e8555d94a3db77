#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/field.hpp"
#include "asymtrunc/field_io.hpp"
#include "asymtrunc/truncate.hpp"
#include "asymtrunc/verify/exponents.hpp"
#include "asymtrunc/verify/functionals.hpp"
#include "asymtrunc/verify/generators.hpp"
#include "asymtrunc/verify/inequalities.hpp"

namespace fs = std::filesystem;

namespace asymtrunc::cli {

namespace {

ScalarField mask_as_field(const Mask& m) {
  ScalarField f(m.grid);
  for (std::size_t i = 0; i < m.size(); ++i) f[i] = m[i] ? 1.0 : 0.0;
  return f;
}

Mask field_as_mask(const ScalarField& f) {
  Mask m(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) m.set(i, f[i] != 0.0);
  return m;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

std::string extension(const std::string& format) {
  if (format == "binary") return ".trnc";
  if (format == "csv") return ".csv";
  throw ValidationError("unknown format '" + format + "' (expected binary or csv)");
}

Mask inside_region(const Loaded& in, bool use_region) {
  if (use_region && in.region) return *in.region;
  return Mask(in.field.grid, true);
}

}  // namespace

Loaded load_input(const std::string& stem) {
  if (stem.empty()) throw ValidationError("--in is required");
  Loaded out;
  const fs::path base(stem);
  fs::path meta = base;
  meta += ".meta.json";
  if (fs::is_regular_file(base)) {
    out.field = VectorField({read_field(base)});
  } else {
    std::vector<ScalarField> comps;
    for (const char* ext : {".trnc", ".csv"}) {
      fs::path single = base;
      single += ext;
      if (fs::is_regular_file(single)) {
        comps.push_back(read_field(single));
        break;
      }
      for (std::size_t i = 0;; ++i) {
        fs::path part = base;
        part += "." + std::to_string(i) + ext;
        if (!fs::is_regular_file(part)) break;
        comps.push_back(read_field(part));
      }
      if (!comps.empty()) break;
    }
    if (comps.empty()) throw IoError("no field found for '" + stem + "'");
    out.field = VectorField(std::move(comps));
  }
  if (fs::is_regular_file(meta)) {
    const Json j = read_json(meta);
    if (j.contains("generator")) out.generator = j["generator"];
    if (j.contains("region") && j["region"].is_string()) {
      const fs::path region = meta.parent_path() / j["region"].get<std::string>();
      const Mask m = field_as_mask(read_field(region));
      require_compatible(out.field.grid, m.grid, "region");
      out.region = m;
    }
  }
  return out;
}

ScalarField load_scalar(const std::string& stem) {
  Loaded in = load_input(stem);
  if (in.field.size() != 1) {
    throw ValidationError("'" + stem + "' holds " + std::to_string(in.field.size()) +
                          " components; a scalar field is needed");
  }
  return std::move(in.field[0]);
}

RadiusSet parse_radii(const std::string& mode, const GridSpec& g) {
  if (mode == "full") return RadiusSet::full(g);
  if (mode == "dyadic") return RadiusSet::dyadic(g);
  if (mode == "auto") return RadiusSet::automatic(g);
  throw ValidationError("unknown radii mode '" + mode + "' (expected full, dyadic or auto)");
}

std::vector<double> lambda_sweep(const std::vector<double>& given, double lo, std::size_t count) {
  if (!given.empty()) return given;
  if (!(lo > 0.0) || count == 0) throw ValidationError("lambda sweep needs lo > 0 and count > 0");
  std::vector<double> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(std::ldexp(lo, static_cast<int>(j)));
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

Json run_gen(const GenOptions& o) {
  if (o.out.empty()) throw ValidationError("--out is required");
  const std::string ext = extension(o.format);
  const fs::path stem(o.out);
  const std::string name = stem.filename().string();
  Json meta;
  std::vector<std::string> files;
  auto put = [&](const ScalarField& f, const std::string& suffix) {
    const std::string file = name + suffix + ext;
    write_field(f, stem.parent_path() / file, format_from_path(file));
    files.push_back(file);
  };
  if (o.kind == "radial") {
    const RadialMap m = gen_radial_map(o.beta, o.n, o.r0, o.r1);
    for (std::size_t c = 0; c < m.u.size(); ++c) put(m.u[c], "." + std::to_string(c));
    meta["generator"] = m.info();
    const std::string region = name + ".region" + ext;
    write_field(mask_as_field(m.annulus), stem.parent_path() / region, format_from_path(region));
    meta["region"] = region;
  } else if (o.kind == "sawtooth") {
    const Sawtooth s = gen_sawtooth(o.spike_slope, o.base_slope, o.spike_frac, o.n, o.periods, o.dims);
    put(s.u, "");
    meta["generator"] = s.info();
  } else if (o.kind == "p-harmonic") {
    const PHarmonic h = gen_p_harmonic_radial(o.p, o.n_dim, o.n, o.r0, o.r1);
    put(h.u, "");
    meta["generator"] = h.info();
    const std::string region = name + ".region" + ext;
    write_field(mask_as_field(h.annulus), stem.parent_path() / region, format_from_path(region));
    meta["region"] = region;
  } else {
    throw ValidationError("unknown generator kind '" + o.kind + "' (expected radial, sawtooth or p-harmonic)");
  }
  meta["files"] = files;
  fs::path meta_path = stem;
  meta_path += ".meta.json";
  write_text(meta.dump(2) + "\n", meta_path.string());
  return meta;
}

Json run_maximal(const MaximalOptions& o) {
  if (o.out.empty()) throw ValidationError("--out is required");
  const ScalarField v = load_scalar(o.in);
  const RadiusSet radii = parse_radii(o.radii, v.grid);
  ScalarField m;
  if (o.op == "M") {
    m = hl_maximal(v, radii);
  } else if (o.op == "Mi") {
    m = directional_maximal(v, o.axis, radii);
  } else if (o.op == "N") {
    m = aniso_maximal(v, radii);
  } else if (o.op == "composed") {
    m = composed_maximal(v, radii);
  } else {
    throw ValidationError("unknown operator '" + o.op + "' (expected M, Mi, N or composed)");
  }
  write_field(m, o.out);
  double peak = 0.0;
  for (double x : m.values) peak = std::max(peak, x);
  return {{"op", o.op},
          {"radii", o.radii},
          {"axis", o.axis},
          {"max", peak},
          {"integral", integrate(m)},
          {"input_integral", integrate(abs_field(v))}};
}

Json run_truncate(const TruncateOptions& o) {
  if (o.out.empty()) throw ValidationError("--out is required");
  const ScalarField u = load_scalar(o.in);
  const RadiusSet radii = parse_radii(o.radii, u.grid);
  const TruncationParams params{o.lambda, o.mu, o.eps, o.inflation};
  TruncationResult r;
  Json j;
  if (!o.zero_boundary.empty()) {
    const ConvexPolytope omega = ConvexPolytope::from_json(read_json(o.zero_boundary));
    r = asym_truncate_zero_boundary(u, omega, params, radii);
    j["domain"] = omega.to_json();
  } else {
    r = asym_truncate(u, params, radii);
  }
  write_field(r.field, o.out);
  if (!o.kept_out.empty()) write_field(mask_as_field(r.kept), o.kept_out);
  j["result"] = r.to_json();
  j["params"] = {{"lambda", o.lambda}, {"mu", o.mu}, {"eps", o.eps}, {"radii", o.radii}};
  if (o.inflation) j["params"]["inflation"] = *o.inflation;
  j["identical"] = r.field.values == u.values;
  return j;
}

Json run_verify(const std::string& what, const VerifyOptions& o) {
  if (what == "exponents") {
    const ExponentState st = ExponentState::from_proof(o.p, o.r, o.q);
    return {{"kind", "exponents"},
            {"params", {{"p", o.p}, {"r", o.r}, {"q", o.q}, {"delta", o.delta}}},
            {"alpha", st.alpha},
            {"s", st.s},
            {"feasibility", q3_feasibility(st).to_json()},
            {"iteration", exponent_iterate(o.r, o.q, o.delta, o.p).to_json()}};
  }
  if (what == "null-lagrangian") {
    const QuasiconcaveFunctional F = QuasiconcaveFunctional::from_name(o.functional, o.p);
    const std::size_t dim = F.required_dim() != 0 ? F.required_dim() : 2;
    std::vector<double> A = o.matrix;
    if (A.empty()) {
      A.assign(dim * dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) A[i * dim + i] = 1.0;
    }
    const PeriodicField psi = PeriodicField::random(dim, o.modes, o.kmax, o.amplitude, o.seed);
    const NullLagrangianResult r = null_lagrangian_check(F, A, psi, o.n);
    return {{"kind", "null_lagrangian"},
            {"params",
             {{"functional", F.name()},
              {"n", o.n},
              {"modes", o.modes},
              {"kmax", o.kmax},
              {"amplitude", o.amplitude},
              {"seed", o.seed},
              {"matrix", A}}},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"defect", json_number(r.defect)}};
  }

  const Loaded in = load_input(o.in);
  const Mask region = inside_region(in, o.use_region);
  Json out;
  if (what == "consequently" || what == "intermediary") {
    const QuasiconcaveFunctional F = QuasiconcaveFunctional::from_name(o.functional, o.p);
    const std::vector<double> lambdas = lambda_sweep(o.lambdas, o.lambda_lo, o.lambda_count);
    SweepReport rep = what == "consequently"
                          ? verify_consequently(in.field, F, lambdas, parse_radii(o.radii, in.field.grid), &region)
                          : verify_intermediary(in.field, F, lambdas, &region, o.set_constant);
    rep.generator = in.generator;
    out = rep.to_json();
  } else if (what == "orlicz") {
    const QuasiconcaveFunctional F = QuasiconcaveFunctional::from_name(o.functional, o.p);
    const OrliczConclusion c = orlicz_conclusion_check(in.field, F, OrliczWeight(o.p, o.alpha), &region, o.tolerance);
    out = c.to_json();
    out["kind"] = "orlicz";
    out["params"] = {{"functional", F.name()}, {"p", o.p}, {"alpha", o.alpha}};
    out["generator"] = in.generator;
  } else if (what == "t4" || what == "weak-type") {
    if (in.field.size() != 1) throw ValidationError(what + " needs a scalar field");
    const ScalarField& u = in.field[0];
    const std::vector<double> lambdas = lambda_sweep(o.lambdas, o.lambda_lo, o.lambda_count);
    const RadiusSet radii = parse_radii(o.radii, u.grid);
    SweepReport rep;
    if (what == "t4") {
      rep = t4_sweep(u, lambdas, o.mu_scale, o.eps, radii);
    } else {
      MaximalOp op;
      if (o.op == "M") {
        op = MaximalOp::hardy_littlewood;
      } else if (o.op == "N") {
        op = MaximalOp::anisotropic;
      } else {
        throw ValidationError("weak-type --op must be M or N");
      }
      rep = weak_type_constants(u, op, lambdas, o.eps, radii);
    }
    rep.generator = in.generator;
    out = rep.to_json();
  } else {
    throw ValidationError("unknown verify target '" + what + "'");
  }
  return out;
}

std::string run_report(const std::vector<std::string>& inputs) {
  std::vector<Json> reports;
  for (const auto& path : inputs) {
    Json j = read_json(path);
    if (!j.contains("lambda")) throw FormatError(path + ": not a sweep report (no lambda column)");
    reports.push_back(std::move(j));
  }
  return emit_table(reports);
}

}  // namespace asymtrunc::cli
