#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/report.hpp"
#include "commands.hpp"

using namespace asymtrunc;

namespace {

std::string command_line(int argc, char** argv) {
  std::string s = "asymtrunc";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(Json j, const std::string& command, const std::string& path) {
  j["command"] = command;
  j["version"] = library_version();
  cli::write_text(j.dump(2) + "\n", path);
}

void add_verify_common(CLI::App* sub, cli::VerifyOptions& o) {
  sub->add_option("--in", o.in, "Input field or stem")->required();
  sub->add_option("--radii", o.radii, "Radius set: full, dyadic or auto")->capture_default_str();
  sub->add_flag("!--no-region", o.use_region, "Ignore the region stored next to the input");
}

void add_sweep(CLI::App* sub, cli::VerifyOptions& o) {
  sub->add_option("--lambdas", o.lambdas, "Explicit lambda values")->delimiter(',');
  sub->add_option("--lambda-lo", o.lambda_lo, "First dyadic lambda")->capture_default_str();
  sub->add_option("--lambda-count", o.lambda_count, "Number of dyadic lambdas")->capture_default_str();
}

void add_functional(CLI::App* sub, cli::VerifyOptions& o) {
  sub->add_option("--functional", o.functional, "det2, det3 or neg-ell1")->capture_default_str();
  sub->add_option("--p", o.p, "Growth exponent")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz truncation and maximal-function toolkit"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path = "-";
  app.add_option("--report", report_path, "Where to write the JSON report (- for stdout)");

  cli::GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a test field");
  g->add_option("--kind", gen.kind, "radial, sawtooth or p-harmonic")->required();
  g->add_option("--n", gen.n, "Cells per axis")->capture_default_str();
  g->add_option("--beta", gen.beta, "Radial exponent")->capture_default_str();
  g->add_option("--r0", gen.r0, "Inner annulus radius");
  g->add_option("--r1", gen.r1, "Outer annulus radius")->capture_default_str();
  g->add_option("--spike-slope", gen.spike_slope)->capture_default_str();
  g->add_option("--base-slope", gen.base_slope)->capture_default_str();
  g->add_option("--spike-frac", gen.spike_frac)->capture_default_str();
  g->add_option("--periods", gen.periods)->capture_default_str();
  g->add_option("--dims", gen.dims)->capture_default_str();
  g->add_option("--p", gen.p, "p-harmonic exponent")->capture_default_str();
  g->add_option("--n-dim", gen.n_dim, "p-harmonic dimension")->capture_default_str();
  g->add_option("--out", gen.out, "Output stem")->required();
  g->add_option("--format", gen.format, "binary or csv")->capture_default_str();

  cli::MaximalOptions mx;
  auto* m = app.add_subcommand("maximal", "Apply a maximal operator");
  m->add_option("--op", mx.op, "M, Mi, N or composed")->capture_default_str();
  m->add_option("--axis", mx.axis, "Axis for Mi")->capture_default_str();
  m->add_option("--radii", mx.radii, "full, dyadic or auto")->capture_default_str();
  m->add_option("--in", mx.in)->required();
  m->add_option("--out", mx.out)->required();

  cli::TruncateOptions tr;
  auto* t = app.add_subcommand("truncate", "Asymmetric Lipschitz truncation");
  t->add_option("--lambda", tr.lambda)->required();
  t->add_option("--mu", tr.mu)->required();
  t->add_option("--eps", tr.eps)->capture_default_str();
  t->add_option("--inflation", tr.inflation, "Slope factor; default max(1, measured modulus)");
  t->add_option("--zero-boundary", tr.zero_boundary, "Polytope JSON of the domain");
  t->add_option("--radii", tr.radii)->capture_default_str();
  t->add_option("--in", tr.in)->required();
  t->add_option("--out", tr.out)->required();
  t->add_option("--kept", tr.kept_out, "Write the kept mask as a 0/1 field");

  cli::VerifyOptions vo;
  std::string verify_target;
  auto* v = app.add_subcommand("verify", "Evaluate an inequality or identity");
  v->require_subcommand(1);

  auto* cons = v->add_subcommand("consequently", "Level-set bound on {M grad u > lambda}");
  add_verify_common(cons, vo);
  add_sweep(cons, vo);
  add_functional(cons, vo);

  auto* inter = v->add_subcommand("intermediary", "Level-set bound on F_+ below C lambda^p");
  add_verify_common(inter, vo);
  add_sweep(inter, vo);
  add_functional(inter, vo);
  inter->add_option("--set-constant", vo.set_constant)->capture_default_str();

  auto* orl = v->add_subcommand("orlicz", "Hypothesis and conclusion integrals");
  add_verify_common(orl, vo);
  add_functional(orl, vo);
  orl->add_option("--alpha", vo.alpha)->capture_default_str();
  orl->add_option("--tolerance", vo.tolerance)->capture_default_str();

  auto* t4 = v->add_subcommand("t4", "Measure of the changed set over a lambda sweep");
  add_verify_common(t4, vo);
  add_sweep(t4, vo);
  t4->add_option("--eps", vo.eps)->capture_default_str();
  t4->add_option("--mu-scale", vo.mu_scale, "mu = scale * lambda")->capture_default_str();

  auto* nl = v->add_subcommand("null-lagrangian", "F(A) against the mean of F(A + D psi)");
  add_functional(nl, vo);
  nl->add_option("--n", vo.n)->capture_default_str();
  nl->add_option("--modes", vo.modes)->capture_default_str();
  nl->add_option("--kmax", vo.kmax)->capture_default_str();
  nl->add_option("--amplitude", vo.amplitude)->capture_default_str();
  nl->add_option("--seed", vo.seed)->capture_default_str();
  nl->add_option("--matrix", vo.matrix, "Row-major A")->delimiter(',');

  auto* wt = v->add_subcommand("weak-type", "Empirical weak-type constants");
  add_verify_common(wt, vo);
  add_sweep(wt, vo);
  wt->add_option("--op", vo.op, "M or N")->capture_default_str();
  wt->add_option("--eps", vo.eps)->capture_default_str();

  auto* ex = v->add_subcommand("exponents", "Exponent arithmetic and feasibility");
  ex->add_option("--p", vo.p)->required();
  ex->add_option("--r", vo.r)->required();
  ex->add_option("--q", vo.q)->required();
  ex->add_option("--delta", vo.delta)->capture_default_str();

  for (auto* sub : v->get_subcommands({})) {
    const std::string name = sub->get_name();
    sub->callback([&verify_target, name] { verify_target = name; });
  }

  std::vector<std::string> report_inputs;
  std::string table_out = "-";
  auto* rp = app.add_subcommand("report", "Merge JSON sweep reports into a CSV table");
  rp->add_option("inputs", report_inputs, "Report files");
  rp->add_option("--out", table_out, "CSV path (- for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string command = command_line(argc, argv);
  try {
    if (g->parsed()) {
      emit(cli::run_gen(gen), command, report_path);
    } else if (m->parsed()) {
      emit(cli::run_maximal(mx), command, report_path);
    } else if (t->parsed()) {
      emit(cli::run_truncate(tr), command, report_path);
    } else if (v->parsed()) {
      emit(cli::run_verify(verify_target, vo), command, report_path);
    } else if (rp->parsed()) {
      cli::write_text(cli::run_report(report_inputs), table_out);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
