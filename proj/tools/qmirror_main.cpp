// Command-line surface for the two-mirror optomechanical entanglement
// simulator. Subcommands:
//   fig1      closed-form concurrence sweep (formula vs Wootters pipeline)
//   compare   exact sector evolution vs the closed form, with truncation gates
//   validate  factorized propagator vs dense expm oracle
//   coherent  coherent initial field, sector-resolved exact evolution
//
// Exit codes: 0 all gates pass, 1 usage error, 2 numerical-integrity failure,
// 3 truncation/convergence failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "qmirror/errors.hpp"
#include "qmirror/sweep.hpp"

namespace {

using qmirror::RunConfig;

struct CliOptions {
  double kn = -1.0;
  double k = -1.0;
  int n_photons = -1;
  double omega0 = 0.0, omega = 0.0, length = 0.0, mass = 0.0;
  double r = 13.0;
  RunConfig config;
  double alpha = 1.0;
  bool flip_kerr = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--kn", opt.kn, "Dimensionless product k*n (implies n = 1, k = kn)");
  cmd->add_option("--k", opt.k, "Coupling g/omega");
  cmd->add_option("--n-photons", opt.n_photons, "Initial cavity photon number");
  cmd->add_option("--omega0", opt.omega0, "Cavity frequency [rad/s]");
  cmd->add_option("--omega", opt.omega, "Mirror frequency [rad/s]");
  cmd->add_option("--length", opt.length, "Cavity length [m]");
  cmd->add_option("--mass", opt.mass, "Mirror mass [kg]");
  cmd->add_option("--r", opt.r, "Frequency ratio omega0/omega used by the propagators");
  cmd->add_option("--t-min", opt.config.t_min, "Start of the scaled-time grid");
  cmd->add_option("--t-max", opt.config.t_max, "End of the scaled-time grid (inclusive)");
  cmd->add_option("--points", opt.config.points, "Grid points (inclusive endpoints)");
  cmd->add_option("--n-mirror", opt.config.n_mirror, "Retained Fock levels per mirror");
  cmd->add_option("--n-cav", opt.config.n_cav, "Retained cavity levels (0 = automatic)");
  cmd->add_flag("--normalize-rho", opt.config.normalize_rho,
                "Append the trace-normalized pipeline concurrence as an extra CSV column");
  cmd->add_flag("--include-11", opt.config.include_11,
                "Keep the second-order |11> amplitude in the analytic state");
  cmd->add_option("--out", opt.config.out_path, "Output CSV (or report) path");
  cmd->add_option("--manifest", opt.config.manifest_path, "JSON manifest path");
}

// Exactly one of {kn | k,n | physical} may be given; none means kn = 0.01.
void resolve_coupling(CliOptions& opt) {
  const bool has_kn = opt.kn >= 0.0;
  const bool has_k = opt.k >= 0.0;
  const bool has_physical =
      opt.omega0 != 0.0 || opt.omega != 0.0 || opt.length != 0.0 || opt.mass != 0.0;
  const int specs = (has_kn ? 1 : 0) + (has_k ? 1 : 0) + (has_physical ? 1 : 0);
  if (specs > 1)
    throw CLI::ValidationError(
        "coupling", "give exactly one of --kn, (--k --n-photons), or the physical set");

  if (has_physical) {
    if (opt.omega0 <= 0.0 || opt.omega <= 0.0 || opt.length <= 0.0 || opt.mass <= 0.0 ||
        opt.n_photons < 0)
      throw CLI::ValidationError(
          "coupling", "physical coupling needs --omega0 --omega --length --mass --n-photons");
    opt.config.params = qmirror::ModelParams::from_physical(opt.omega0, opt.omega, opt.length,
                                                            opt.mass, opt.n_photons);
    opt.config.coupling_mode = "physical";
    return;
  }
  if (has_k) {
    const int n = (opt.n_photons >= 0) ? opt.n_photons : 1;
    opt.config.params = qmirror::ModelParams::dimensionless(opt.k, n, opt.r);
    opt.config.coupling_mode = "k,n";
    return;
  }
  const double kn = has_kn ? opt.kn : 0.01;
  if (!has_kn && opt.n_photons >= 0)
    throw CLI::ValidationError("coupling", "--n-photons requires --k or the physical set");
  opt.config.params = qmirror::ModelParams::from_kn(kn, opt.r);
  opt.config.coupling_mode = "kn";
}

void fill_paths(RunConfig& config, const std::string& default_out) {
  if (config.out_path.empty()) config.out_path = default_out;
  if (config.manifest_path.empty()) config.manifest_path = config.out_path + ".manifest.json";
}

void print_gate(const char* name, bool pass) {
  std::printf("  [%s] %s\n", pass ? "PASS" : "FAIL", name);
}

int run(CLI::App& app, CliOptions& opt) {
  using namespace qmirror;

  if (opt.config.params.kn() > 0.1)
    std::fprintf(stderr, "warning: kn = %.3g is outside the perturbative regime (kn <= 0.1)\n",
                 opt.config.params.kn());

  if (app.got_subcommand("fig1")) {
    fill_paths(opt.config, "fig1.csv");
    const Fig1Result res = run_fig1(opt.config);
    write_fig1_csv(opt.config.out_path, res.rows, opt.config.normalize_rho);
    write_json_file(opt.config.manifest_path, res.manifest);
    std::printf("fig1: %zu rows -> %s\n", res.rows.size(), opt.config.out_path.c_str());
    std::printf("  peak C = %.6e at t = %.6f (formula peak %.6e)\n",
                res.manifest["peak_c"].get<double>(), res.manifest["peak_t"].get<double>(),
                res.manifest["formula_peak"].get<double>());
    return 0;
  }

  if (app.got_subcommand("compare")) {
    fill_paths(opt.config, "compare.csv");
    const CompareResult res = run_compare(opt.config);
    write_compare_csv(opt.config.out_path, res.records, opt.config.normalize_rho);
    write_json_file(opt.config.manifest_path, res.manifest);
    std::printf("compare: %zu rows -> %s\n", res.records.size(), opt.config.out_path.c_str());
    std::printf("  peak C (closed form) = %.6e\n", res.manifest["peak_c_closed_form"].get<double>());
    std::printf("  max C_exact (qubit) = %.6e\n",
                res.manifest["max_c_exact_projected"].get<double>());
    std::printf("  min fidelity vs analytic state = %.12f\n",
                res.manifest["min_fidelity_analytic_vs_exact"].get<double>());
    print_gate("convergence (n_mirror doubling)", res.convergence_pass);
    return res.convergence_pass ? 0 : 3;
  }

  if (app.got_subcommand("validate")) {
    if (opt.flip_kerr) opt.config.signs.kerr = -1.0;
    if (opt.config.out_path.empty()) opt.config.out_path = "validate_report.json";
    const ValidateResult res = run_validate(opt.config);
    write_json_file(opt.config.out_path, res.report);
    std::printf("validate: report -> %s\n", opt.config.out_path.c_str());
    std::printf("  max distance (mirror levels < %d) = %.3e\n",
                res.report["domain_levels"].get<int>(),
                res.report["max_distance_restricted"].get<double>());
    std::printf("  max unitarity defect              = %.3e\n",
                res.report["max_unitarity_defect"].get<double>());
    std::printf("  photon conservation defect        = %.3e\n",
                res.report["photon_conservation_defect"].get<double>());
    print_gate("factorization vs expm oracle", res.report["distance_pass"].get<bool>());
    print_gate("unitarity", res.report["unitarity_pass"].get<bool>());
    print_gate("photon-number conservation", res.report["photon_pass"].get<bool>());
    return res.passed ? 0 : 2;
  }

  if (app.got_subcommand("coherent")) {
    opt.config.alpha = opt.alpha;
    fill_paths(opt.config, "coherent.csv");
    const CoherentResult res = run_coherent(opt.config);
    write_coherent_csv(opt.config.out_path, res.rows);
    write_json_file(opt.config.manifest_path, res.report);
    std::printf("coherent: %zu rows -> %s\n", res.rows.size(), opt.config.out_path.c_str());
    std::printf("  n_cav = %d (Poisson tail %.3e)\n", res.report["n_cav"].get<int>(),
                res.report["poisson_tail_mass"].get<double>());
    std::printf("  max projected concurrence = %.6e\n", res.max_concurrence);
    print_gate("convergence (n_mirror doubling)", res.convergence_pass);
    return res.convergence_pass ? 0 : 3;
  }

  std::fprintf(stderr, "%s", app.help().c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two movable mirrors in a single-mode cavity: concurrence experiments"};
  app.require_subcommand(0, 1);

  CliOptions opt;
  CLI::App* fig1 = app.add_subcommand("fig1", "Closed-form concurrence sweep");
  CLI::App* compare = app.add_subcommand("compare", "Exact evolution vs closed form");
  CLI::App* validate = app.add_subcommand("validate", "Propagator vs dense expm oracle");
  CLI::App* coherent = app.add_subcommand("coherent", "Coherent initial field check");
  for (CLI::App* cmd : {fig1, compare, validate, coherent}) add_common_options(cmd, opt);

  validate->add_option("--guard-levels", opt.config.guard_levels,
                       "Top mirror levels excluded from the comparison domain");
  validate->add_flag("--flip-kerr-sign", opt.flip_kerr,
                     "Negate the Kerr phase (sign-sensitivity probe)")
      ->group("");  // hidden
  validate
      ->add_option("--t", opt.config.t_values,
                   "Explicit scaled times (default: 0.5, pi, 2pi, 4pi)")
      ->expected(-1);
  coherent->add_option("--alpha", opt.alpha, "Coherent field amplitude (real)");

  try {
    app.parse(argc, argv);
    resolve_coupling(opt);
    return run(app, opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const qmirror::truncation_error& e) {
    std::fprintf(stderr, "truncation/convergence failure: %s\n", e.what());
    return 3;
  } catch (const qmirror::numerical_error& e) {
    std::fprintf(stderr, "numerical-integrity failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
