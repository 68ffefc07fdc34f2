#include "qmirror/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "qmirror/errors.hpp"

namespace qmirror {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json base_manifest(const RunConfig& config, const char* command, const Truncation& trunc) {
  json m;
  m["command"] = command;
  m["coupling_mode"] = config.coupling_mode;
  m["k"] = config.params.k;
  m["n_photons"] = config.params.n;
  m["kn"] = config.params.kn();
  m["r"] = config.params.r;
  if (config.params.omega != 0.0) {
    m["omega0"] = config.params.omega0;
    m["omega"] = config.params.omega;
    m["cavity_length"] = config.params.cavity_length;
    m["mirror_mass"] = config.params.mirror_mass;
    m["g"] = config.params.g;
  }
  m["t_min"] = config.t_min;
  m["t_max"] = config.t_max;
  m["points"] = config.points;
  m["n_cav"] = trunc.n_cav;
  m["n_mirror"] = trunc.n_mirror;
  m["normalize_rho"] = config.normalize_rho;
  m["include_11"] = config.include_11;
  m["perturbative"] = config.params.perturbative();
  m["csv_path"] = config.out_path;
  m["timestamp_utc"] = utc_timestamp();
  return m;
}

// Largest value the closed-form curve can reach over all t for this kn.
double formula_peak(double kn) {
  const double y_max = 8.0 * kn * kn;
  return (y_max <= 1.0) ? y_max * std::exp(-y_max) : std::exp(-1.0);
}

double clamp_unit_interval(const char* what, double v) {
  if (v < -1e-9 || v > 1.0 + 1e-9)
    throw numerical_error(std::string(what) + " " + std::to_string(v) + " outside [0, 1]");
  return std::min(1.0, std::max(0.0, v));
}

double pipeline_concurrence(double kn, double t, bool normalize) {
  TwoQubitDensity rho;
  rho.rho = reduced_density_closed_form(kn, t);
  rho.order = BasisOrder::descending;
  rho.normalized = false;
  if (normalize) {
    rho.rho /= rho.rho.trace().real();
    rho.normalized = true;
  }
  return wootters_concurrence(rho);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (points < 2) throw std::invalid_argument("RunConfig: points must be >= 2");
  if (!(t_max > t_min)) throw std::invalid_argument("RunConfig: t_max must exceed t_min");
  if (n_mirror < 2) throw std::invalid_argument("RunConfig: n_mirror must be >= 2");
}

std::vector<double> time_grid(double t_min, double t_max, int points) {
  if (points < 2) throw std::invalid_argument("time_grid: points must be >= 2");
  if (!(t_max > t_min)) throw std::invalid_argument("time_grid: t_max must exceed t_min");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (t_max - t_min) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = t_min + i * step;
  return grid;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

int default_coherent_n_cav(cxd alpha) {
  const double mean = std::norm(alpha);
  const double mag = std::abs(alpha);
  int n = static_cast<int>(std::ceil(mean + 5.0 * mag)) + 1;
  n = std::max(n, 1);
  while (poisson_tail_mass(mean, n) > 1e-10) ++n;
  return n;
}

// ---------------------------------------------------------------------------

Fig1Result run_fig1(const RunConfig& config) {
  config.validate();
  const double kn = config.params.kn();
  const Truncation trunc(std::max(config.params.n + 1, 2), config.n_mirror);

  Fig1Result result;
  json& m = result.manifest;
  m = base_manifest(config, "fig1", trunc);

  double peak_c = 0.0, peak_t = 0.0, peak_c_norm = 0.0, max_gap = 0.0;
  for (double t : time_grid(config.t_min, config.t_max, config.points)) {
    Fig1Row row{t, concurrence_closed_form(kn, t), pipeline_concurrence(kn, t, false),
                pipeline_concurrence(kn, t, true)};
    if (row.c_closed_form < 0.0 || row.c_pipeline < 0.0)
      throw numerical_error("negative concurrence in fig1 sweep");
    const double gap = std::abs(row.c_closed_form - row.c_pipeline);
    if (gap >= 1e-10)
      throw numerical_error("closed form and Wootters pipeline disagree by " +
                            std::to_string(gap) + " at t = " + std::to_string(t));
    max_gap = std::max(max_gap, gap);
    peak_c_norm = std::max(peak_c_norm, row.c_pipeline_normalized);
    if (row.c_closed_form > peak_c) {
      peak_c = row.c_closed_form;
      peak_t = t;
    }
    result.rows.push_back(row);
  }

  m["rows"] = result.rows.size();
  m["max_abs_c_closed_form_minus_pipeline"] = max_gap;
  m["peak_t"] = peak_t;
  m["peak_c"] = peak_c;
  m["peak_c_normalized"] = peak_c_norm;
  m["formula_peak"] = formula_peak(kn);
  m["peak_abs_err_vs_formula"] = std::abs(peak_c - formula_peak(kn));
  m["peak_matches_formula"] = std::abs(peak_c - formula_peak(kn)) <= 1e-12;
  m["passed"] = true;
  return result;
}

CompareResult run_compare(const RunConfig& config) {
  config.validate();
  const ModelParams& p = config.params;
  const double kn = p.kn();
  const int n_cav = (config.n_cav > 0) ? config.n_cav : p.n + 1;
  const Truncation trunc(n_cav, config.n_mirror);
  const Truncation doubled(n_cav, 2 * config.n_mirror);
  trunc.require_photon_sector(p.n);

  const SectorEvolver sector(p, p.n, trunc);
  const SectorEvolver sector2(p, p.n, doubled);

  CompareResult result;
  json& m = result.manifest;
  m = base_manifest(config, "compare", trunc);

  double max_c_exact = 0.0, max_leak = 0.0, max_gap = 0.0, max_conv_delta = 0.0;
  double min_fid_analytic = 1.0, min_fid_coherent = 1.0;
  double peak_c_closed_form = 0.0, peak_c_norm = 0.0;

  for (double t : time_grid(config.t_min, config.t_max, config.points)) {
    SweepRecord rec;
    rec.t = t;
    rec.method = "block";
    rec.c_closed_form = concurrence_closed_form(kn, t);
    rec.c_pipeline = pipeline_concurrence(kn, t, false);
    rec.c_pipeline_normalized = pipeline_concurrence(kn, t, true);

    const Vector phi = sector.evolve_vacuum(t);
    const Matrix rho_m = phi * phi.adjoint();
    const QubitProjection proj = project_to_qubits(rho_m, trunc.n_mirror);
    rec.c_exact_projected = wootters_concurrence(proj.rho);
    rec.leakage = clamp_unit_interval("leakage", proj.leakage);

    const Vector analytic = approx_state(kn, t, config.include_11)
                                .pair_vector(trunc.n_mirror, /*normalize=*/true);
    const cxd overlap = analytic.adjoint() * phi;
    rec.fidelity_analytic_vs_exact =
        clamp_unit_interval("fidelity", std::norm(overlap));

    // Overlap with the exact coherent product |kn eta> ⊗ |kn eta>.
    const cxd beta = kn * eta(t);
    const Vector coh = kron(Matrix(coherent_state(trunc.n_mirror, beta)),
                            Matrix(coherent_state(trunc.n_mirror, beta)));
    min_fid_coherent = std::min(
        min_fid_coherent, clamp_unit_interval("fidelity", std::norm(cxd(coh.adjoint() * phi))));

    // Convergence gate: doubling the mirror truncation must not move the
    // projected concurrence.
    const Vector phi2 = sector2.evolve_vacuum(t);
    const QubitProjection proj2 =
        project_to_qubits(Matrix(phi2 * phi2.adjoint()), doubled.n_mirror);
    const double conv_delta =
        std::abs(rec.c_exact_projected - wootters_concurrence(proj2.rho));
    max_conv_delta = std::max(max_conv_delta, conv_delta);

    if (rec.c_closed_form < 0.0 || rec.c_pipeline < 0.0)
      throw numerical_error("negative concurrence in compare sweep");
    const double gap = std::abs(rec.c_closed_form - rec.c_pipeline);
    if (gap >= 1e-10)
      throw numerical_error("closed form and Wootters pipeline disagree by " +
                            std::to_string(gap));
    max_gap = std::max(max_gap, gap);

    max_c_exact = std::max(max_c_exact, rec.c_exact_projected);
    max_leak = std::max(max_leak, rec.leakage);
    min_fid_analytic = std::min(min_fid_analytic, rec.fidelity_analytic_vs_exact);
    peak_c_closed_form = std::max(peak_c_closed_form, rec.c_closed_form);
    peak_c_norm = std::max(peak_c_norm, rec.c_pipeline_normalized);
    result.records.push_back(std::move(rec));
  }

  result.convergence_pass = max_conv_delta < 1e-10;

  m["rows"] = result.records.size();
  m["method"] = "block";
  m["max_abs_c_closed_form_minus_pipeline"] = max_gap;
  m["peak_c_closed_form"] = peak_c_closed_form;
  m["peak_c_pipeline_normalized"] = peak_c_norm;
  m["max_c_exact_projected"] = max_c_exact;
  m["max_leakage"] = max_leak;
  m["min_fidelity_analytic_vs_exact"] = min_fid_analytic;
  m["max_fidelity_gap_analytic"] = 1.0 - min_fid_analytic;
  m["min_fidelity_coherent_product"] = min_fid_coherent;
  m["max_fidelity_gap_coherent"] = 1.0 - min_fid_coherent;
  m["n_mirror_doubled"] = doubled.n_mirror;
  m["max_convergence_delta"] = max_conv_delta;
  m["convergence_gate_pass"] = result.convergence_pass;
  m["passed"] = result.convergence_pass;
  return result;
}

ValidateResult run_validate(const RunConfig& config) {
  const int n_cav = (config.n_cav > 0) ? config.n_cav : 3;
  const Truncation trunc(n_cav, config.n_mirror);
  if (trunc.total_dim() > 4096)
    throw std::invalid_argument("validate: dimension " + std::to_string(trunc.total_dim()) +
                                " too large for the dense oracle (limit 4096)");

  std::vector<double> ts = config.t_values;
  if (ts.empty()) ts = {0.5, 0.5 * kTwoPi, kTwoPi, 2.0 * kTwoPi};

  constexpr double tol = 1e-6;
  ValidateResult result;
  json& rep = result.report;
  rep = base_manifest(config, "validate", trunc);
  rep["kerr_sign"] = config.signs.kerr;
  rep["guard_levels"] = config.guard_levels;
  rep["tolerance"] = tol;

  const Matrix h = build_hamiltonian(config.params, trunc);
  const Matrix n_cav_op = embed(number_operator(trunc.n_cav), 0, full_space(trunc));
  const double photon_defect = max_abs(h * n_cav_op - n_cav_op * h);

  json t_arr = json::array(), dist_arr = json::array(), dist_full_arr = json::array();
  json unit_fact_arr = json::array(), unit_expm_arr = json::array();
  double max_dist = 0.0, max_unit = 0.0;
  int domain_levels = 0;
  for (double t : ts) {
    const PropagatorDistance d =
        propagator_distance(config.params, t, trunc, config.guard_levels, config.signs);
    domain_levels = d.domain_levels;
    const double u_fact =
        unitarity_defect(factorized_propagator(config.params, t, trunc, config.signs));
    const double u_expm = unitarity_defect(expm_hermitian(h, t));
    t_arr.push_back(t);
    dist_arr.push_back(d.restricted);
    dist_full_arr.push_back(d.full);
    unit_fact_arr.push_back(u_fact);
    unit_expm_arr.push_back(u_expm);
    max_dist = std::max(max_dist, d.restricted);
    max_unit = std::max({max_unit, u_fact, u_expm});
  }

  rep["t_values"] = t_arr;
  rep["domain_levels"] = domain_levels;
  rep["distance_restricted"] = dist_arr;
  rep["distance_full"] = dist_full_arr;
  rep["unitarity_factorized"] = unit_fact_arr;
  rep["unitarity_expm"] = unit_expm_arr;
  rep["photon_conservation_defect"] = photon_defect;
  rep["max_distance_restricted"] = max_dist;
  rep["max_unitarity_defect"] = max_unit;
  rep["distance_pass"] = max_dist < tol;
  rep["unitarity_pass"] = max_unit < tol;
  rep["photon_pass"] = photon_defect < tol;
  result.passed = (max_dist < tol) && (max_unit < tol) && (photon_defect < tol);
  rep["passed"] = result.passed;
  return result;
}

CoherentResult run_coherent(const RunConfig& config) {
  config.validate();
  const ModelParams& p = config.params;
  const cxd alpha = config.alpha;
  const double mean = std::norm(alpha);

  const int n_cav = (config.n_cav > 0) ? config.n_cav : default_coherent_n_cav(alpha);
  const double tail = poisson_tail_mass(mean, n_cav);
  if (tail > 1e-10)
    throw truncation_error("coherent: Poisson tail mass " + std::to_string(tail) +
                           " above the retained cavity levels exceeds 1e-10; raise n_cav");

  const Truncation trunc(n_cav, config.n_mirror);
  const Truncation doubled(n_cav, 2 * config.n_mirror);

  // Occupation weights of the truncated, renormalized coherent field.
  const Vector field = coherent_state(n_cav, alpha);
  std::vector<double> weight(static_cast<std::size_t>(n_cav));
  for (int n = 0; n < n_cav; ++n) weight[static_cast<std::size_t>(n)] = std::norm(field(n));

  std::vector<SectorEvolver> sectors, sectors2;
  sectors.reserve(static_cast<std::size_t>(n_cav));
  sectors2.reserve(static_cast<std::size_t>(n_cav));
  for (int n = 0; n < n_cav; ++n) {
    sectors.emplace_back(p, n, trunc);
    sectors2.emplace_back(p, n, doubled);
  }

  CoherentResult result;
  json& rep = result.report;
  rep = base_manifest(config, "coherent", trunc);
  rep["alpha_re"] = alpha.real();
  rep["alpha_im"] = alpha.imag();
  rep["alpha_sq"] = mean;
  rep["poisson_tail_mass"] = tail;
  rep["alpha_sq_times_k"] = mean * p.k;
  rep["weak_field_ok"] = mean * p.k <= 0.1;

  const int pair = trunc.mirror_pair_dim();
  const int pair2 = doubled.mirror_pair_dim();
  double max_leak = 0.0, max_ln = 0.0, max_conv_delta = 0.0;

  for (double t : time_grid(config.t_min, config.t_max, config.points)) {
    Matrix rho_m = Matrix::Zero(pair, pair);
    Matrix rho_m2 = Matrix::Zero(pair2, pair2);
    for (int n = 0; n < n_cav; ++n) {
      const double w = weight[static_cast<std::size_t>(n)];
      if (w == 0.0) continue;
      const Vector phi = sectors[static_cast<std::size_t>(n)].evolve_vacuum(t);
      rho_m.noalias() += w * (phi * phi.adjoint());
      const Vector phi2 = sectors2[static_cast<std::size_t>(n)].evolve_vacuum(t);
      rho_m2.noalias() += w * (phi2 * phi2.adjoint());
    }

    const QubitProjection proj = project_to_qubits(rho_m, trunc.n_mirror);
    CoherentRow row;
    row.t = t;
    row.c_projected = wootters_concurrence(proj.rho);
    row.leakage = clamp_unit_interval("leakage", proj.leakage);
    row.log_neg = log_negativity(proj.rho);

    const QubitProjection proj2 = project_to_qubits(rho_m2, doubled.n_mirror);
    max_conv_delta =
        std::max(max_conv_delta, std::abs(row.c_projected - wootters_concurrence(proj2.rho)));

    result.max_concurrence = std::max(result.max_concurrence, row.c_projected);
    max_leak = std::max(max_leak, row.leakage);
    max_ln = std::max(max_ln, row.log_neg);
    result.rows.push_back(row);
  }

  result.convergence_pass = max_conv_delta < 1e-10;

  rep["rows"] = result.rows.size();
  rep["max_concurrence"] = result.max_concurrence;
  rep["max_leakage"] = max_leak;
  rep["max_log_negativity"] = max_ln;
  rep["n_mirror_doubled"] = doubled.n_mirror;
  rep["max_convergence_delta"] = max_conv_delta;
  rep["convergence_gate_pass"] = result.convergence_pass;
  rep["passed"] = result.convergence_pass;
  return result;
}

// ---------------------------------------------------------------------------

void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows,
                    bool normalized_column) {
  std::ofstream out = open_output(path);
  out << "t,c_closed_form,c_pipeline";
  if (normalized_column) out << ",c_pipeline_normalized";
  out << '\n';
  for (const Fig1Row& r : rows) {
    out << format_sci(r.t) << ',' << format_sci(r.c_closed_form) << ',' << format_sci(r.c_pipeline);
    if (normalized_column) out << ',' << format_sci(r.c_pipeline_normalized);
    out << '\n';
  }
}

void write_compare_csv(const std::string& path, const std::vector<SweepRecord>& records,
                       bool normalized_column) {
  std::ofstream out = open_output(path);
  out << "t,c_closed_form,c_pipeline";
  if (normalized_column) out << ",c_pipeline_normalized";
  out << ",c_exact_projected,leakage,fidelity_analytic_vs_exact,method\n";
  for (const SweepRecord& r : records) {
    out << format_sci(r.t) << ',' << format_sci(r.c_closed_form) << ',' << format_sci(r.c_pipeline);
    if (normalized_column) out << ',' << format_sci(r.c_pipeline_normalized);
    out << ',' << format_sci(r.c_exact_projected) << ',' << format_sci(r.leakage) << ','
        << format_sci(r.fidelity_analytic_vs_exact) << ',' << r.method << '\n';
  }
}

void write_coherent_csv(const std::string& path, const std::vector<CoherentRow>& rows) {
  std::ofstream out = open_output(path);
  out << "t,c_projected,leakage,log_negativity\n";
  for (const CoherentRow& r : rows)
    out << format_sci(r.t) << ',' << format_sci(r.c_projected) << ',' << format_sci(r.leakage)
        << ',' << format_sci(r.log_neg) << '\n';
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
}

}  // namespace qmirror
