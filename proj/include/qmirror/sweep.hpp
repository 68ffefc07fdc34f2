#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmirror/analytic.hpp"
#include "qmirror/entanglement.hpp"
#include "qmirror/model.hpp"

namespace qmirror {

using json = nlohmann::json;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// One resolved experiment configuration. The CLI guarantees that exactly one
/// coupling parameterization (kn | k,n | physical) was used to fill `params`;
/// `coupling_mode` records which one for the manifest.
struct RunConfig {
  ModelParams params;
  std::string coupling_mode = "kn";

  double t_min = 0.0;
  double t_max = 2.0 * kTwoPi;
  int points = 1001;
  std::vector<double> t_values;  // when nonempty, overrides the grid (validate)

  int n_mirror = 8;
  int n_cav = 0;  // 0 = command-specific default

  bool normalize_rho = false;
  bool include_11 = false;
  cxd alpha = 0.0;  // coherent initial field

  int guard_levels = 5;
  FactorSigns signs{};

  std::string out_path;
  std::string manifest_path;

  void validate() const;  // points >= 2, t_max > t_min
};

/// Inclusive, evenly spaced grid: t_i = t_min + i (t_max - t_min)/(points - 1).
std::vector<double> time_grid(double t_min, double t_max, int points);

/// Scientific notation with 17 significant digits; CSV cells round-trip
/// bit-exactly and identical configs produce byte-identical files.
std::string format_sci(double v);

/// Smallest cavity truncation whose Poisson tail mass is <= 1e-10, with the
/// conventional |alpha|^2 + 5|alpha| coverage as a lower bound.
int default_coherent_n_cav(cxd alpha);

// ---------------------------------------------------------------------------

struct Fig1Row {
  double t;
  double c_closed_form;          // the formula
  double c_pipeline;             // Wootters concurrence of the closed-form matrix
  double c_pipeline_normalized;  // same, after dividing the matrix by its trace
};

struct Fig1Result {
  std::vector<Fig1Row> rows;
  json manifest;
};

Fig1Result run_fig1(const RunConfig& config);

struct SweepRecord {
  double t;
  double c_closed_form;
  double c_pipeline;
  double c_pipeline_normalized;
  double c_exact_projected;  // concurrence of the qubit-projected exact state
  double leakage;
  double fidelity_analytic_vs_exact;
  std::string method;
};

struct CompareResult {
  std::vector<SweepRecord> records;
  json manifest;
  bool convergence_pass = true;
};

/// Exact sector evolution from |n> ⊗ |0,0> versus the closed form, per grid
/// point, with the n_mirror doubling convergence gate.
CompareResult run_compare(const RunConfig& config);

struct ValidateResult {
  json report;
  bool passed = false;
};

/// Factorized-propagator-versus-expm audit with unitarity and
/// photon-conservation defects. Gate tolerance 1e-6.
ValidateResult run_validate(const RunConfig& config);

struct CoherentRow {
  double t;
  double c_projected;
  double leakage;
  double log_neg;
};

struct CoherentResult {
  std::vector<CoherentRow> rows;
  json report;
  double max_concurrence = 0.0;
  bool convergence_pass = true;
};

/// Coherent initial field evolved exactly sector-by-sector; the mirror pair is
/// the Poisson-weighted mixture of per-sector pure states.
CoherentResult run_coherent(const RunConfig& config);

// ---------------------------------------------------------------------------

// The default column sets follow the sweep records; `normalized_column`
// appends c_pipeline_normalized (the --normalize-rho surface).
void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows,
                    bool normalized_column = false);
void write_compare_csv(const std::string& path, const std::vector<SweepRecord>& records,
                       bool normalized_column = false);
void write_coherent_csv(const std::string& path, const std::vector<CoherentRow>& rows);
void write_json_file(const std::string& path, const json& j);

}  // namespace qmirror
