#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liephase/adiabatic_oracle.hpp"
#include "liephase/berry_phase.hpp"

namespace liephase {

struct GridSpec {
  std::string coordinate;                        // varying coordinate, e.g. "z1"
  double extent = 3.0;                           // square [-extent, extent]^2
  int samples = 41;                              // per axis
  std::map<std::string, Complex> fixed;          // values of the other coordinates
};

// One machine-readable computation request; see docs/job_schema.json.
struct JobSpec {
  std::string group;  // "su2", "su3" or "su(n)"
  int n = 0;
  std::vector<int> irrep;
  ClosedCurve curve{0};
  std::optional<RealVector> beta;
  std::vector<double> taus;
  QuadratureOptions quadrature;
  EvolveOptions ode;
  double tolerance = 5e-3;  // verify-mode discrepancy tolerance
  std::vector<std::string> outputs{"report"};
  std::optional<GridSpec> grid;
};

JobSpec parse_job(const std::string& text);
std::string serialize_job(const JobSpec& job);

struct OdeEntry {
  double tau = 0.0;
  double geometric_phase = 0.0;
  double overlap_mag = 0.0;
  bool valid = false;
  std::string note;
};

struct PhaseReport {
  std::optional<double> omega_formula;
  std::optional<double> omega_mod2pi;
  std::optional<RealVector> q_vector;
  std::optional<double> omega_from_q;
  std::optional<double> omega_formula_fundamental;
  std::optional<double> omega_from_q_fundamental;
  std::vector<OdeEntry> ode_entries;
  // pairwise mod-2pi spread of {formula, l.Q} for the job's irrep plus the
  // fundamental-weight triangle at the largest adiabatically valid tau
  std::optional<double> max_pairwise_discrepancy_mod2pi;
  // per-method failure messages; a failed method leaves the others intact
  std::map<std::string, std::string> errors;

  bool numerical_failure() const { return !errors.empty(); }
  bool adiabaticity_only_failure() const;
};

// Runs the line-integral formula and the direct Q-vector quadrature, plus the
// Schrodinger sweep when taus are present and with_ode is set.
PhaseReport run_job(const JobSpec& job, bool with_ode = true);

std::string report_to_json(const PhaseReport& report, const JobSpec& job);
std::string report_to_csv(const PhaseReport& report, const JobSpec& job);

// Curvature samples over a 2D slice as CSV; off-chart rows are flagged in the
// trailing column instead of being dropped.
std::string emit_curvature_grid(const JobSpec& job);

// Mackey factors along the job curve, serialized as JSON.
std::string decompose_along_curve(const JobSpec& job, int samples = 8);

}  // namespace liephase
