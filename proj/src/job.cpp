#include "liephase/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace liephase {

using nlohmann::json;

namespace {

int parse_group(const std::string& group) {
  if (group == "su2") return 2;
  if (group == "su3") return 3;
  if (group.size() > 4 && group.substr(0, 3) == "su(" && group.back() == ')') {
    try {
      int n = std::stoi(group.substr(3, group.size() - 4));
      if (n >= 2) return n;
    } catch (...) {
    }
  }
  throw ValidationError("job: unrecognized group '" + group + "' (use su2, su3 or su(n))");
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ValidationError("job: unknown key '" + it.key() + "' in " + where);
  }
}

int coordinate_index(const std::string& name, int n_pos, const std::string& where) {
  if (name.size() >= 2 && name[0] == 'z') {
    try {
      int idx = std::stoi(name.substr(1));
      if (idx >= 1 && idx <= n_pos) return idx - 1;
    } catch (...) {
    }
  }
  std::ostringstream msg;
  msg << "job: " << where << " names coordinate '" << name << "', expected z1..z" << n_pos;
  throw ValidationError(msg.str());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

JobSpec parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("job: JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("job: document must be a JSON object");
  reject_unknown_keys(doc,
                      {"group", "irrep", "curve", "beta", "taus", "quadrature", "ode",
                       "tolerance", "outputs", "grid"},
                      "the job document");

  JobSpec job;
  if (!doc.contains("group") || !doc["group"].is_string())
    throw ValidationError("job: missing string key 'group'");
  job.group = doc["group"].get<std::string>();
  job.n = parse_group(job.group);
  const int rank = job.n - 1;
  const int n_pos = job.n * (job.n - 1) / 2;

  if (!doc.contains("irrep") || !doc["irrep"].is_array())
    throw ValidationError("job: missing array key 'irrep'");
  for (const auto& v : doc["irrep"]) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw ValidationError("job: irrep entries must be nonnegative integers");
    job.irrep.push_back(v.get<int>());
  }
  if (static_cast<int>(job.irrep.size()) != rank) {
    std::ostringstream msg;
    msg << "job: irrep length " << job.irrep.size() << " != rank " << rank;
    throw ValidationError(msg.str());
  }

  if (!doc.contains("curve") || !doc["curve"].is_object())
    throw ValidationError("job: missing object key 'curve'");
  job.curve = ClosedCurve(n_pos);
  for (auto it = doc["curve"].begin(); it != doc["curve"].end(); ++it) {
    int coord = coordinate_index(it.key(), n_pos, "curve");
    if (!it.value().is_array())
      throw ValidationError("job: curve coefficients for " + it.key() + " must be an array");
    std::vector<int> seen;
    for (const auto& entry : it.value()) {
      if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
          !entry[1].is_number() || !entry[2].is_number())
        throw ValidationError("job: curve coefficient entries must be [m, re, im] with integer m");
      int m = entry[0].get<int>();
      if (std::find(seen.begin(), seen.end(), m) != seen.end())
        throw ValidationError("job: duplicate Fourier index in curve coordinate " + it.key());
      seen.push_back(m);
      job.curve.set_coefficient(coord, m, Complex(entry[1].get<double>(), entry[2].get<double>()));
    }
  }

  if (doc.contains("beta")) {
    if (!doc["beta"].is_array() || static_cast<int>(doc["beta"].size()) != rank)
      throw ValidationError("job: beta must be an array of rank real coordinates");
    RealVector beta(rank);
    for (int j = 0; j < rank; ++j) {
      if (!doc["beta"][j].is_number()) throw ValidationError("job: beta entries must be numbers");
      beta(j) = doc["beta"][j].get<double>();
    }
    job.beta = beta;
  }

  if (doc.contains("taus")) {
    if (!doc["taus"].is_array()) throw ValidationError("job: taus must be an array");
    for (const auto& v : doc["taus"]) {
      if (!v.is_number() || v.get<double>() <= 0.0)
        throw ValidationError("job: taus entries must be positive numbers");
      job.taus.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < job.taus.size(); ++i)
      if (job.taus[i] <= job.taus[i - 1])
        throw ValidationError("job: taus must be strictly ascending");
  }

  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    if (!q.is_object()) throw ValidationError("job: quadrature must be an object");
    reject_unknown_keys(q, {"tol", "max_panels", "nodes_per_panel"}, "quadrature");
    if (q.contains("tol")) job.quadrature.tol = q["tol"].get<double>();
    if (q.contains("max_panels")) job.quadrature.max_panels = q["max_panels"].get<int>();
    if (q.contains("nodes_per_panel"))
      job.quadrature.nodes_per_panel = q["nodes_per_panel"].get<int>();
    if (job.quadrature.tol <= 0.0 || job.quadrature.max_panels < 1 ||
        job.quadrature.nodes_per_panel < 2)
      throw ValidationError("job: invalid quadrature settings");
  }

  if (doc.contains("ode")) {
    const json& o = doc["ode"];
    if (!o.is_object()) throw ValidationError("job: ode must be an object");
    reject_unknown_keys(o, {"steps_per_tau", "min_steps", "eps_adb"}, "ode");
    if (o.contains("steps_per_tau")) job.ode.steps_per_tau = o["steps_per_tau"].get<double>();
    if (o.contains("min_steps")) job.ode.min_steps = o["min_steps"].get<int>();
    if (o.contains("eps_adb")) job.ode.eps_adb = o["eps_adb"].get<double>();
    if (job.ode.steps_per_tau <= 0.0 || job.ode.min_steps < 1 || job.ode.eps_adb <= 0.0)
      throw ValidationError("job: invalid ode settings");
  }

  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number() || doc["tolerance"].get<double>() <= 0.0)
      throw ValidationError("job: tolerance must be a positive number");
    job.tolerance = doc["tolerance"].get<double>();
  }

  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_array()) throw ValidationError("job: outputs must be an array");
    job.outputs.clear();
    for (const auto& v : doc["outputs"]) {
      std::string kind = v.get<std::string>();
      if (kind != "report" && kind != "curvature_grid")
        throw ValidationError("job: unknown output kind '" + kind + "'");
      job.outputs.push_back(kind);
    }
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) throw ValidationError("job: grid must be an object");
    reject_unknown_keys(g, {"coordinate", "extent", "samples", "fixed"}, "grid");
    GridSpec grid;
    if (!g.contains("coordinate") || !g["coordinate"].is_string())
      throw ValidationError("job: grid requires a string 'coordinate'");
    grid.coordinate = g["coordinate"].get<std::string>();
    coordinate_index(grid.coordinate, n_pos, "grid");
    if (g.contains("extent")) grid.extent = g["extent"].get<double>();
    if (g.contains("samples")) grid.samples = g["samples"].get<int>();
    if (grid.extent <= 0.0 || grid.samples < 0)
      throw ValidationError("job: invalid grid extent or sample count");
    if (g.contains("fixed")) {
      if (!g["fixed"].is_object()) throw ValidationError("job: grid.fixed must be an object");
      for (auto it = g["fixed"].begin(); it != g["fixed"].end(); ++it) {
        coordinate_index(it.key(), n_pos, "grid.fixed");
        if (!it.value().is_array() || it.value().size() != 2)
          throw ValidationError("job: grid.fixed values must be [re, im]");
        grid.fixed[it.key()] =
            Complex(it.value()[0].get<double>(), it.value()[1].get<double>());
      }
    }
    job.grid = grid;
  }

  if (std::find(job.outputs.begin(), job.outputs.end(), "curvature_grid") != job.outputs.end() &&
      !job.grid)
    throw ValidationError("job: outputs request curvature_grid but no grid is specified");

  return job;
}

std::string serialize_job(const JobSpec& job) {
  json doc;
  doc["group"] = job.group;
  doc["irrep"] = job.irrep;
  json curve = json::object();
  for (int a = 0; a < job.curve.n_coords(); ++a) {
    const auto& series = job.curve.coefficients()[a];
    if (series.empty()) continue;
    auto sorted = series;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    json list = json::array();
    for (const auto& [m, c] : sorted) list.push_back({m, c.real(), c.imag()});
    curve["z" + std::to_string(a + 1)] = std::move(list);
  }
  doc["curve"] = std::move(curve);
  if (job.beta) {
    json b = json::array();
    for (int j = 0; j < job.beta->size(); ++j) b.push_back((*job.beta)(j));
    doc["beta"] = std::move(b);
  }
  if (!job.taus.empty()) doc["taus"] = job.taus;
  doc["quadrature"] = {{"tol", job.quadrature.tol},
                       {"max_panels", job.quadrature.max_panels},
                       {"nodes_per_panel", job.quadrature.nodes_per_panel}};
  doc["ode"] = {{"steps_per_tau", job.ode.steps_per_tau},
                {"min_steps", job.ode.min_steps},
                {"eps_adb", job.ode.eps_adb}};
  doc["tolerance"] = job.tolerance;
  doc["outputs"] = job.outputs;
  if (job.grid) {
    json g;
    g["coordinate"] = job.grid->coordinate;
    g["extent"] = job.grid->extent;
    g["samples"] = job.grid->samples;
    json fixed = json::object();
    for (const auto& [name, value] : job.grid->fixed)
      fixed[name] = {value.real(), value.imag()};
    g["fixed"] = std::move(fixed);
    doc["grid"] = std::move(g);
  }
  return doc.dump(2);
}

bool PhaseReport::adiabaticity_only_failure() const {
  if (!errors.empty() || ode_entries.empty()) return false;
  return std::none_of(ode_entries.begin(), ode_entries.end(),
                      [](const OdeEntry& e) { return e.valid; });
}

PhaseReport run_job(const JobSpec& job, bool with_ode) {
  CosetChart chart = CosetChart::su(job.n);
  RealVector weight = dominant_weight(IrrepLabel(job.irrep), chart.basis());
  PhaseReport rep;

  try {
    job.curve.validate_on_chart(chart);
    double omega = phase_line_integral(job.curve, chart, weight, job.quadrature);
    rep.omega_formula = omega;
    rep.omega_mod2pi = wrap_angle(omega);
  } catch (const std::exception& e) {
    rep.errors["formula"] = e.what();
  }

  try {
    RealVector q = q_vector_direct(job.curve, chart, job.quadrature);
    rep.q_vector = q;
    rep.omega_from_q = weight.dot(q);
  } catch (const std::exception& e) {
    rep.errors["q_vector"] = e.what();
  }

  if (with_ode && !job.taus.empty()) {
    try {
      RealVector fund_weight = dominant_weight(fundamental_label(chart.basis()), chart.basis());
      double omega_fund = phase_line_integral(job.curve, chart, fund_weight, job.quadrature);
      rep.omega_formula_fundamental = omega_fund;
      if (rep.q_vector) rep.omega_from_q_fundamental = fund_weight.dot(*rep.q_vector);
      HamiltonianPath path{job.curve, job.beta ? *job.beta : default_beta(chart.basis())};
      int idx = dominant_eigenvector_index(chart.basis());
      TauSweepTable table = tau_sweep(path, chart, job.taus, omega_fund, idx, job.ode);
      for (const auto& row : table.rows) {
        OdeEntry entry;
        entry.tau = row.tau;
        entry.geometric_phase = row.geometric_phase;
        entry.overlap_mag = row.overlap_mag;
        entry.valid = row.valid;
        entry.note = row.note;
        rep.ode_entries.push_back(std::move(entry));
      }
    } catch (const std::exception& e) {
      rep.errors["ode"] = e.what();
    }
  }

  std::vector<double> discrepancies;
  if (rep.omega_formula && rep.omega_from_q)
    discrepancies.push_back(angle_distance(*rep.omega_formula, *rep.omega_from_q));
  if (rep.omega_formula_fundamental && rep.omega_from_q_fundamental)
    discrepancies.push_back(
        angle_distance(*rep.omega_formula_fundamental, *rep.omega_from_q_fundamental));
  // the sweep rows at small tau are convergence diagnostics; the adiabatic
  // estimate entering the triangle is the largest valid tau
  const OdeEntry* best = nullptr;
  for (const auto& entry : rep.ode_entries)
    if (entry.valid && (!best || entry.tau > best->tau)) best = &entry;
  if (best && rep.omega_formula_fundamental)
    discrepancies.push_back(
        angle_distance(best->geometric_phase, *rep.omega_formula_fundamental));
  if (best && rep.omega_from_q_fundamental)
    discrepancies.push_back(
        angle_distance(best->geometric_phase, *rep.omega_from_q_fundamental));
  if (!discrepancies.empty())
    rep.max_pairwise_discrepancy_mod2pi =
        *std::max_element(discrepancies.begin(), discrepancies.end());
  return rep;
}

std::string report_to_json(const PhaseReport& report, const JobSpec& job) {
  json j;
  j["group"] = job.group;
  j["irrep"] = job.irrep;
  j["omega_formula"] = report.omega_formula ? json(*report.omega_formula) : json(nullptr);
  j["omega_mod2pi"] = report.omega_mod2pi ? json(*report.omega_mod2pi) : json(nullptr);
  if (report.q_vector) {
    json q = json::array();
    for (int i = 0; i < report.q_vector->size(); ++i) q.push_back((*report.q_vector)(i));
    j["q_vector"] = std::move(q);
  } else {
    j["q_vector"] = nullptr;
  }
  j["omega_from_q"] = report.omega_from_q ? json(*report.omega_from_q) : json(nullptr);
  j["omega_formula_fundamental"] = report.omega_formula_fundamental
                                       ? json(*report.omega_formula_fundamental)
                                       : json(nullptr);
  j["omega_from_q_fundamental"] = report.omega_from_q_fundamental
                                      ? json(*report.omega_from_q_fundamental)
                                      : json(nullptr);
  json entries = json::array();
  for (const auto& e : report.ode_entries) {
    entries.push_back({{"tau", e.tau},
                       {"geometric_phase", e.geometric_phase},
                       {"overlap_mag", e.overlap_mag},
                       {"valid", e.valid},
                       {"note", e.note}});
  }
  j["ode_entries"] = std::move(entries);
  j["max_pairwise_discrepancy_mod2pi"] =
      report.max_pairwise_discrepancy_mod2pi ? json(*report.max_pairwise_discrepancy_mod2pi)
                                             : json(nullptr);
  json errs;
  for (const char* key : {"formula", "q_vector", "ode"}) {
    auto it = report.errors.find(key);
    errs[key] = it == report.errors.end() ? json(nullptr) : json(it->second);
  }
  j["errors"] = std::move(errs);
  return j.dump(2);
}

std::string report_to_csv(const PhaseReport& report, const JobSpec& job) {
  std::ostringstream out;
  out << "key,value\n";
  out << "group," << job.group << "\n";
  auto emit = [&](const std::string& key, const std::optional<double>& value) {
    out << key << "," << (value ? format_double(*value) : "") << "\n";
  };
  emit("omega_formula", report.omega_formula);
  emit("omega_mod2pi", report.omega_mod2pi);
  if (report.q_vector)
    for (int i = 0; i < report.q_vector->size(); ++i)
      out << "q_vector_" << i + 1 << "," << format_double((*report.q_vector)(i)) << "\n";
  emit("omega_from_q", report.omega_from_q);
  emit("omega_formula_fundamental", report.omega_formula_fundamental);
  emit("omega_from_q_fundamental", report.omega_from_q_fundamental);
  for (const auto& e : report.ode_entries) {
    out << "ode_tau," << format_double(e.tau) << "\n";
    out << "ode_geometric_phase," << format_double(e.geometric_phase) << "\n";
    out << "ode_overlap_mag," << format_double(e.overlap_mag) << "\n";
    out << "ode_valid," << (e.valid ? 1 : 0) << "\n";
  }
  emit("max_pairwise_discrepancy_mod2pi", report.max_pairwise_discrepancy_mod2pi);
  return out.str();
}

std::string emit_curvature_grid(const JobSpec& job) {
  if (!job.grid) throw ValidationError("emit_curvature_grid: job has no grid specification");
  CosetChart chart = CosetChart::su(job.n);
  RealVector weight = dominant_weight(IrrepLabel(job.irrep), chart.basis());
  const int n_pos = chart.n_pos();
  const GridSpec& grid = *job.grid;
  const int coord = coordinate_index(grid.coordinate, n_pos, "grid");

  ComplexVector base = ComplexVector::Zero(n_pos);
  for (const auto& [name, value] : grid.fixed)
    base(coordinate_index(name, n_pos, "grid.fixed")) = value;

  std::ostringstream out;
  out << "re,im";
  for (int a = 0; a < n_pos; ++a)
    for (int b = a; b < n_pos; ++b)
      out << ",F" << a + 1 << b + 1 << "_re,F" << a + 1 << b + 1 << "_im";
  out << ",in_chart\n";

  const int samples = grid.samples;
  for (int iy = 0; iy < samples; ++iy) {
    double y = samples == 1 ? 0.0 : -grid.extent + 2.0 * grid.extent * iy / (samples - 1);
    for (int ix = 0; ix < samples; ++ix) {
      double x = samples == 1 ? 0.0 : -grid.extent + 2.0 * grid.extent * ix / (samples - 1);
      ComplexVector z = base;
      z(coord) = Complex(x, y);
      out << format_double(x) << "," << format_double(y);
      try {
        Matrix f = curvature(z, chart, weight).F;
        for (int a = 0; a < n_pos; ++a)
          for (int b = a; b < n_pos; ++b)
            out << "," << format_double(f(a, b).real()) << ","
                << format_double(f(a, b).imag());
        out << ",1\n";
      } catch (const std::exception&) {
        for (int a = 0; a < n_pos; ++a)
          for (int b = a; b < n_pos; ++b) out << ",0,0";
        out << ",0\n";
      }
    }
  }
  return out.str();
}

std::string decompose_along_curve(const JobSpec& job, int samples) {
  if (samples < 1) throw ValidationError("decompose_along_curve: samples must be >= 1");
  CosetChart chart = CosetChart::su(job.n);
  json list = json::array();
  for (int k = 0; k < samples; ++k) {
    double s = static_cast<double>(k) / samples;
    ComplexVector z = job.curve.point(s);
    json entry;
    entry["s"] = s;
    json zc = json::array();
    for (int a = 0; a < z.size(); ++a) zc.push_back({z(a).real(), z(a).imag()});
    entry["z"] = std::move(zc);
    try {
      Matrix g1 = chart.representative(z);
      MackeyFactors f = mackey_decompose(g1, chart.basis());
      entry["u"] = matrix_to_json(f.u);
      entry["v_dag"] = matrix_to_json(f.v_dag);
      entry["k"] = matrix_to_json(f.k);
      json kap = json::array();
      for (int j = 0; j < f.kappa.size(); ++j) kap.push_back(f.kappa(j));
      entry["kappa"] = std::move(kap);
    } catch (const std::exception& e) {
      entry["error"] = e.what();
    }
    list.push_back(std::move(entry));
  }
  return list.dump(2);
}

}  // namespace liephase
