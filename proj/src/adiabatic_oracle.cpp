#include "liephase/adiabatic_oracle.hpp"

#include <cmath>
#include <sstream>

namespace liephase {

Matrix cartan_element(const RealVector& beta, const CartanWeylBasis& basis) {
  if (beta.size() != basis.rank)
    throw ValidationError("cartan_element: beta dimension != rank");
  Matrix b = Matrix::Zero(basis.n, basis.n);
  for (int j = 0; j < basis.rank; ++j) b += Complex(beta(j), 0.0) * basis.cartan[j];
  return b;
}

RealVector default_beta(const CartanWeylBasis& basis) {
  const int n = basis.n;
  RealVector diag(n);
  if (n == 2) {
    diag << 1.0, -1.0;
  } else {
    for (int i = 0; i < n; ++i) diag(i) = 0.5 * (n - 1) - i;
  }
  // beta^j = Tr(h_j beta_hat), the h_j diagonals being orthonormal
  RealVector beta(basis.rank);
  for (int j = 0; j < basis.rank; ++j) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += basis.cartan[j](i, i).real() * diag(i);
    beta(j) = c;
  }
  return beta;
}

Matrix hamiltonian_at(const HamiltonianPath& path, const CosetChart& chart, double s) {
  Matrix g1 = chart.representative(path.curve.point(s));
  Matrix beta_hat = cartan_element(path.beta, chart.basis());
  return g1 * beta_hat * g1.adjoint();
}

RealVector q_vector_direct_of(const std::function<Matrix(double)>& g_of_s,
                              const CartanWeylBasis& basis, const QuadratureOptions& opts,
                              double ds) {
  const int r = basis.rank;
  double worst_imag = 0.0;
  auto integrand = [&](double s) {
    Matrix gp = g_of_s(s + ds);
    Matrix gm = g_of_s(s - ds);
    Matrix g = g_of_s(s);
    Matrix dg = (gp - gm) / (2.0 * ds);
    Matrix w = g.adjoint() * dg;  // g1^{-1} dg1/ds for unitary g1
    RealVector row(r);
    for (int j = 0; j < r; ++j) {
      Complex t = Complex(0.0, -1.0) * (w * basis.cartan[j]).trace();
      worst_imag = std::max(worst_imag, std::abs(t.imag()));
      row(j) = t.real();
    }
    return row;
  };
  RealVector q = integrate_vector(integrand, 0.0, 1.0, r, opts);
  if (worst_imag > 1e-7)
    throw NonConvergence("q_vector_direct: trace integrand has a non-real part");
  return q;
}

RealVector q_vector_direct(const ClosedCurve& curve, const CosetChart& chart,
                           const QuadratureOptions& opts, double ds) {
  if (curve.n_coords() != chart.n_pos())
    throw ValidationError("q_vector_direct: curve dimension != chart dimension");
  auto g_of_s = [&](double s) { return chart.representative(curve.point(s)); };
  return q_vector_direct_of(g_of_s, chart.basis(), opts, ds);
}

int dominant_eigenvector_index(const CartanWeylBasis& basis) {
  RealVector weight = dominant_weight(fundamental_label(basis), basis);
  int idx = weight_eigenvector_index(basis, weight);
  if (idx < 0)
    throw ValidationError("dominant_eigenvector_index: no basis vector carries the weight");
  return idx;
}

EvolutionResult evolve(const HamiltonianPath& path, const CosetChart& chart, double tau,
                       int init_index, const EvolveOptions& opts) {
  if (tau <= 0.0) throw ValidationError("evolve: tau must be positive");
  const CartanWeylBasis& basis = chart.basis();
  const int n = basis.n;
  if (init_index < 0 || init_index >= n)
    throw ValidationError("evolve: eigenvector index out of range");

  const Matrix beta_hat = cartan_element(path.beta, basis);
  const double level = beta_hat(init_index, init_index).real();
  double max_eig = 0.0;
  for (int i = 0; i < n; ++i) {
    max_eig = std::max(max_eig, std::abs(beta_hat(i, i).real()));
    if (i != init_index && std::abs(beta_hat(i, i).real() - level) < opts.min_gap)
      throw ValidationError("evolve: spectral gap around the tracked level is too small");
  }

  const long steps = std::max<long>(
      opts.min_steps, static_cast<long>(std::ceil(opts.steps_per_tau * tau * std::max(1.0, max_eig))));
  const double h = 1.0 / static_cast<double>(steps);
  const Complex minus_i_tau(0.0, -tau);

  auto rep = [&](double s) { return chart.representative(path.curve.point(s)); };

  Matrix g_end = rep(0.0);
  Matrix b0 = g_end * beta_hat * g_end.adjoint();
  ComplexVector psi = g_end.col(init_index);  // instantaneous eigenstate at s = 0
  const ComplexVector psi0 = psi;

  double unwrapped = 0.0;  // arg<chi(s)|psi(s)> tracked continuously
  double prev_arg = 0.0;   // overlap is real positive at s = 0
  double max_drift = 0.0;

  ComplexVector k1(n), k2(n), k3(n), k4(n), tmp(n);
  Matrix bm(n, n), b1(n, n);
  for (long step = 0; step < steps; ++step) {
    const double s = step * h;
    Matrix g_mid = rep(s + 0.5 * h);
    bm.noalias() = g_mid * beta_hat * g_mid.adjoint();
    g_end = rep(s + h);
    b1.noalias() = g_end * beta_hat * g_end.adjoint();

    k1.noalias() = minus_i_tau * (b0 * psi);
    tmp = psi + (0.5 * h) * k1;
    k2.noalias() = minus_i_tau * (bm * tmp);
    tmp = psi + (0.5 * h) * k2;
    k3.noalias() = minus_i_tau * (bm * tmp);
    tmp = psi + h * k3;
    k4.noalias() = minus_i_tau * (b1 * tmp);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double norm = psi.norm();
    max_drift = std::max(max_drift, std::abs(norm - 1.0));
    psi /= norm;
    b0.swap(b1);

    const Complex overlap = g_end.col(init_index).dot(psi);
    const double arg = std::arg(overlap);
    unwrapped += wrap_angle(arg - prev_arg);
    prev_arg = arg;
  }

  EvolutionResult out;
  out.tau = tau;
  out.final_overlap_mag = std::abs(psi0.dot(psi));
  out.total_phase = -unwrapped;
  out.dynamical_phase = tau * level;  // tau (l . beta) for the tracked weight
  out.geometric_phase = wrap_angle(out.total_phase - out.dynamical_phase);
  out.max_norm_drift = max_drift;
  out.adiabatic_valid = out.final_overlap_mag >= 1.0 - opts.eps_adb;
  if (!out.adiabatic_valid) {
    std::ostringstream msg;
    msg << "evolve: adiabaticity lost at tau = " << tau
        << " (final overlap " << out.final_overlap_mag << ")";
    throw AdiabaticityLost(msg.str(), out.final_overlap_mag, out.geometric_phase);
  }
  return out;
}

TauSweepTable tau_sweep(const HamiltonianPath& path, const CosetChart& chart,
                        const std::vector<double>& taus, double reference_omega,
                        int init_index, const EvolveOptions& opts) {
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (taus[i] <= taus[i - 1])
      throw ValidationError("tau_sweep: taus must be strictly ascending");
  TauSweepTable table;
  for (double tau : taus) {
    TauSweepRow row;
    row.tau = tau;
    try {
      EvolutionResult r = evolve(path, chart, tau, init_index, opts);
      row.geometric_phase = r.geometric_phase;
      row.overlap_mag = r.final_overlap_mag;
      row.valid = true;
      row.error_vs_reference = angle_distance(r.geometric_phase, reference_omega);
    } catch (const AdiabaticityLost& e) {
      row.geometric_phase = e.geometric_phase;
      row.overlap_mag = e.final_overlap_mag;
      row.valid = false;
      row.error_vs_reference = angle_distance(e.geometric_phase, reference_omega);
      row.note = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double TauSweepTable::slope_last_decade() const {
  double tau_max = 0.0;
  for (const auto& row : rows)
    if (row.valid) tau_max = std::max(tau_max, row.tau);
  if (tau_max <= 0.0) return std::numeric_limits<double>::quiet_NaN();

  // least-squares fit of log(error) against log(tau) over the last decade
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows) {
    if (!row.valid || row.tau < tau_max / 10.0 - 1e-12) continue;
    if (row.error_vs_reference <= 0.0) continue;
    pts.emplace_back(std::log(row.tau), std::log(row.error_vs_reference));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = pts.size();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace liephase
