// Acceptance suite: every criterion below is exercised at its stated
// tolerance and reported as a single pass/fail line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "liephase/adiabatic_oracle.hpp"
#include "liephase/berry_phase.hpp"
#include "liephase/coset_geometry.hpp"
#include "test_helpers.hpp"

using namespace liephase;
using liephase::testing::random_chart_point;
using liephase::testing::random_group_element;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RealVector weight_of(const CosetChart& chart, std::vector<int> label) {
  return dominant_weight(IrrepLabel(std::move(label)), chart.basis());
}

// ---- criterion 1: su(2) latitude circles -------------------------------

bool latitude_circles(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  CosetChart chart = CosetChart::su(2);
  double worst = 0.0;
  for (double theta0 : {M_PI / 6.0, M_PI / 2.0, 2.0 * M_PI / 3.0}) {
    double r = 1.0 / std::tan(theta0 / 2.0);
    ClosedCurve circle = ClosedCurve::circle(1, 0, r);
    for (int l : {1, 2, 3}) {
      double omega = phase_line_integral(circle, chart, weight_of(chart, {l}));
      double berry = M_PI * l * (1.0 - std::cos(theta0));
      worst = std::max(worst, angle_distance(omega, berry));
    }
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max mod-2pi error %.3e (tol 1e-8), %.3f s (limit 1 s)",
                worst, dt);
  detail = buf;
  return worst <= 1e-8 && dt < 1.0;
}

// ---- criterion 2: su(2) total curvature flux ----------------------------

bool total_flux(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  CosetChart chart = CosetChart::su(2);
  double worst = 0.0;
  for (int l : {1, 2}) {
    double flux = curvature_plane_flux(chart, weight_of(chart, {l}), 0, ComplexVector::Zero(1));
    worst = std::max(worst, std::abs(std::abs(flux) - 2.0 * M_PI * l));
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max |flux| error %.3e (tol 1e-4), %.3f s", worst, dt);
  detail = buf;
  return worst <= 1e-4;
}

// ---- criterion 3: su(3) kappa coefficient regression --------------------

bool kappa_coefficients(std::string& detail) {
  CosetChart chart = CosetChart::su(3);
  const RealMatrix& c = chart.kappa_coefficients();
  double worst = std::abs(c(0, 0) - std::sqrt(6.0) / 4.0);
  worst = std::max(worst, std::abs(c(0, 1)));
  worst = std::max(worst, std::abs(c(1, 1) - 1.0 / std::sqrt(2.0)));
  worst = std::max(worst, std::abs(c(1, 0) + 1.0 / (2.0 * std::sqrt(2.0))));
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max coefficient error %.3e (tol 1e-12)", worst);
  detail = buf;
  return worst <= 1e-12;
}

// ---- criterion 4: su(3) fundamental potentials --------------------------

bool su3_potentials(std::string& detail) {
  CosetChart chart = CosetChart::su(3);
  std::mt19937 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    ComplexVector z = random_chart_point(rng, 3, 1.5);
    Complex zm = z(2) - 0.5 * z(0) * z(1);
    Complex zp = z(2) + 0.5 * z(0) * z(1);
    RealVector k = chart.potentials(z).K;
    worst = std::max(worst, std::abs(k(0) - std::log(1.0 + std::norm(z(0)) + std::norm(zm))));
    worst = std::max(worst, std::abs(k(1) - std::log(1.0 + std::norm(z(1)) + std::norm(zp))));
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max potential error %.3e at 200 points (tol 1e-10)", worst);
  detail = buf;
  return worst <= 1e-10;
}

// ---- criterion 5: oracle triangle ---------------------------------------

std::vector<ClosedCurve> su2_test_curves() {
  std::vector<ClosedCurve> curves;
  curves.push_back(ClosedCurve::circle(1, 0, 1.0));
  curves.push_back(ClosedCurve::circle(1, 0, 0.6));
  curves.push_back(ClosedCurve::circle(1, 0, 2.2));
  ClosedCurve two_modes(1);
  two_modes.set_coefficient(0, 1, Complex(0.8, 0.0));
  two_modes.set_coefficient(0, -1, Complex(0.0, 0.25));
  curves.push_back(two_modes);
  curves.push_back(ClosedCurve::circle(1, 0, 0.7, Complex(0.5, 0.0)));
  return curves;
}

std::vector<ClosedCurve> su3_test_curves() {
  std::vector<ClosedCurve> curves;
  curves.push_back(ClosedCurve::circle(3, 0, 1.0));
  curves.push_back(ClosedCurve::circle(3, 2, 0.9));
  ClosedCurve c3(3);
  c3.set_coefficient(0, 1, Complex(0.8, 0.0));
  c3.set_coefficient(1, 0, Complex(0.3, 0.0));
  c3.set_coefficient(1, 1, Complex(0.2, 0.0));
  curves.push_back(c3);
  ClosedCurve c4(3);
  c4.set_coefficient(0, 1, Complex(0.6, 0.0));
  c4.set_coefficient(0, -1, Complex(0.2, 0.0));
  c4.set_coefficient(2, 1, Complex(0.0, 0.3));
  curves.push_back(c4);
  ClosedCurve c5(3);
  c5.set_coefficient(0, 0, Complex(0.5, 0.0));
  c5.set_coefficient(0, 1, Complex(0.5, 0.0));
  c5.set_coefficient(1, -1, Complex(0.4, 0.0));
  c5.set_coefficient(2, 0, Complex(0.1, 0.0));
  curves.push_back(c5);
  return curves;
}

bool oracle_triangle_for(int n, const std::vector<ClosedCurve>& curves,
                         const std::vector<std::vector<int>>& labels, std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  CosetChart chart = CosetChart::su(n);
  RealVector fund = dominant_weight(fundamental_label(chart.basis()), chart.basis());
  int idx = dominant_eigenvector_index(chart.basis());
  const std::vector<double> taus{1e2, 316.23, 1e3, 3162.3, 1e4};

  double worst_q = 0.0, worst_ode = 0.0;
  double slope_min = 1.0, slope_max = -10.0;
  for (const ClosedCurve& curve : curves) {
    RealVector q = q_vector_direct(curve, chart);
    for (const auto& label : labels) {
      RealVector w = weight_of(chart, label);
      double omega = phase_line_integral(curve, chart, w);
      worst_q = std::max(worst_q, std::abs(omega - w.dot(q)));
    }
    double omega_fund = phase_line_integral(curve, chart, fund);
    HamiltonianPath path{curve, default_beta(chart.basis())};
    TauSweepTable table = tau_sweep(path, chart, taus, omega_fund, idx);
    for (const auto& row : table.rows)
      if (row.valid && row.tau == 1e4) worst_ode = std::max(worst_ode, row.error_vs_reference);
    double slope = table.slope_last_decade();
    slope_min = std::min(slope_min, slope);
    slope_max = std::max(slope_max, slope);
  }
  double dt = seconds_since(t0);
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "su(%d): |formula - l.Q| %.3e (tol 1e-7), |formula - ODE| %.3e (tol 5e-3), "
                "slopes in [%.2f, %.2f] (required [-1.3, -0.7]), %.1f s (limit 120 s)",
                n, worst_q, worst_ode, slope_min, slope_max, dt);
  detail = buf;
  return worst_q <= 1e-7 && worst_ode <= 5e-3 && slope_min >= -1.3 && slope_max <= -0.7 &&
         dt < 120.0;
}

bool oracle_triangle_su2(std::string& detail) {
  return oracle_triangle_for(2, su2_test_curves(), {{1}, {2}, {3}}, detail);
}

bool oracle_triangle_su3(std::string& detail) {
  return oracle_triangle_for(3, su3_test_curves(), {{0, 1}, {1, 0}, {1, 2}}, detail);
}

// ---- criterion 6: Mackey roundtrip --------------------------------------

bool mackey_roundtrip(std::string& detail) {
  double worst_kappa = 0.0, worst_g = 0.0;
  for (int n : {2, 3}) {
    CosetChart chart = CosetChart::su(n);
    std::mt19937 rng(300 + n);
    for (int trial = 0; trial < 100; ++trial) {
      ComplexVector z = random_chart_point(rng, chart.n_pos(), 1.3);
      Matrix g1 = chart.representative(z);
      MackeyFactors f = mackey_decompose(g1, chart.basis());
      worst_kappa =
          std::max(worst_kappa, (f.kappa - chart.kappa(z)).cwiseAbs().maxCoeff());
      worst_g = std::max(worst_g, (f.u * f.v_dag * f.k - g1).cwiseAbs().maxCoeff());
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "kappa mismatch %.3e (tol 1e-9), reconstruction %.3e (tol 1e-10)", worst_kappa,
                worst_g);
  detail = buf;
  return worst_kappa <= 1e-9 && worst_g <= 1e-10;
}

// ---- criterion 7: trace identities for the representative ---------------

bool proof_identities(std::string& detail) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    CosetChart chart = CosetChart::su(n);
    const CartanWeylBasis& basis = chart.basis();
    std::mt19937 rng(400 + n);
    for (int trial = 0; trial < 100; ++trial) {
      ComplexVector z = random_chart_point(rng, chart.n_pos(), 1.1);
      Eigen::MatrixXcd dkappa = chart.kappa_coefficients() * chart.potential_gradient(z);
      Matrix ginv = chart.representative(z).adjoint();
      const double h = 5e-6;
      for (int a = 0; a < chart.n_pos(); ++a) {
        ComplexVector zp = z, zm = z;
        zp(a) += h;
        zm(a) -= h;
        Matrix dx = (chart.representative(zp) - chart.representative(zm)) / (2.0 * h);
        zp = z;
        zm = z;
        zp(a) += Complex(0, h);
        zm(a) -= Complex(0, h);
        Matrix dy = (chart.representative(zp) - chart.representative(zm)) / (2.0 * h);
        Matrix dg_hol = 0.5 * (dx - Complex(0, 1) * dy);
        Matrix dg_anti = 0.5 * (dx + Complex(0, 1) * dy);
        for (int j = 0; j < chart.rank(); ++j) {
          Complex lhs_hol = (ginv * dg_hol * basis.cartan[j]).trace();
          Complex lhs_anti = (ginv * dg_anti * basis.cartan[j]).trace();
          worst = std::max(worst, std::abs(lhs_hol + dkappa(j, a)));
          worst = std::max(worst, std::abs(lhs_anti - std::conj(dkappa(j, a))));
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "max residual %.3e at 100 points per group (tol 1e-7)",
                worst);
  detail = buf;
  return worst <= 1e-7;
}

// ---- criterion 8: gauge invariance --------------------------------------

bool gauge_invariance(std::string& detail) {
  double worst_hol = 0.0, worst_curv = 0.0;
  int exits = 0;
  for (int n : {2, 3}) {
    CosetChart chart = CosetChart::su(n);
    RealVector w = dominant_weight(fundamental_label(chart.basis()), chart.basis());
    std::mt19937 rng(500 + n);
    int done = 0;
    while (done < 20) {
      Matrix g = random_group_element(rng, chart.basis(), 0.15);
      ComplexVector z = random_chart_point(rng, chart.n_pos(), 0.8);
      GaugeCheckReport r = gauge_check(g, z, chart, w);
      if (r.chart_exit) {
        ++exits;
        continue;
      }
      worst_hol = std::max(worst_hol, r.holomorphic_residual);
      worst_curv = std::max(worst_curv, r.curvature_residual);
      ++done;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "holomorphicity %.3e, curvature %.3e (tol 1e-7), %d chart exits retried",
                worst_hol, worst_curv, exits);
  detail = buf;
  return worst_hol <= 1e-7 && worst_curv <= 1e-7;
}

// ---- criterion 9: property suite ----------------------------------------

bool property_suite(std::string& detail) {
  std::mt19937 rng(600);

  // linearity of Omega in the weight
  CosetChart su3 = CosetChart::su(3);
  ClosedCurve curve(3);
  curve.set_coefficient(0, 1, Complex(0.9, 0.0));
  curve.set_coefficient(1, -1, Complex(0.2, 0.1));
  curve.set_coefficient(2, 0, Complex(0.1, 0.0));
  RealVector wa = weight_of(su3, {1, 0});
  RealVector wb = weight_of(su3, {0, 2});
  double lin = std::abs(phase_line_integral(curve, su3, RealVector(wa + wb)) -
                        phase_line_integral(curve, su3, wa) -
                        phase_line_integral(curve, su3, wb));

  // orientation reversal
  double rev = std::abs(phase_line_integral(curve.reversed(), su3, wa) +
                        phase_line_integral(curve, su3, wa));

  // small-loop Stokes consistency at h = 1e-2
  double stokes = 0.0;
  const double h = 1e-2;
  RealVector nodes, weights;
  gauss_legendre_rule(32, nodes, weights);
  for (int n : {2, 3}) {
    CosetChart chart = CosetChart::su(n);
    RealVector w = dominant_weight(fundamental_label(chart.basis()), chart.basis());
    for (int coord = 0; coord < chart.n_pos(); ++coord) {
      ComplexVector z0 = random_chart_point(rng, chart.n_pos(), 0.7);
      const Complex corners[4] = {Complex(h / 2, -h / 2), Complex(h / 2, h / 2),
                                  Complex(-h / 2, h / 2), Complex(-h / 2, -h / 2)};
      double loop = 0.0;
      for (int side = 0; side < 4; ++side) {
        Complex from = corners[side];
        Complex dz = corners[(side + 1) % 4] - from;
        for (int q = 0; q < nodes.size(); ++q) {
          double t = 0.5 * (nodes(q) + 1.0);
          ComplexVector z = z0;
          z(coord) += from + t * dz;
          ComplexVector zdot = ComplexVector::Zero(chart.n_pos());
          zdot(coord) = dz;
          loop += 0.5 * weights(q) * connection(z, zdot, chart, w).A_s;
        }
      }
      double flux = -2.0 * curvature(z0, chart, w).F(coord, coord).real() * h * h;
      stokes = std::max(stokes, std::abs(loop - flux));
    }
  }

  // norm preservation along a Schrodinger run
  CosetChart su2 = CosetChart::su(2);
  HamiltonianPath path{ClosedCurve::circle(1, 0, 1.0), default_beta(su2.basis())};
  EvolutionResult r = evolve(path, su2, 500.0, dominant_eigenvector_index(su2.basis()));
  double drift = r.max_norm_drift;

  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "linearity %.3e (1e-10), reversal %.3e (1e-10), Stokes %.3e (1e-5), "
                "norm drift %.3e (1e-9)",
                lin, rev, stokes, drift);
  detail = buf;
  return lin <= 1e-10 && rev <= 1e-10 && stokes <= 1e-5 && drift <= 1e-9;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"1 su(2) latitude circles vs pi l (1 - cos theta0)", latitude_circles},
      {"2 su(2) total curvature flux 2 pi l", total_flux},
      {"3 su(3) kappa coefficient regression", kappa_coefficients},
      {"4 su(3) fundamental potentials at 200 points", su3_potentials},
      {"5a oracle triangle su(2)", oracle_triangle_su2},
      {"5b oracle triangle su(3)", oracle_triangle_su3},
      {"6 Mackey roundtrip at 100 points per group", mackey_roundtrip},
      {"7 representative trace identities", proof_identities},
      {"8 gauge invariance for 20 group elements per group", gauge_invariance},
      {"9 property suite", property_suite},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %s: %s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
