#include "liephase/berry_phase.hpp"

#include <cmath>

namespace liephase {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

void ClosedCurve::set_coefficient(int coord, int m, Complex c) {
  if (coord < 0 || coord >= n_coords())
    throw ValidationError("ClosedCurve: coordinate index out of range");
  for (auto& entry : coeffs_[coord]) {
    if (entry.first == m) {
      entry.second = c;
      return;
    }
  }
  coeffs_[coord].emplace_back(m, c);
}

ComplexVector ClosedCurve::point(double s) const {
  ComplexVector z = ComplexVector::Zero(n_coords());
  for (int a = 0; a < n_coords(); ++a)
    for (const auto& [m, c] : coeffs_[a])
      z(a) += c * std::exp(Complex(0.0, kTwoPi * m * s));
  return z;
}

ComplexVector ClosedCurve::velocity(double s) const {
  ComplexVector v = ComplexVector::Zero(n_coords());
  for (int a = 0; a < n_coords(); ++a)
    for (const auto& [m, c] : coeffs_[a])
      v(a) += c * Complex(0.0, kTwoPi * m) * std::exp(Complex(0.0, kTwoPi * m * s));
  return v;
}

bool ClosedCurve::is_constant() const {
  for (const auto& series : coeffs_)
    for (const auto& [m, c] : series)
      if (m != 0 && std::abs(c) > 0.0) return false;
  return true;
}

ClosedCurve ClosedCurve::reversed() const {
  // z(1-s): coefficient of mode m becomes the old coefficient of mode -m
  ClosedCurve rev(n_coords());
  for (int a = 0; a < n_coords(); ++a)
    for (const auto& [m, c] : coeffs_[a]) rev.set_coefficient(a, -m, c);
  return rev;
}

ClosedCurve ClosedCurve::circle(int n_coords, int coord, double radius, Complex center) {
  ClosedCurve curve(n_coords);
  curve.set_coefficient(coord, 1, radius);
  if (center != 0.0) curve.set_coefficient(coord, 0, center);
  return curve;
}

void ClosedCurve::validate_on_chart(const CosetChart& chart, int samples) const {
  if (n_coords() != chart.n_pos())
    throw ValidationError("ClosedCurve: coordinate count != chart dimension");
  for (int k = 0; k < samples; ++k) {
    double s = static_cast<double>(k) / samples;
    ComplexVector z = point(s);
    if (!z.allFinite()) throw ChartError("curve sample has non-finite coordinates");
    chart.potentials(z);        // throws ChartError off the chart
    chart.representative(z);    // factorization must exist as well
  }
}

double k_l_potential(const ComplexVector& z, const CosetChart& chart, const RealVector& weight) {
  if (weight.size() != chart.rank())
    throw ValidationError("k_l_potential: weight dimension != rank");
  return 2.0 * weight.dot(chart.potentials(z).kappa);
}

ConnectionSample connection(const ComplexVector& z, const ComplexVector& zdot,
                            const CosetChart& chart, const RealVector& weight) {
  if (weight.size() != chart.rank())
    throw ValidationError("connection: weight dimension != rank");
  if (zdot.size() != chart.n_pos())
    throw ValidationError("connection: velocity dimension != chart dimension");
  // d_a (l . kappa) = sum_j (l^T C)_j d_a K^j
  RealVector lc = chart.kappa_coefficients().transpose() * weight;
  Eigen::MatrixXcd grad = chart.potential_gradient(z);
  const int np = chart.n_pos();

  ConnectionSample out;
  out.A_hol = ComplexVector(np);
  out.A_antihol = ComplexVector(np);
  Complex a_s = 0.0;
  for (int a = 0; a < np; ++a) {
    Complex d = 0.0;
    for (int j = 0; j < chart.rank(); ++j) d += lc(j) * grad(j, a);
    out.A_hol(a) = Complex(0.0, 1.0) * d;
    out.A_antihol(a) = Complex(0.0, -1.0) * std::conj(d);
    a_s += zdot(a) * out.A_hol(a) + std::conj(zdot(a)) * out.A_antihol(a);
  }
  out.A_s = a_s.real();
  return out;
}

CurvatureSample curvature(const ComplexVector& z, const CosetChart& chart,
                          const RealVector& weight) {
  if (weight.size() != chart.rank())
    throw ValidationError("curvature: weight dimension != rank");
  RealVector c = 2.0 * (chart.kappa_coefficients().transpose() * weight);
  std::vector<Matrix> mixed = chart.potential_mixed(z);
  CurvatureSample out;
  out.F = Matrix::Zero(chart.n_pos(), chart.n_pos());
  for (int j = 0; j < chart.rank(); ++j) out.F += c(j) * mixed[j];
  out.K_l = k_l_potential(z, chart, weight);
  return out;
}

double phase_line_integral(const ClosedCurve& curve, const CosetChart& chart,
                           const RealVector& weight, const QuadratureOptions& opts) {
  if (curve.n_coords() != chart.n_pos())
    throw ValidationError("phase_line_integral: curve dimension != chart dimension");
  auto integrand = [&](double s) {
    return connection(curve.point(s), curve.velocity(s), chart, weight).A_s;
  };
  return integrate(integrand, 0.0, 1.0, opts);
}

double curvature_plane_flux(const CosetChart& chart, const RealVector& weight, int coord,
                            const ComplexVector& fixed, int radial_nodes, int angular_nodes) {
  if (coord < 0 || coord >= chart.n_pos())
    throw ValidationError("curvature_plane_flux: coordinate index out of range");
  // Omega = -2 int F_aa dx dy, radial direction mapped to [0,1) by r = t/(1-t)
  QuadratureOptions ropts;
  ropts.tol = 1e-9;
  ropts.nodes_per_panel = radial_nodes;

  double total = 0.0;
  for (int m = 0; m < angular_nodes; ++m) {
    double theta = kTwoPi * m / angular_nodes;
    Complex dir = std::exp(Complex(0.0, theta));
    auto radial = [&](double t) {
      double r = t / (1.0 - t);
      double jac = r / ((1.0 - t) * (1.0 - t));
      ComplexVector z = fixed;
      z(coord) += r * dir;
      return curvature(z, chart, weight).F(coord, coord).real() * jac;
    };
    total += integrate(radial, 0.0, 1.0, ropts) * (kTwoPi / angular_nodes);
  }
  return -2.0 * total;
}

WirtingerDerivatives wirtinger_derivatives(const ScalarField& f, const ComplexVector& z,
                                           int order, double step) {
  if (order != 1 && order != 2)
    throw ValidationError("wirtinger_derivatives: order must be 1 or 2");
  const int np = static_cast<int>(z.size());
  const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
  const double eps = std::numeric_limits<double>::epsilon();
  const double h = step > 0.0 ? step
                              : (order == 1 ? std::cbrt(eps) : std::pow(eps, 0.25)) * scale;

  auto shifted = [&](int a, Complex da, int b, Complex db) {
    ComplexVector w = z;
    w(a) += da;
    if (b >= 0) w(b) += db;
    return f(w);
  };

  WirtingerDerivatives out;
  out.holomorphic = ComplexVector(np);
  out.antiholomorphic = ComplexVector(np);
  for (int a = 0; a < np; ++a) {
    Complex fx = (shifted(a, h, -1, 0) - shifted(a, -h, -1, 0)) / (2.0 * h);
    Complex fy = (shifted(a, Complex(0, h), -1, 0) - shifted(a, Complex(0, -h), -1, 0)) /
                 (2.0 * h);
    out.holomorphic(a) = 0.5 * (fx - Complex(0, 1) * fy);
    out.antiholomorphic(a) = 0.5 * (fx + Complex(0, 1) * fy);
  }
  if (order == 1) return out;

  const Complex f0 = f(z);
  // second partial in directions (a, da), (b, db); pure when a==b and da==db
  auto second = [&](int a, Complex da, int b, Complex db) {
    if (a == b && da == db)
      return (shifted(a, da, -1, 0) - 2.0 * f0 + shifted(a, -da, -1, 0)) / (h * h);
    return (shifted(a, da, b, db) - shifted(a, da, b, -db) - shifted(a, -da, b, db) +
            shifted(a, -da, b, -db)) /
           (4.0 * h * h);
  };

  out.mixed = Matrix(np, np);
  const Complex hx(h, 0.0), hy(0.0, h);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      Complex xx = second(a, hx, b, hx);
      Complex yy = second(a, hy, b, hy);
      Complex xy = second(a, hx, b, hy);
      Complex yx = second(a, hy, b, hx);
      out.mixed(a, b) = 0.25 * ((xx + yy) + Complex(0, 1) * (xy - yx));
    }
  return out;
}

GaugeCheckReport gauge_check(const Matrix& g, const ComplexVector& z, const CosetChart& chart,
                             const RealVector& weight) {
  GaugeCheckReport report;
  ComplexVector gz;
  try {
    gz = chart.act(g, z);
  } catch (const ChartError&) {
    report.chart_exit = true;
    return report;
  }

  // K^j(gz) - K^j(z) must be of the form Phi + conj(Phi) with Phi holomorphic,
  // so its mixed Wirtinger derivatives vanish.
  for (int j = 0; j < chart.rank(); ++j) {
    ScalarField diff = [&, j](const ComplexVector& w) -> Complex {
      return chart.potentials(chart.act(g, w)).K(j) - chart.potentials(w).K(j);
    };
    WirtingerDerivatives d;
    try {
      d = wirtinger_derivatives(diff, z, 2);
    } catch (const ChartError&) {
      report.chart_exit = true;
      return report;
    }
    report.holomorphic_residual =
        std::max(report.holomorphic_residual, d.mixed.cwiseAbs().maxCoeff());
  }

  // pullback of the curvature under the holomorphic map w -> gw
  const int np = chart.n_pos();
  const double h = 1e-6 * std::max(1.0, z.cwiseAbs().maxCoeff());
  Matrix jac(np, np);
  try {
    for (int a = 0; a < np; ++a) {
      ComplexVector zp = z, zm = z;
      zp(a) += h;
      zm(a) -= h;
      ComplexVector col = (chart.act(g, zp) - chart.act(g, zm)) / (2.0 * h);
      jac.col(a) = col;
    }
  } catch (const ChartError&) {
    report.chart_exit = true;
    return report;
  }
  Matrix f_here = curvature(z, chart, weight).F;
  Matrix f_there = curvature(gz, chart, weight).F;
  Matrix pulled = jac.transpose() * f_there * jac.conjugate();
  report.curvature_residual = (pulled - f_here).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace liephase
