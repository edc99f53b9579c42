#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "liephase/coset_geometry.hpp"
#include "liephase/quadrature.hpp"
#include "liephase/types.hpp"

namespace liephase {

// Closed parametric curve s in [0,1] -> z(s) on the chart, one finite Fourier
// series per complex coordinate, z^a(s) = sum_m c^a_m exp(2 pi i m s).
// Closure z(0) = z(1) holds by construction and the derivative is analytic.
class ClosedCurve {
 public:
  // (m, c_m) pairs per coordinate
  using Coefficients = std::vector<std::pair<int, Complex>>;

  explicit ClosedCurve(int n_coords) : coeffs_(n_coords) {}

  void set_coefficient(int coord, int m, Complex c);
  ComplexVector point(double s) const;
  ComplexVector velocity(double s) const;
  int n_coords() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Coefficients>& coefficients() const { return coeffs_; }
  bool is_constant() const;

  // traversal with the opposite orientation, s -> 1 - s
  ClosedCurve reversed() const;

  // circle of given radius about a center in one coordinate plane
  static ClosedCurve circle(int n_coords, int coord, double radius, Complex center = 0.0);

  // every sampled point admits the chart factorization
  void validate_on_chart(const CosetChart& chart, int samples = 64) const;

 private:
  std::vector<Coefficients> coeffs_;
};

struct ConnectionSample {
  double A_s = 0.0;            // l . A, real
  ComplexVector A_hol;         // A_a  =  i d_a (l . kappa)
  ComplexVector A_antihol;     // A_ab = -i d_ab (l . kappa)
};

struct CurvatureSample {
  Matrix F;       // F_ab = d^2 K^(l) / dz^a dzbar^b, hermitian
  double K_l = 0.0;
};

// K^(l)(z) = 2 (l . kappa(z)) for a root-space weight vector l.
double k_l_potential(const ComplexVector& z, const CosetChart& chart, const RealVector& weight);

// Berry connection sample at (z, zdot).
ConnectionSample connection(const ComplexVector& z, const ComplexVector& zdot,
                            const CosetChart& chart, const RealVector& weight);

// Mixed second derivatives of K^(l).
CurvatureSample curvature(const ComplexVector& z, const CosetChart& chart,
                          const RealVector& weight);

// Omega = integral_0^1 A_s ds along the curve.
double phase_line_integral(const ClosedCurve& curve, const CosetChart& chart,
                           const RealVector& weight, const QuadratureOptions& opts = {});

// Flux of the curvature two-form through the full coordinate plane of one
// complex coordinate with the others fixed; for su(2) this is the total
// curvature of the sphere, -2 pi l.
double curvature_plane_flux(const CosetChart& chart, const RealVector& weight, int coord,
                            const ComplexVector& fixed, int radial_nodes = 64,
                            int angular_nodes = 32);

struct GaugeCheckReport {
  double holomorphic_residual = 0.0;  // max |d_a d_bbar (K^j(gz) - K^j(z))|
  double curvature_residual = 0.0;    // max |(J^T F(gz) conj(J) - F(z))_ab|
  bool chart_exit = false;
};

// Verifies the gauge transformation law of the potentials under z -> gz and
// the invariance of the curvature.  A transformed point outside the chart is
// reported, not thrown.
GaugeCheckReport gauge_check(const Matrix& g, const ComplexVector& z, const CosetChart& chart,
                             const RealVector& weight);

// --- numeric Wirtinger derivatives (central differences) ---

using ScalarField = std::function<Complex(const ComplexVector&)>;

struct WirtingerDerivatives {
  ComplexVector holomorphic;      // d_a f
  ComplexVector antiholomorphic;  // d_abar f
  Matrix mixed;                   // d_a d_bbar f (order 2 only)
};

// order 1: gradients; order 2: gradients plus the mixed hessian.
WirtingerDerivatives wirtinger_derivatives(const ScalarField& f, const ComplexVector& z,
                                           int order, double step = 0.0);

}  // namespace liephase
