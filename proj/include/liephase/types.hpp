#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace liephase {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Gauss/Mackey factorization does not exist at the requested point
// (a leading principal minor vanishes, or the torus factor is not positive).
struct SingularDecomposition : std::runtime_error {
  explicit SingularDecomposition(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitary : std::runtime_error {
  explicit NotUnitary(const std::string& what) : std::runtime_error(what) {}
};

// Point or curve left the origin-centered coordinate chart.
struct ChartError : std::runtime_error {
  explicit ChartError(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct AdiabaticityLost : std::runtime_error {
  explicit AdiabaticityLost(const std::string& what, double overlap, double geometric_phase)
      : std::runtime_error(what), final_overlap_mag(overlap), geometric_phase(geometric_phase) {}
  double final_overlap_mag;
  double geometric_phase;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(const Matrix& a) { return a.allFinite(); }

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Matrix& a, double tol = 1e-10) {
  Matrix g = a.adjoint() * a;
  g -= Matrix::Identity(a.rows(), a.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

inline bool is_diagonal(const Matrix& a, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && std::abs(a(i, j)) > tol) return false;
  return true;
}

// Reduce an angle to (-pi, pi].
inline double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * M_PI;
  double w = x - two_pi * std::ceil((x - M_PI) / two_pi);
  // guard against roundoff pushing the result just below -pi
  if (w <= -M_PI) w += two_pi;
  return w;
}

// Distance between two angles on the circle.
inline double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace liephase
