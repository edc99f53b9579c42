#pragma once

#include <vector>

#include "liephase/lie_core.hpp"
#include "liephase/types.hpp"

namespace liephase {

// Factors of the (left) Mackey/Gauss decomposition g1 = u v^+ k with u unit
// upper triangular, v^+ unit lower triangular and k in the (complexified)
// Cartan torus, k = exp(sum_j kappa^j h_j) with real kappa.
struct MackeyFactors {
  Matrix u;
  Matrix v_dag;
  Matrix k;
  RealVector kappa;
};

// Fundamental Kahler potentials K^j and the kappa vector at a chart point.
struct KahlerPotentials {
  RealVector K;
  RealVector kappa;
};

// u(z) = exp(sum_a z^a e_a), unit upper triangular with polynomial entries.
Matrix nilpotent_rep(const ComplexVector& z, const CartanWeylBasis& basis);

// Diagonal idempotent hermitian eta_j with eta_j e_{-a} eta_j = e_{-a} eta_j
// and eta_j e_a eta_j = eta_j e_a; for su(n) eta_j has j leading zeros.
std::vector<Matrix> projection_matrices(const CartanWeylBasis& basis);

// det(eta M eta + I - eta).
Complex projected_det(const Matrix& m, const Matrix& eta);

// Gauss factorization of a unitary group element.  Throws NotUnitary or
// SingularDecomposition (vanishing minor, or a torus factor with residual
// phase, i.e. the element is not a canonical chart representative).
MackeyFactors mackey_decompose(const Matrix& g1, const CartanWeylBasis& basis);

// Origin-centered complex coordinate chart on G/H.  Bundles the basis, the
// projection matrices and the linear map from the fundamental potentials to
// kappa; all per-point operations are pure.
class CosetChart {
 public:
  explicit CosetChart(CartanWeylBasis basis);
  static CosetChart su(int n) { return CosetChart(su_basis(n)); }

  const CartanWeylBasis& basis() const { return basis_; }
  const std::vector<Matrix>& projections() const { return etas_; }
  // kappa = kappa_coefficients * K, i.e. -1/2 G^{-1} with G_ij = Re Tr(h_j eta_i)
  const RealMatrix& kappa_coefficients() const { return coeff_; }
  int n_pos() const { return basis_.n_pos(); }
  int rank() const { return basis_.rank; }

  Matrix nilpotent(const ComplexVector& z) const { return nilpotent_rep(z, basis_); }

  // K^j = ln det_{eta_j}(u^+ u) and the kappa vector solved from the
  // potentials; throws ChartError on a numerically singular point.
  KahlerPotentials potentials(const ComplexVector& z) const;
  RealVector kappa(const ComplexVector& z) const;

  // Unitary coset representative g1 = u v^+ k.
  Matrix representative(const ComplexVector& z) const;

  // Nonlinear group action z -> gz defined by g u(z) = u(gz) g_-; throws
  // ChartError when the image leaves the chart.
  ComplexVector act(const Matrix& g, const ComplexVector& z) const;

  // Analytic Wirtinger derivatives of the fundamental potentials.
  // gradient(j, a)     = d K^j / d z^a             (r x n_pos)
  // mixed[j](a, b)     = d^2 K^j / d z^a d conj(z^b)
  Eigen::MatrixXcd potential_gradient(const ComplexVector& z) const;
  std::vector<Matrix> potential_mixed(const ComplexVector& z) const;

 private:
  CartanWeylBasis basis_;
  std::vector<Matrix> etas_;
  RealMatrix coeff_;
};

// Free-function forms.
KahlerPotentials kahler_potentials(const ComplexVector& z, const CartanWeylBasis& basis,
                                   const std::vector<Matrix>& etas);
RealVector kappa_vector(const ComplexVector& z, const CartanWeylBasis& basis,
                        const std::vector<Matrix>& etas);
Matrix coset_representative(const ComplexVector& z, const CartanWeylBasis& basis);

namespace detail {
// B = L D L^+ for hermitian positive definite B, L unit lower, D positive.
void ldl_decompose(const Matrix& b, Matrix& l, RealVector& d);
// g = U W with U unit upper triangular and W lower triangular; fails when a
// trailing principal minor of g vanishes.
void ul_decompose(const Matrix& g, Matrix& u, Matrix& w);
// Directional derivative of exp at a nilpotent argument:
// d/dt exp(X + tY) at t=0, exact finite series.
Matrix dexp_nilpotent(const Matrix& x, const Matrix& y);
// kappa^j solving sum_j kappa^j diag(h_j) = log diag(k), with residual check.
RealVector kappa_from_torus(const Matrix& k, const CartanWeylBasis& basis);
}  // namespace detail

}  // namespace liephase
