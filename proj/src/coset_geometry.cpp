#include "liephase/coset_geometry.hpp"

#include <cmath>

namespace liephase {

Matrix nilpotent_rep(const ComplexVector& z, const CartanWeylBasis& basis) {
  if (z.size() != basis.n_pos())
    throw ValidationError("nilpotent_rep: coordinate count != number of positive roots");
  if (!z.allFinite()) throw ValidationError("nilpotent_rep: non-finite coordinates");
  Matrix x = Matrix::Zero(basis.n, basis.n);
  for (int a = 0; a < basis.n_pos(); ++a) x += z(a) * basis.raising[a];
  return matrix_exp(x);
}

std::vector<Matrix> projection_matrices(const CartanWeylBasis& basis) {
  const int n = basis.n;
  std::vector<Matrix> etas;
  etas.reserve(basis.rank);
  for (int j = 1; j <= basis.rank; ++j) {
    Matrix eta = Matrix::Zero(n, n);
    for (int p = j; p < n; ++p) eta(p, p) = 1.0;
    etas.push_back(eta);
  }
  // verify the defining relations
  const double tol = 1e-12;
  for (const Matrix& eta : etas) {
    if ((eta - eta.adjoint()).cwiseAbs().maxCoeff() > tol ||
        (eta * eta - eta).cwiseAbs().maxCoeff() > tol)
      throw ValidationError("projection_matrices: candidate is not a hermitian idempotent");
    for (const Matrix& h : basis.cartan)
      if ((eta * h - h * eta).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("projection_matrices: does not commute with the Cartan part");
    for (int a = 0; a < basis.n_pos(); ++a) {
      const Matrix& em = basis.lowering[a];
      const Matrix& ep = basis.raising[a];
      if ((eta * em * eta - em * eta).cwiseAbs().maxCoeff() > tol ||
          (eta * ep * eta - eta * ep).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("projection_matrices: Borel projection relations violated");
    }
  }
  return etas;
}

Complex projected_det(const Matrix& m, const Matrix& eta) {
  if (m.rows() != eta.rows() || m.cols() != eta.cols())
    throw ValidationError("projected_det: dimension mismatch");
  Matrix p = eta * m * eta + Matrix::Identity(m.rows(), m.cols()) - eta;
  return p.determinant();
}

namespace detail {

void ldl_decompose(const Matrix& b, Matrix& l, RealVector& d) {
  const Eigen::Index n = b.rows();
  l = Matrix::Identity(n, n);
  d = RealVector::Zero(n);
  const double floor = 1e-14 * std::max(1.0, b.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < n; ++j) {
    double dj = b(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) dj -= std::norm(l(j, k)) * d(k);
    if (!(dj > floor))
      throw SingularDecomposition("ldl_decompose: pivot not positive");
    d(j) = dj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = b(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * d(k) * std::conj(l(j, k));
      l(i, j) = s / dj;
    }
  }
}

void ul_decompose(const Matrix& g, Matrix& u, Matrix& w) {
  const Eigen::Index n = g.rows();
  // flip both index orders: J g J has a standard Doolittle LU iff g has the
  // upper-times-lower factorization
  Matrix f(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) f(i, j) = g(n - 1 - i, n - 1 - j);

  Matrix lo = Matrix::Identity(n, n);
  Matrix up = Matrix::Zero(n, n);
  const double threshold = 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Complex s = f(i, j);
      for (Eigen::Index k = 0; k < i; ++k) s -= lo(i, k) * up(k, j);
      up(i, j) = s;
    }
    if (std::abs(up(i, i)) < threshold)
      throw SingularDecomposition("ul_decompose: vanishing principal minor");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Complex s = f(j, i);
      for (Eigen::Index k = 0; k < i; ++k) s -= lo(j, k) * up(k, i);
      lo(j, i) = s / up(i, i);
    }
  }
  u = Matrix(n, n);
  w = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      u(i, j) = lo(n - 1 - i, n - 1 - j);
      w(i, j) = up(n - 1 - i, n - 1 - j);
    }
}

Matrix dexp_nilpotent(const Matrix& x, const Matrix& y) {
  const Eigen::Index n = x.rows();
  std::vector<Matrix> pow;
  pow.reserve(n);
  pow.push_back(Matrix::Identity(n, n));
  for (Eigen::Index k = 1; k < n; ++k) pow.push_back(pow.back() * x);

  std::vector<double> inv_fact(2 * n, 1.0);
  for (std::size_t k = 1; k < inv_fact.size(); ++k) inv_fact[k] = inv_fact[k - 1] / k;

  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d += inv_fact[static_cast<std::size_t>(i + j + 1)] * (pow[i] * y * pow[j]);
  return d;
}

RealVector kappa_from_torus(const Matrix& k, const CartanWeylBasis& basis) {
  const int n = basis.n;
  RealVector logk(n);
  for (int i = 0; i < n; ++i) {
    Complex kd = k(i, i);
    if (!(kd.real() > 0.0) || std::abs(kd.imag()) > 1e-8 * std::abs(kd))
      throw SingularDecomposition(
          "kappa_from_torus: torus factor is not positive real (element is not a "
          "canonical chart representative)");
    logk(i) = std::log(kd.real());
  }
  // h_j diagonals are orthonormal, so least squares reduces to projections
  RealVector kappa(basis.rank);
  RealVector fit = RealVector::Zero(n);
  for (int j = 0; j < basis.rank; ++j) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += basis.cartan[j](i, i).real() * logk(i);
    kappa(j) = c;
    for (int i = 0; i < n; ++i) fit(i) += c * basis.cartan[j](i, i).real();
  }
  if ((logk - fit).cwiseAbs().maxCoeff() > 1e-10)
    throw SingularDecomposition("kappa_from_torus: torus factor outside exp(Cartan)");
  return kappa;
}

}  // namespace detail

namespace {

RealMatrix kappa_coefficients_for(const CartanWeylBasis& basis,
                                  const std::vector<Matrix>& etas) {
  const int r = basis.rank;
  RealMatrix gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram(i, j) = trace_form(basis.cartan[j], etas[i]).real();
  Eigen::FullPivLU<RealMatrix> lu(gram);
  if (!lu.isInvertible())
    throw ValidationError("kappa coefficients: singular projection Gram matrix");
  return -0.5 * lu.inverse();
}

KahlerPotentials potentials_at(const ComplexVector& z, const CartanWeylBasis& basis,
                               const std::vector<Matrix>& etas, const RealMatrix& coeff) {
  Matrix u = nilpotent_rep(z, basis);
  Matrix a = u.adjoint() * u;
  KahlerPotentials out;
  out.K = RealVector(basis.rank);
  for (int j = 0; j < basis.rank; ++j) {
    Complex det = projected_det(a, etas[j]);
    if (!(det.real() > 0.0) || std::abs(det.imag()) > 1e-8 * std::abs(det) ||
        !std::isfinite(det.real()))
      throw ChartError("kahler_potentials: projected determinant not positive at this point");
    out.K(j) = std::log(det.real());
  }
  out.kappa = coeff * out.K;
  return out;
}

}  // namespace

MackeyFactors mackey_decompose(const Matrix& g1, const CartanWeylBasis& basis) {
  if (g1.rows() != basis.n || g1.cols() != basis.n)
    throw ValidationError("mackey_decompose: dimension mismatch with basis");
  Matrix gram = g1.adjoint() * g1;
  gram -= Matrix::Identity(basis.n, basis.n);
  if (gram.cwiseAbs().maxCoeff() > 1e-8) throw NotUnitary("mackey_decompose: g1 is not unitary");

  MackeyFactors f;
  Matrix w;
  detail::ul_decompose(g1, f.u, w);
  f.k = Matrix::Zero(basis.n, basis.n);
  for (int i = 0; i < basis.n; ++i) f.k(i, i) = w(i, i);
  f.kappa = detail::kappa_from_torus(f.k, basis);
  f.v_dag = Matrix::Identity(basis.n, basis.n);
  for (int i = 0; i < basis.n; ++i)
    for (int j = 0; j < i; ++j) f.v_dag(i, j) = w(i, j) / w(j, j);
  return f;
}

CosetChart::CosetChart(CartanWeylBasis basis) : basis_(std::move(basis)) {
  etas_ = projection_matrices(basis_);
  coeff_ = kappa_coefficients_for(basis_, etas_);
}

KahlerPotentials CosetChart::potentials(const ComplexVector& z) const {
  return potentials_at(z, basis_, etas_, coeff_);
}

RealVector CosetChart::kappa(const ComplexVector& z) const { return potentials(z).kappa; }

Matrix CosetChart::representative(const ComplexVector& z) const {
  Matrix u = nilpotent(z);
  Matrix a = u.adjoint() * u;
  Matrix l;
  RealVector d;
  // (u^+ u)^{-1} = v^+ k^2 v  with  v^+ = L and k = sqrt(D)
  try {
    detail::ldl_decompose(a.inverse(), l, d);
  } catch (const SingularDecomposition&) {
    throw ChartError("representative: point is numerically outside the chart");
  }
  Matrix g1 = u * l;
  for (int i = 0; i < basis_.n; ++i) g1.col(i) *= std::sqrt(d(i));
  return g1;
}

ComplexVector CosetChart::act(const Matrix& g, const ComplexVector& z) const {
  Matrix m = g * nilpotent(z);
  Matrix u, w;
  try {
    detail::ul_decompose(m, u, w);
  } catch (const SingularDecomposition&) {
    throw ChartError("act: transformed point leaves the chart");
  }
  // z' is read off the nilpotent logarithm of the upper factor
  const int n = basis_.n;
  Matrix nl = u - Matrix::Identity(n, n);
  Matrix logu = Matrix::Zero(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    term = term * nl;
    logu += (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k) * term;
  }
  ComplexVector out(n_pos());
  for (int a = 0; a < n_pos(); ++a)
    out(a) = logu(basis_.root_pairs[a].first, basis_.root_pairs[a].second);
  return out;
}

Eigen::MatrixXcd CosetChart::potential_gradient(const ComplexVector& z) const {
  const int r = rank();
  const int np = n_pos();
  if (z.size() != np)
    throw ValidationError("potential_gradient: coordinate count != chart dimension");
  Matrix x = Matrix::Zero(basis_.n, basis_.n);
  for (int a = 0; a < np; ++a) x += z(a) * basis_.raising[a];
  Matrix u = matrix_exp(x);
  Matrix a_mat = u.adjoint() * u;

  std::vector<Matrix> du(np);
  for (int a = 0; a < np; ++a) du[a] = detail::dexp_nilpotent(x, basis_.raising[a]);

  Eigen::MatrixXcd grad(r, np);
  const Matrix id = Matrix::Identity(basis_.n, basis_.n);
  for (int j = 0; j < r; ++j) {
    Matrix m = etas_[j] * a_mat * etas_[j] + id - etas_[j];
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
      throw ChartError("potential_gradient: projected block not positive definite");
    Matrix p = llt.solve(id);
    for (int a = 0; a < np; ++a)
      grad(j, a) = (p * (etas_[j] * (u.adjoint() * du[a]) * etas_[j])).trace();
  }
  return grad;
}

std::vector<Matrix> CosetChart::potential_mixed(const ComplexVector& z) const {
  const int r = rank();
  const int np = n_pos();
  if (z.size() != np)
    throw ValidationError("potential_mixed: coordinate count != chart dimension");
  Matrix x = Matrix::Zero(basis_.n, basis_.n);
  for (int a = 0; a < np; ++a) x += z(a) * basis_.raising[a];
  Matrix u = matrix_exp(x);
  Matrix a_mat = u.adjoint() * u;

  std::vector<Matrix> du(np);
  for (int a = 0; a < np; ++a) du[a] = detail::dexp_nilpotent(x, basis_.raising[a]);

  const Matrix id = Matrix::Identity(basis_.n, basis_.n);
  std::vector<Matrix> out;
  out.reserve(r);
  for (int j = 0; j < r; ++j) {
    const Matrix& eta = etas_[j];
    Matrix m = eta * a_mat * eta + id - eta;
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
      throw ChartError("potential_mixed: projected block not positive definite");
    Matrix p = llt.solve(id);

    std::vector<Matrix> q(np);  // eta u^+ (d_a u) eta
    for (int a = 0; a < np; ++a) q[a] = eta * (u.adjoint() * du[a]) * eta;

    Matrix f(np, np);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) {
        Complex first = (p * (eta * (du[b].adjoint() * du[a]) * eta)).trace();
        Complex second = (p * q[b].adjoint() * p * q[a]).trace();
        f(a, b) = first - second;
      }
    out.push_back(std::move(f));
  }
  return out;
}

KahlerPotentials kahler_potentials(const ComplexVector& z, const CartanWeylBasis& basis,
                                   const std::vector<Matrix>& etas) {
  return potentials_at(z, basis, etas, kappa_coefficients_for(basis, etas));
}

RealVector kappa_vector(const ComplexVector& z, const CartanWeylBasis& basis,
                        const std::vector<Matrix>& etas) {
  return kahler_potentials(z, basis, etas).kappa;
}

Matrix coset_representative(const ComplexVector& z, const CartanWeylBasis& basis) {
  return CosetChart(basis).representative(z);
}

}  // namespace liephase
