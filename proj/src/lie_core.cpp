#include "liephase/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace liephase {

IrrepLabel::IrrepLabel(std::vector<int> coeffs) : l_(std::move(coeffs)) {
  for (int c : l_) {
    if (c < 0) throw ValidationError("irrep label coefficients must be nonnegative");
  }
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("commutator: dimension mismatch");
  return a * b - b * a;
}

Complex trace_form(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("trace_form: dimension mismatch");
  return (a * b).trace();
}

namespace {

// Diagonal Cartan generators normalized to Re Tr(h_i h_j) = delta_ij.
// h_j has j-1 leading zeros, then the entry n-j followed by n-j entries -1,
// all divided by sqrt((n-j)(n-j+1)).  For n = 2 this is diag(1,-1)/sqrt(2),
// for n = 3 it reproduces diag(2,-1,-1)/sqrt(6) and diag(0,1,-1)/sqrt(2).
Matrix cartan_generator(int n, int j) {
  Matrix h = Matrix::Zero(n, n);
  const double m = static_cast<double>(n - j);
  const double norm = std::sqrt(m * (m + 1.0));
  h(j - 1, j - 1) = m / norm;
  for (int p = j; p < n; ++p) h(p, p) = -1.0 / norm;
  return h;
}

}  // namespace

std::vector<RealVector> roots_of(const std::vector<Matrix>& cartan,
                                 const std::vector<Matrix>& raising, double tol) {
  const int r = static_cast<int>(cartan.size());
  std::vector<RealVector> roots;
  roots.reserve(raising.size());
  for (std::size_t a = 0; a < raising.size(); ++a) {
    const Matrix& e = raising[a];
    const double scale = e.cwiseAbs().maxCoeff();
    RealVector alpha(r);
    for (int j = 0; j < r; ++j) {
      Matrix c = commutator(cartan[j], e);
      // coefficient from the largest entry of e, then verify proportionality
      Eigen::Index bi, bj;
      e.cwiseAbs().maxCoeff(&bi, &bj);
      Complex coeff = c(bi, bj) / e(bi, bj);
      if ((c - coeff * e).cwiseAbs().maxCoeff() > tol * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "roots_of: [h_" << j + 1 << ", e_" << a + 1
            << "] is not proportional to e_" << a + 1;
        throw ValidationError(msg.str());
      }
      if (std::abs(coeff.imag()) > tol)
        throw ValidationError("roots_of: complex root coordinate");
      alpha(j) = coeff.real();
    }
    roots.push_back(std::move(alpha));
  }
  return roots;
}

std::vector<RealVector> roots_of(const CartanWeylBasis& basis, double tol) {
  return roots_of(basis.cartan, basis.raising, tol);
}

std::vector<RealVector> fundamental_weights(const std::vector<RealVector>& primitive) {
  const int r = static_cast<int>(primitive.size());
  if (r == 0) throw ValidationError("fundamental_weights: empty primitive root set");
  RealMatrix gram(r, r);  // rows of primitive roots
  for (int j = 0; j < r; ++j) {
    if (primitive[j].size() != r)
      throw ValidationError("fundamental_weights: root dimension != rank");
    gram.row(j) = primitive[j].transpose();
  }
  Eigen::FullPivLU<RealMatrix> lu(gram);
  if (!lu.isInvertible())
    throw ValidationError("fundamental_weights: singular primitive-root matrix");
  // w_i solves  g_j . w_i = (delta_ij / 2) |g_j|^2
  std::vector<RealVector> weights;
  weights.reserve(r);
  for (int i = 0; i < r; ++i) {
    RealVector rhs = RealVector::Zero(r);
    rhs(i) = 0.5 * primitive[i].squaredNorm();
    weights.push_back(lu.solve(rhs));
  }
  return weights;
}

RealVector dominant_weight(const IrrepLabel& label, const std::vector<RealVector>& weights) {
  if (label.rank() != static_cast<int>(weights.size()))
    throw ValidationError("dominant_weight: label length != number of weights");
  const int r = static_cast<int>(weights.size());
  RealVector l = RealVector::Zero(r);
  for (int j = 0; j < r; ++j) l += static_cast<double>(label.coeffs()[j]) * weights[j];
  return l;
}

RealVector dominant_weight(const IrrepLabel& label, const CartanWeylBasis& basis) {
  return dominant_weight(label, basis.fundamental_wts);
}

CartanWeylBasis su_basis(int n) {
  if (n < 2) throw ValidationError("su_basis: n must be >= 2");
  CartanWeylBasis b;
  b.n = n;
  b.rank = n - 1;

  for (int j = 1; j <= b.rank; ++j) b.cartan.push_back(cartan_generator(n, j));

  // Raising operators are the elementary matrices E_{ij}, i < j, ordered by
  // increasing j - i so the simple ones come first; lowering operators are
  // their conjugate transposes.
  for (int d = 1; d < n; ++d) {
    for (int i = 0; i + d < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, i + d) = 1.0;
      b.raising.push_back(e);
      b.lowering.push_back(e.adjoint());
      b.root_pairs.emplace_back(i, i + d);
    }
  }

  b.roots = roots_of(b.cartan, b.raising);

  // Primitive roots: the simple roots of E_{i,i+1} in standard order, except
  // su(3), which keeps the base {-a(E23), a(E13)} so that the fundamental
  // weights come out as (1/sqrt6, -1/sqrt2) and (2/sqrt6, 0).
  if (n == 3) {
    b.primitive_roots.push_back(-b.roots[1]);  // E23 root negated
    b.primitive_roots.push_back(b.roots[2]);   // E13 root
  } else {
    for (int i = 0; i < b.rank; ++i) b.primitive_roots.push_back(b.roots[i]);
  }
  b.fundamental_wts = fundamental_weights(b.primitive_roots);
  return b;
}

IrrepLabel fundamental_label(const CartanWeylBasis& basis) {
  const int r = basis.rank;
  // weight of the first basis vector
  RealVector mu(r);
  for (int j = 0; j < r; ++j) mu(j) = basis.cartan[j](0, 0).real();
  // expand in the fundamental-weight basis
  RealMatrix w(r, r);
  for (int j = 0; j < r; ++j) w.col(j) = basis.fundamental_wts[j];
  RealVector c = w.fullPivLu().solve(mu);
  std::vector<int> label(r);
  for (int j = 0; j < r; ++j) {
    double rounded = std::round(c(j));
    if (std::abs(c(j) - rounded) > 1e-9 || rounded < 0)
      throw ValidationError("fundamental_label: defining weight is not dominant-integral");
    label[j] = static_cast<int>(rounded);
  }
  return IrrepLabel(label);
}

int weight_eigenvector_index(const CartanWeylBasis& basis, const RealVector& weight,
                             double tol) {
  for (int i = 0; i < basis.n; ++i) {
    bool match = true;
    for (int j = 0; j < basis.rank; ++j) {
      if (std::abs(basis.cartan[j](i, i).real() - weight(j)) > tol) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return -1;
}

Matrix matrix_exp(const Matrix& a) {
  if (!is_finite(a)) throw ValidationError("matrix_exp: non-finite entries");
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ValidationError("matrix_exp: square matrix required");

  auto strictly_triangular = [&](bool upper) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        bool below = upper ? (i >= j) : (i <= j);
        if (below && a(i, j) != 0.0) return false;
      }
    return true;
  };

  if (strictly_triangular(true) || strictly_triangular(false)) {
    // nilpotent of degree <= n: the series terminates
    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
      term = (term * a) / static_cast<double>(k);
      result += term;
    }
    return result;
  }
  return a.exp();
}

}  // namespace liephase
