#pragma once

#include <utility>
#include <vector>

#include "liephase/types.hpp"

namespace liephase {

// Nonnegative integer coefficients (l_1, ..., l_r) of a dominant weight in
// the fundamental-weight basis; labels an irreducible representation.
struct IrrepLabel {
  explicit IrrepLabel(std::vector<int> coeffs);
  const std::vector<int>& coeffs() const { return l_; }
  int rank() const { return static_cast<int>(l_.size()); }

 private:
  std::vector<int> l_;
};

// Canonical Cartan-Weyl basis {h_j, e_a, e_{-a}} of su(n) in the fundamental
// representation, together with the positive roots and weight data derived
// from it.  The trace form is orthonormal on the Cartan part,
// Re Tr(h_i h_j) = delta_ij.
struct CartanWeylBasis {
  int n = 0;     // dimension of the fundamental representation
  int rank = 0;  // r = n - 1

  std::vector<Matrix> cartan;    // h_j, diagonal traceless hermitian
  std::vector<Matrix> raising;   // e_a = E_{ij}, i < j
  std::vector<Matrix> lowering;  // e_{-a} = e_a^dagger

  // Positive roots in the orthonormal root-space basis, one per raising
  // operator and in the same order.
  std::vector<RealVector> roots;
  // (i, j) index pair of the elementary matrix behind each raising operator.
  std::vector<std::pair<int, int>> root_pairs;

  // Primitive (simple) roots and the fundamental weights solving
  // (w_i . g_j) = (delta_ij / 2)(g_j . g_j).
  std::vector<RealVector> primitive_roots;
  std::vector<RealVector> fundamental_wts;

  int n_pos() const { return static_cast<int>(raising.size()); }
};

// Builds the canonical basis of su(n), n >= 2.
CartanWeylBasis su_basis(int n);

// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

// Tr(AB).
Complex trace_form(const Matrix& a, const Matrix& b);

// Extracts the positive roots from [h_j, e_a] = a_j e_a.  Fails when a
// commutator is not proportional to the corresponding raising operator.
std::vector<RealVector> roots_of(const std::vector<Matrix>& cartan,
                                 const std::vector<Matrix>& raising,
                                 double tol = 1e-10);
std::vector<RealVector> roots_of(const CartanWeylBasis& basis, double tol = 1e-10);

// Solves (w_i . g_j) = (delta_ij / 2)(g_j . g_j) for the fundamental weights
// given the primitive roots g_j.
std::vector<RealVector> fundamental_weights(const std::vector<RealVector>& primitive);

// l = sum_j l_j w_j in root-space coordinates.
RealVector dominant_weight(const IrrepLabel& label, const std::vector<RealVector>& weights);
RealVector dominant_weight(const IrrepLabel& label, const CartanWeylBasis& basis);

// Label of the defining n-dimensional representation, i.e. the coefficients
// of the weight of the first basis vector in the fundamental-weight basis.
IrrepLabel fundamental_label(const CartanWeylBasis& basis);

// Index of the basis vector whose h_j eigenvalues equal the given weight;
// -1 when no basis vector matches.
int weight_eigenvector_index(const CartanWeylBasis& basis, const RealVector& weight,
                             double tol = 1e-9);

// e^A.  Strictly triangular input is summed exactly as a finite series;
// everything else goes through scaling-and-squaring.
Matrix matrix_exp(const Matrix& a);

}  // namespace liephase
