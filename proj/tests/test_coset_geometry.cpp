#include "doctest.h"
#include "liephase/coset_geometry.hpp"
#include "test_helpers.hpp"

using namespace liephase;
using liephase::testing::make_matrix;
using liephase::testing::max_abs_diff;
using liephase::testing::random_chart_point;

namespace {
const double SQ2 = std::sqrt(2.0);
const double SQ6 = std::sqrt(6.0);

ComplexVector point3(Complex z1, Complex z2, Complex z3) {
  ComplexVector z(3);
  z << z1, z2, z3;
  return z;
}
}  // namespace

TEST_CASE("nilpotent representative") {
  CartanWeylBasis su2 = su_basis(2);
  ComplexVector z0 = ComplexVector::Zero(1);
  CHECK(max_abs_diff(nilpotent_rep(z0, su2), Matrix::Identity(2, 2)) == 0.0);

  ComplexVector z(1);
  z << Complex(0.3, -1.1);
  Matrix u = nilpotent_rep(z, su2);
  CHECK(u(0, 0) == Complex(1, 0));
  CHECK(u(0, 1) == z(0));
  CHECK(u(1, 0) == Complex(0, 0));

  CartanWeylBasis su3 = su_basis(3);
  ComplexVector w = point3({0.4, 0.7}, {-1.2, 0.1}, {0.05, -0.3});
  Matrix u3 = nilpotent_rep(w, su3);
  CHECK(u3(0, 1) == w(0));
  CHECK(u3(1, 2) == w(1));
  CHECK(std::abs(u3(0, 2) - (w(2) + 0.5 * w(0) * w(1))) < 1e-16);
  CHECK(max_abs_diff(u3.triangularView<Eigen::StrictlyLower>().toDenseMatrix(),
                     Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("projection matrices") {
  CartanWeylBasis su3 = su_basis(3);
  auto etas = projection_matrices(su3);
  REQUIRE(etas.size() == 2);
  CHECK(max_abs_diff(etas[0], make_matrix(3, {0, 0, 0, 0, 1, 0, 0, 0, 1})) == 0.0);
  CHECK(max_abs_diff(etas[1], make_matrix(3, {0, 0, 0, 0, 0, 0, 0, 0, 1})) == 0.0);

  CartanWeylBasis su2 = su_basis(2);
  auto eta2 = projection_matrices(su2);
  CHECK(max_abs_diff(eta2[0], make_matrix(2, {0, 0, 0, 1})) == 0.0);

  // the defining relations hold exactly for larger n as well
  for (int n : {4, 5}) {
    CartanWeylBasis b = su_basis(n);
    auto etas_n = projection_matrices(b);
    for (const Matrix& eta : etas_n) {
      for (const Matrix& h : b.cartan)
        CHECK(max_abs_diff(eta * h, h * eta) == 0.0);
      for (int a = 0; a < b.n_pos(); ++a) {
        CHECK(max_abs_diff(eta * b.lowering[a] * eta, b.lowering[a] * eta) == 0.0);
        CHECK(max_abs_diff(eta * b.raising[a] * eta, eta * b.raising[a]) == 0.0);
      }
    }
  }
}

TEST_CASE("projected determinants") {
  Matrix m = make_matrix(2, {Complex(2, 1), 3, 4, Complex(-1, 2)});
  Matrix id = Matrix::Identity(2, 2);
  CHECK(std::abs(projected_det(m, id) - m.determinant()) < 1e-14);
  CHECK(std::abs(projected_det(m, Matrix::Zero(2, 2)) - Complex(1, 0)) < 1e-16);
  CHECK_THROWS_AS(projected_det(m, Matrix::Identity(3, 3)), ValidationError);

  // su(3), z = (0,0,1): the eta_2 block of u^+u is the scalar 2
  CartanWeylBasis su3 = su_basis(3);
  auto etas = projection_matrices(su3);
  Matrix u = nilpotent_rep(point3(0, 0, 1), su3);
  CHECK(std::abs(projected_det(u.adjoint() * u, etas[1]) - Complex(2, 0)) < 1e-14);
}

TEST_CASE("su(2) Kahler potential and kappa") {
  CosetChart chart = CosetChart::su(2);
  ComplexVector z(1);
  z << Complex(1.0, 0.0);
  KahlerPotentials p = chart.potentials(z);
  CHECK(p.K(0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(p.kappa(0) == doctest::Approx(std::log(2.0) / SQ2).epsilon(1e-14));

  ComplexVector z0 = ComplexVector::Zero(1);
  CHECK(chart.potentials(z0).K(0) == 0.0);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexVector w = random_chart_point(rng, 1, 2.0);
    double expected = std::log(1.0 + std::norm(w(0)));
    CHECK(chart.potentials(w).K(0) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("su(3) potentials match the closed forms") {
  CosetChart chart = CosetChart::su(3);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexVector z = random_chart_point(rng, 3, 1.5);
    Complex zm = z(2) - 0.5 * z(0) * z(1);
    Complex zp = z(2) + 0.5 * z(0) * z(1);
    double k1 = std::log(1.0 + std::norm(z(0)) + std::norm(zm));
    double k2 = std::log(1.0 + std::norm(z(1)) + std::norm(zp));
    KahlerPotentials p = chart.potentials(z);
    CHECK(std::abs(p.K(0) - k1) < 1e-12);
    CHECK(std::abs(p.K(1) - k2) < 1e-12);

    // the projected determinant of u^+u is real up to roundoff
    Matrix u = chart.nilpotent(z);
    for (const Matrix& eta : chart.projections()) {
      Complex det = projected_det(u.adjoint() * u, eta);
      CHECK(std::abs(det.imag()) <= 1e-12 * std::abs(det));
    }
  }
}

TEST_CASE("su(3) kappa coefficients and projection Gram values") {
  CosetChart chart = CosetChart::su(3);
  const CartanWeylBasis& b = chart.basis();
  const auto& etas = chart.projections();

  CHECK(trace_form(b.cartan[0], etas[0]).real() ==
        doctest::Approx(-std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(std::abs(trace_form(b.cartan[1], etas[0])) < 1e-15);
  CHECK(trace_form(b.cartan[0], etas[1]).real() ==
        doctest::Approx(-1.0 / SQ6).epsilon(1e-14));
  CHECK(trace_form(b.cartan[1], etas[1]).real() ==
        doctest::Approx(-1.0 / SQ2).epsilon(1e-14));

  // kappa^1 = (sqrt6/4) K^1,  kappa^2 = K^2/sqrt2 - K^1/(2 sqrt2)
  const RealMatrix& c = chart.kappa_coefficients();
  CHECK(std::abs(c(0, 0) - SQ6 / 4.0) < 1e-12);
  CHECK(std::abs(c(0, 1)) < 1e-12);
  CHECK(std::abs(c(1, 0) + 1.0 / (2.0 * SQ2)) < 1e-12);
  CHECK(std::abs(c(1, 1) - 1.0 / SQ2) < 1e-12);
}

TEST_CASE("potentials are nonnegative on the chart") {
  std::mt19937 rng(17);
  for (int n : {2, 3, 4}) {
    CosetChart chart = CosetChart::su(n);
    for (int trial = 0; trial < 25; ++trial) {
      ComplexVector z = random_chart_point(rng, chart.n_pos(), 1.5);
      RealVector k = chart.potentials(z).K;
      CHECK(k.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("coset representative") {
  CosetChart chart = CosetChart::su(2);
  ComplexVector z0 = ComplexVector::Zero(1);
  CHECK(max_abs_diff(chart.representative(z0), Matrix::Identity(2, 2)) < 1e-15);

  // real z: a real rotation-like matrix (1+z^2)^{-1/2} [[1, z], [-z, 1]]
  ComplexVector z(1);
  z << Complex(0.8, 0.0);
  Matrix g = chart.representative(z);
  double scale = 1.0 / std::sqrt(1.0 + 0.64);
  Matrix expected = make_matrix(2, {scale, 0.8 * scale, -0.8 * scale, scale});
  CHECK(max_abs_diff(g, expected) < 1e-14);
  CHECK(is_unitary(g, 1e-12));

  std::mt19937 rng(19);
  for (int n : {2, 3, 4}) {
    CosetChart c = CosetChart::su(n);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix g1 = c.representative(random_chart_point(rng, c.n_pos(), 1.5));
      CHECK(is_unitary(g1, 1e-10));
    }
  }
}

TEST_CASE("mackey decomposition basics") {
  CartanWeylBasis su2 = su_basis(2);
  MackeyFactors f = mackey_decompose(Matrix::Identity(2, 2), su2);
  CHECK(max_abs_diff(f.u, Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(f.v_dag, Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(f.k, Matrix::Identity(2, 2)) == 0.0);
  CHECK(f.kappa.cwiseAbs().maxCoeff() == 0.0);

  // vanishing trailing minor: no Gauss factorization
  Matrix rot = make_matrix(2, {0, 1, -1, 0});
  CHECK_THROWS_AS(mackey_decompose(rot, su2), SingularDecomposition);

  Matrix notu = make_matrix(2, {1, 1, 0, 1});
  CHECK_THROWS_AS(mackey_decompose(notu, su2), NotUnitary);
}

TEST_CASE("mackey roundtrip against the direct formulas") {
  std::mt19937 rng(23);
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    CosetChart chart = CosetChart::su(n);
    for (int trial = 0; trial < 20; ++trial) {
      ComplexVector z = random_chart_point(rng, chart.n_pos(), 1.2);
      Matrix g1 = chart.representative(z);
      MackeyFactors f = mackey_decompose(g1, chart.basis());

      // the unit upper factor is u(z) and kappa matches the potential route
      CHECK(max_abs_diff(f.u, chart.nilpotent(z)) < 1e-10);
      CHECK((f.kappa - chart.kappa(z)).cwiseAbs().maxCoeff() < 1e-9);

      // reconstruction and the defining torus relations
      CHECK(max_abs_diff(f.u * f.v_dag * f.k, g1) < 1e-10);
      Matrix khat = Matrix::Zero(n, n);
      for (int j = 0; j < chart.rank(); ++j)
        khat += Complex(f.kappa(j), 0.0) * chart.basis().cartan[j];
      CHECK(max_abs_diff(matrix_exp(khat), f.k) < 1e-10);

      // k k^+ = (v u^+ u v^+)^{-1}
      Matrix v = f.v_dag.adjoint();
      Matrix lhs = f.k * f.k.adjoint();
      Matrix rhs = (v * f.u.adjoint() * f.u * f.v_dag).inverse();
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("mackey rejects unitary elements with torus phases") {
  CartanWeylBasis su2 = su_basis(2);
  Matrix g = make_matrix(2, {std::polar(1.0, 0.7), 0, 0, std::polar(1.0, -0.7)});
  CHECK_THROWS_AS(mackey_decompose(g, su2), SingularDecomposition);
}

TEST_CASE("holomorphic group action on the chart") {
  CosetChart chart = CosetChart::su(2);
  std::mt19937 rng(29);
  ComplexVector z = random_chart_point(rng, 1, 1.0);

  CHECK((chart.act(Matrix::Identity(2, 2), z) - z).cwiseAbs().maxCoeff() < 1e-14);

  // torus element: z -> exp(2 i phi) z
  double phi = 0.35;
  Matrix torus = make_matrix(2, {std::polar(1.0, phi), 0, 0, std::polar(1.0, -phi)});
  ComplexVector gz = chart.act(torus, z);
  CHECK(std::abs(gz(0) - z(0) * std::polar(1.0, 2.0 * phi)) < 1e-13);

  // group law g2 (g1 z) = (g2 g1) z
  CosetChart su3 = CosetChart::su(3);
  ComplexVector w = random_chart_point(rng, 3, 0.8);
  Matrix g1 = liephase::testing::random_group_element(rng, su3.basis(), 0.3);
  Matrix g2 = liephase::testing::random_group_element(rng, su3.basis(), 0.3);
  ComplexVector lhs = su3.act(g2, su3.act(g1, w));
  ComplexVector rhs = su3.act(g2 * g1, w);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("derivative engine matches finite differences") {
  CartanWeylBasis su3 = su_basis(3);
  std::mt19937 rng(31);
  ComplexVector z = random_chart_point(rng, 3, 0.9);
  Matrix x = Matrix::Zero(3, 3);
  for (int a = 0; a < 3; ++a) x += z(a) * su3.raising[a];

  for (int a = 0; a < 3; ++a) {
    const double h = 1e-6;
    Matrix fd = (matrix_exp(x + h * su3.raising[a]) - matrix_exp(x - h * su3.raising[a])) /
                (2.0 * h);
    Matrix an = detail::dexp_nilpotent(x, su3.raising[a]);
    CHECK(max_abs_diff(fd, an) < 1e-9);
  }
}
