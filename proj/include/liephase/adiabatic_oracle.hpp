#pragma once

#include <functional>
#include <string>
#include <vector>

#include "liephase/berry_phase.hpp"
#include "liephase/coset_geometry.hpp"
#include "liephase/quadrature.hpp"

namespace liephase {

// One-parameter Hamiltonian family b(s) = g1(z(s)) beta_hat g1(z(s))^{-1}
// with beta a constant Cartan element in root-space coordinates.
struct HamiltonianPath {
  ClosedCurve curve;
  RealVector beta;
};

// beta_hat = sum_j beta^j h_j.
Matrix cartan_element(const RealVector& beta, const CartanWeylBasis& basis);

// Root-space coordinates of the default Cartan element: diag(1,-1) for su(2),
// diag((n-1)/2 - i) for larger n; integer-spaced distinct eigenvalues.
RealVector default_beta(const CartanWeylBasis& basis);

// b(s) at one parameter value.
Matrix hamiltonian_at(const HamiltonianPath& path, const CosetChart& chart, double s);

// Q^j = -i int_0^1 Tr(g1^{-1} dg1/ds h_j) ds with dg1/ds by central
// differences; the integrand must come out real.
RealVector q_vector_direct(const ClosedCurve& curve, const CosetChart& chart,
                           const QuadratureOptions& opts = {}, double ds = 1e-6);

// Same integral for an arbitrary differentiable family s -> g1(s); used to
// exercise the torus gauge freedom of the diagonalization.
RealVector q_vector_direct_of(const std::function<Matrix(double)>& g_of_s,
                              const CartanWeylBasis& basis,
                              const QuadratureOptions& opts = {}, double ds = 1e-6);

struct EvolveOptions {
  double steps_per_tau = 120.0;  // RK4 steps per unit of tau and eigenvalue
  int min_steps = 4000;
  double eps_adb = 1e-2;    // adiabaticity loss threshold on the final overlap
  double min_gap = 1e-3;    // required spectral gap around the tracked level
};

struct EvolutionResult {
  double tau = 0.0;
  double total_phase = 0.0;      // unwrapped -arg<psi(0)|psi(1)>
  double dynamical_phase = 0.0;  // tau (l . beta)
  double geometric_phase = 0.0;  // total - dynamical, reduced mod 2 pi
  double final_overlap_mag = 0.0;
  double max_norm_drift = 0.0;
  bool adiabatic_valid = false;
};

// Index of the basis vector carrying the dominant weight of the defining
// representation; the default initial state of evolve.
int dominant_eigenvector_index(const CartanWeylBasis& basis);

// Integrates i dpsi/ds = tau b(s) psi from the instantaneous eigenstate
// g1(z(0)) e_init with unitarity-preserving RK4 stepping.  Throws
// AdiabaticityLost when the final overlap magnitude drops below 1 - eps_adb.
EvolutionResult evolve(const HamiltonianPath& path, const CosetChart& chart, double tau,
                       int init_index, const EvolveOptions& opts = {});

struct TauSweepRow {
  double tau = 0.0;
  double geometric_phase = 0.0;
  double overlap_mag = 0.0;
  bool valid = false;
  double error_vs_reference = 0.0;  // mod-2pi distance to the reference phase
  std::string note;                 // error message when the run failed
};

struct TauSweepTable {
  std::vector<TauSweepRow> rows;
  // log-log slope of error vs tau over the last decade of valid rows
  double slope_last_decade() const;
};

TauSweepTable tau_sweep(const HamiltonianPath& path, const CosetChart& chart,
                        const std::vector<double>& taus, double reference_omega,
                        int init_index, const EvolveOptions& opts = {});

}  // namespace liephase
