#pragma once

#include <functional>

#include "liephase/types.hpp"

namespace liephase {

struct QuadratureOptions {
  double tol = 1e-10;     // stop when successive composite estimates differ less
  int max_panels = 1 << 14;
  int nodes_per_panel = 12;
};

// Composite Gauss-Legendre integration of f over [a, b] with panel doubling.
// Throws NonConvergence when the panel limit is exceeded.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

RealVector integrate_vector(const std::function<RealVector(double)>& f, double a, double b,
                            int dim, const QuadratureOptions& opts = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre_rule(int n, RealVector& nodes, RealVector& weights);

}  // namespace liephase
