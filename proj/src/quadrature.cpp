#include "liephase/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace liephase {

void gauss_legendre_rule(int n, RealVector& nodes, RealVector& weights) {
  nodes = RealVector(n);
  weights = RealVector(n);
  // Newton iteration on Legendre polynomials, Chebyshev initial guess
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes(i) = -x;
    nodes(n - 1 - i) = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights(i) = w;
    weights(n - 1 - i) = w;
  }
}

namespace {

const RealVector& cached_nodes(int n, bool weights_flag) {
  static std::mutex mu;
  static std::map<int, std::pair<RealVector, RealVector>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    RealVector x, w;
    gauss_legendre_rule(n, x, w);
    it = cache.emplace(n, std::make_pair(x, w)).first;
  }
  return weights_flag ? it->second.second : it->second.first;
}

}  // namespace

RealVector integrate_vector(const std::function<RealVector(double)>& f, double a, double b,
                            int dim, const QuadratureOptions& opts) {
  const RealVector& x = cached_nodes(opts.nodes_per_panel, false);
  const RealVector& w = cached_nodes(opts.nodes_per_panel, true);

  auto composite = [&](int panels) {
    RealVector acc = RealVector::Zero(dim);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double left = a + p * width;
      for (int q = 0; q < opts.nodes_per_panel; ++q) {
        double t = left + 0.5 * width * (x(q) + 1.0);
        acc += (0.5 * width * w(q)) * f(t);
      }
    }
    return acc;
  };

  RealVector prev = composite(1);
  for (int panels = 2; panels <= opts.max_panels; panels *= 2) {
    RealVector cur = composite(panels);
    if ((cur - prev).cwiseAbs().maxCoeff() < opts.tol) return cur;
    prev = cur;
  }
  throw NonConvergence("integrate: panel limit exceeded without meeting tolerance");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  auto wrapped = [&f](double t) {
    RealVector v(1);
    v(0) = f(t);
    return v;
  };
  return integrate_vector(wrapped, a, b, 1, opts)(0);
}

}  // namespace liephase
