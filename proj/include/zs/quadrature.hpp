#pragma once

#include "zs/types.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace zs {

// Gauss-Legendre rule on [0,1], nodes ascending.
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_rule(int n);

// Composite Gauss-Legendre grid on [0,1]. Shared by all gradient fields of
// one computation; compared by identity.
struct Grid {
  std::vector<double> t, w;
  int panels = 0, nodes = 0;
  std::size_t size() const { return t.size(); }
};
using GridPtr = std::shared_ptr<const Grid>;
GridPtr make_grid(int panels, int nodes);
GridPtr default_grid();

// Gauss-Legendre on an arbitrary interval [a,b] applied to f.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

struct Circle {
  cplx center;
  double radius;
  cplx node(int j, int M) const { return center + radius * std::polar(1.0, 2.0 * pi * j / M); }
};

// Trapezoidal rule for (1/(2 pi i)) \oint g(lambda) d lambda on a circle with
// node doubling. g returns a fixed-length vector of integrands.
struct CircleIntegral {
  std::vector<cplx> value;       // at the final resolution
  std::vector<cplx> coarse;      // at half the final resolution
  int nodes = 0;
  bool converged = false;
};
using VecFn = std::function<std::vector<cplx>(cplx)>;
CircleIntegral circle_integral(const Circle& c, const VecFn& g, int min_nodes, int max_nodes, double rel_tol,
                               double abs_floor = 0.0);

}  // namespace zs
