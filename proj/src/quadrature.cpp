#include "zs/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace zs {

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto rule = std::make_unique<GaussRule>();
    // boost returns the nonnegative zeros of P_n
    std::vector<double> xs;
    for (double z : boost::math::legendre_p_zeros<double>(n)) {
      xs.push_back(z);
      if (z != 0.0) xs.push_back(-z);
    }
    std::sort(xs.begin(), xs.end());
    for (double z : xs) {
      const double dp = boost::math::legendre_p_prime(n, z);
      rule->x.push_back((1.0 + z) / 2.0);
      rule->w.push_back(1.0 / ((1.0 - z * z) * dp * dp));  // 2/(..) halved for [0,1]
    }
    slot = std::move(rule);
  }
  return *slot;
}

GridPtr make_grid(int panels, int nodes) {
  if (panels < 1 || nodes < 1) throw DomainError("grid needs at least one panel and one node");
  auto g = std::make_shared<Grid>();
  g->panels = panels;
  g->nodes = nodes;
  const auto& r = gauss_rule(nodes);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p)
    for (int j = 0; j < nodes; ++j) {
      g->t.push_back((p + r.x[j]) * h);
      g->w.push_back(r.w[j] * h);
    }
  return g;
}

GridPtr default_grid() {
  static const GridPtr g = make_grid(32, 8);
  return g;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& r = gauss_rule(n);
  double s = 0.0;
  for (std::size_t j = 0; j < r.x.size(); ++j) s += r.w[j] * f(a + (b - a) * r.x[j]);
  return s * (b - a);
}

CircleIntegral circle_integral(const Circle& c, const VecFn& g, int min_nodes, int max_nodes, double rel_tol,
                               double abs_floor) {
  // (1/2 pi i) \oint g = mean over nodes of g(l_j) (l_j - center)
  std::vector<cplx> sum;
  std::vector<double> scale;
  auto accumulate = [&](int j, int M) {
    const cplx lam = c.node(j, M);
    const auto v = g(lam);
    if (sum.empty()) {
      sum.assign(v.size(), cplx{});
      scale.assign(v.size(), 0.0);
    }
    for (std::size_t q = 0; q < v.size(); ++q) {
      const cplx term = v[q] * (lam - c.center);
      sum[q] += term;
      scale[q] = std::max(scale[q], std::abs(term));
    }
  };

  int M = std::max(2, min_nodes / 2);
  for (int j = 0; j < M; ++j) accumulate(j, M);
  CircleIntegral out;
  std::vector<cplx> prev(sum.size());
  for (std::size_t q = 0; q < sum.size(); ++q) prev[q] = sum[q] / double(M);
  while (true) {
    // add the odd nodes of the doubled rule
    for (int j = 0; j < M; ++j) accumulate(2 * j + 1, 2 * M);
    M *= 2;
    std::vector<cplx> cur(sum.size());
    bool ok = true;
    for (std::size_t q = 0; q < sum.size(); ++q) {
      cur[q] = sum[q] / double(M);
      if (std::abs(cur[q] - prev[q]) > rel_tol * scale[q] + abs_floor) ok = false;
    }
    out.value = cur;
    out.coarse = prev;
    out.nodes = M;
    if (ok && M >= min_nodes) {
      out.converged = true;
      return out;
    }
    if (M >= max_nodes) return out;
    prev = cur;
  }
}

}  // namespace zs
