#include "zs/products.hpp"

#include "zs/parallel.hpp"

#include <array>
#include <cmath>

namespace zs {

cplx c_root(const SpectrumRecord& s, cplx lambda, double cut_tol) {
  cplx p = 2.0 * I * s.tail.eval(lambda);
  for (int m = -s.N; m <= s.N; ++m) p *= s_root(s.lam_minus[m], s.lam_plus[m], lambda, cut_tol) / pi_m(m);
  return p;
}

cplx chi_p_product(const SpectrumRecord& s, cplx lambda) {
  const cplx q = s.tail.eval(lambda);
  cplx p = -4.0 * q * q;
  for (int m = -s.N; m <= s.N; ++m) p *= (s.lam_plus[m] - lambda) * (s.lam_minus[m] - lambda) / (pi_m(m) * pi_m(m));
  return p;
}

cplx delta_dot_product(const SpectrumRecord& s, cplx lambda) { return -2.0 * entire_product(s.lam_dot, s.tail, lambda); }

cplx chi_d_product(const SpectrumRecord& s, cplx lambda) { return entire_product(s.mu, s.tail, lambda); }

GammaRule gamma_rule(const SpectrumRecord& s, int m, const Tolerances& tol) {
  GammaRule r;
  r.m = m;
  r.circle = s.circle(m);
  const Circle& c = r.circle;
  std::vector<cplx> nodes, inv;  // nodes of the current rule and 1/c_root there
  auto moments = [&](int M) {
    std::array<cplx, 3> mom{};
    for (int j = 0; j < M; ++j) {
      const cplx x = nodes[j] - c.center;
      const cplx w = inv[j] * x;  // d lambda = i x d theta
      mom[0] += w;
      mom[1] += w * x;
      mom[2] += w * x * x;
    }
    for (auto& v : mom) v *= 2.0 * pi * I / double(M);
    return mom;
  };
  auto refine = [&](int M) {
    // rule with M nodes from the one with M/2 by interleaving the odd nodes
    std::vector<cplx> nn(M), ni(M);
    for (int j = 0; j < M; ++j) {
      if (j % 2 == 0 && !nodes.empty()) {
        nn[j] = nodes[j / 2];
        ni[j] = inv[j / 2];
      } else {
        nn[j] = c.node(j, M);
        ni[j] = 1.0 / c_root(s, nn[j], tol.cut);
      }
    }
    nodes = std::move(nn);
    inv = std::move(ni);
  };
  int M = 16;
  refine(M);
  auto prev = moments(M);
  for (;;) {
    M *= 2;
    refine(M);
    const auto cur = moments(M);
    double diff = 0.0, scale = 0.0;
    for (int k = 0; k < 3; ++k) {
      diff = std::max(diff, std::abs(cur[k] - prev[k]) / std::pow(c.radius, k));
      scale = std::max(scale, std::abs(cur[k]) / std::pow(c.radius, k));
    }
    for (const cplx v : inv) scale = std::max(scale, 1e-3 * std::abs(v) * c.radius);
    prev = cur;
    if ((diff <= 1e-14 * scale && M >= 32) || M >= tol.contour_max_nodes) {
      if (diff > 1e-11 * scale) throw ConvergenceError("Gamma contour rule did not converge");
      break;
    }
  }
  r.nodes = nodes;
  r.weights.resize(M);
  for (int j = 0; j < M; ++j) r.weights[j] = inv[j] * (nodes[j] - c.center) * (2.0 * pi * I / double(M));
  return r;
}

std::vector<GammaRule> gamma_rules(const SpectrumRecord& s, const Tolerances& tol) {
  std::vector<GammaRule> out(2 * s.N + 1);
  parallel_for(-s.N, s.N + 1, [&](int m) { out[m + s.N] = gamma_rule(s, m, tol); });
  return out;
}

}  // namespace zs
