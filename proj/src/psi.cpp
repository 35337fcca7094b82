#include "zs/psi.hpp"

#include "zs/parallel.hpp"

#include <cmath>
#include <string>

namespace zs {

namespace {

// Per-node factors shared by F and Q: G_j = w_j tail(l_j) / pi_n and the
// finite factors (sigma_r - l_j)/pi_r for r != n.
struct NodeProducts {
  std::vector<cplx> base;                 // G_j
  std::vector<std::vector<cplx>> factor;  // [j][r + N], 1 at r = n
};

NodeProducts node_products(const SpectrumRecord& s, const GammaRule& rule, int n, const Indexed& sigma) {
  NodeProducts p;
  const std::size_t J = rule.nodes.size();
  p.base.resize(J);
  p.factor.assign(J, std::vector<cplx>(2 * s.N + 1, 1.0));
  for (std::size_t j = 0; j < J; ++j) {
    const cplx l = rule.nodes[j];
    p.base[j] = rule.weights[j] * s.tail.eval(l) / pi_m(n);
    for (int r = -s.N; r <= s.N; ++r)
      if (r != n) p.factor[j][r + s.N] = (sigma[r] - l) / pi_m(r);
  }
  return p;
}

}  // namespace

cplx f_product(const SpectrumRecord& s, const Indexed& sigma, int n, cplx lambda) {
  return skipped_product(sigma, s.tail, n, lambda);
}

Eigen::VectorXcd residual_F(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                            const Indexed& sigma) {
  const int N = s.N;
  Eigen::VectorXcd F(2 * N + 1);
  for (int m = -N; m <= N; ++m) {
    if (m == n) {
      F(m + N) = sigma[n] - s.tau[n];
      continue;
    }
    const auto& rule = rules[m + N];
    F(m + N) = double(n - m) * rule.integrate([&](cplx l) { return f_product(s, sigma, n, l); });
  }
  return F;
}

Eigen::MatrixXcd jacobian_Q(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                            const Indexed& sigma) {
  const int N = s.N, D = 2 * N + 1;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(D, D);
  Q(n + N, n + N) = 1.0;
  std::vector<cplx> prefix(D + 1), suffix(D + 1);
  for (int m = -N; m <= N; ++m) {
    if (m == n) continue;
    const auto p = node_products(s, rules[m + N], n, sigma);
    for (std::size_t j = 0; j < p.base.size(); ++j) {
      const auto& f = p.factor[j];
      prefix[0] = 1.0;
      for (int k = 0; k < D; ++k) prefix[k + 1] = prefix[k] * f[k];
      suffix[D] = 1.0;
      for (int k = D - 1; k >= 0; --k) suffix[k] = suffix[k + 1] * f[k];
      // d/d sigma_r of factor r is 1/pi_r
      for (int k = 0; k < D; ++k)
        if (k != n + N) Q(m + N, k) += p.base[j] * prefix[k] * suffix[k + 1] / pi_m(k - N);
    }
    Q.row(m + N) *= double(n - m);
    Q(m + N, n + N) = 0.0;
  }
  return Q;
}

SigmaSequence solve_sigma(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                          const Tolerances& tol) {
  const int N = s.N;
  SigmaSequence out;
  out.n = n;
  out.certified = s.real_type;
  out.sigma = s.tau;
  const double theta = tol.v_domain_theta;
  // confinement interval of sigma_m (real type) or disc inside Gamma_m
  const auto admissible = [&](const Indexed& sg) {
    for (int m = -N; m <= N; ++m) {
      if (m == n) continue;
      if (s.real_type) {
        const double lo = m > -N ? theta * s.lam_plus[m - 1].real() + (1 - theta) * s.lam_minus[m].real()
                                 : s.circle(m).center.real() - s.circle(m).radius;
        const double hi = m < N ? theta * s.lam_minus[m + 1].real() + (1 - theta) * s.lam_plus[m].real()
                                : s.circle(m).center.real() + s.circle(m).radius;
        if (!(sg[m].real() > lo && sg[m].real() < hi)) return false;
      } else if (std::abs(sg[m] - s.circle(m).center) >= s.circle(m).radius) {
        return false;
      }
    }
    return true;
  };

  Eigen::VectorXcd F = residual_F(s, rules, n, out.sigma);
  for (int it = 0; it <= tol.sigma_max_iter; ++it) {
    out.residual_norm = F.cwiseAbs().maxCoeff();
    out.newton_iters = it;
    if (out.residual_norm < tol.sigma_residual) return out;
    if (it == tol.sigma_max_iter) break;
    const Eigen::MatrixXcd Q = jacobian_Q(s, rules, n, out.sigma);
    Eigen::VectorXcd step = Q.partialPivLu().solve(-F);
    if (s.real_type) step = step.real().cast<cplx>();
    double scale = 1.0;
    Indexed trial = out.sigma;
    for (int halving = 0; halving < 40; ++halving) {
      for (int m = -N; m <= N; ++m) trial[m] = out.sigma[m] + scale * step(m + N);
      if (admissible(trial)) break;
      scale /= 2;
      ++out.damped_steps;
    }
    if (!admissible(trial)) throw ConvergenceError("sigma iterate left the confinement domain");
    out.sigma = trial;
    F = residual_F(s, rules, n, out.sigma);
  }
  throw ConvergenceError("sigma Newton did not converge for index " + std::to_string(n) + " (residual " +
                         std::to_string(out.residual_norm) + ")");
}

std::vector<SigmaSequence> solve_all_sigma(const SpectrumRecord& s, const std::vector<GammaRule>& rules,
                                           const Tolerances& tol) {
  std::vector<SigmaSequence> out(2 * s.N + 1);
  parallel_for(-s.N, s.N + 1, [&](int n) { out[n + s.N] = solve_sigma(s, rules, n, tol); });
  return out;
}

cplx psi_eval(const SpectrumRecord& s, const SigmaSequence& sigma, cplx lambda) {
  return -2.0 * f_product(s, sigma.sigma, sigma.n, lambda);
}

}  // namespace zs
