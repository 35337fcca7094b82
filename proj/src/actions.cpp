#include "zs/actions.hpp"

#include "zs/parallel.hpp"

#include <cmath>
#include <string>

namespace zs {

cplx collapse_factor(const SpectrumRecord& s, int n, cplx lambda) {
  cplx p = 1.0;
  for (int m = -s.N; m <= s.N; ++m)
    if (m != n) p *= (s.lam_dot[m] - lambda) / s_root(s.lam_minus[m], s.lam_plus[m], lambda);
  return p;
}

ActionValue action(const Potential& phi, const SpectrumRecord& s, const GammaRule& rule, const Tolerances& tol) {
  const int n = rule.m;
  ActionValue a;
  cplx primary{}, centred{}, zero{};
  const cplx c = rule.circle.center;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const cplx l = rule.nodes[j];
    const cplx d = rule.weights[j] * spectral_scalars(phi, l, 1, tol).delta_dot;
    primary += l * d;
    centred += (l - s.lam_dot[n]) * d;
    zero += d;
  }
  a.alt = centred / pi;
  a.zero_integral = zero;
  // the centred sum carries far less cancellation than the lambda-weighted one
  a.value = (primary - c * zero) / pi;
  if (s.gap(n) != GapState::open) {
    a.limit = true;
    a.value = s.gamma_sq[n] / 4.0 * collapse_factor(s, n, s.tau[n]);
  }
  if (s.real_type) {
    a.value = a.value.real();
    a.alt = a.alt.real();
  }
  return a;
}

cplx xi_value(const SpectrumRecord& s, int n, cplx action_value) {
  if (s.gap(n) != GapState::open) return std::sqrt(collapse_factor(s, n, s.tau[n]));
  return std::sqrt(4.0 * action_value / s.gamma_sq[n]);
}

GradientField grad_action(const Potential& phi, const GammaRule& rule, const GridPtr& grid,
                          const Tolerances& tol) {
  GradientField out(grid);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    out += grad_discriminant(phi, rule.nodes[j], grid, tol) * (-rule.weights[j] / pi);
  return out;
}

double angle_term(const SpectrumRecord& s, const SigmaSequence& sigma, int m, int nodes) {
  if (!s.real_type) throw DomainError("angles are implemented for real-type potentials");
  if (s.gap(m) == GapState::collapsed) return 0.0;
  const double lm = s.lam_minus[m].real(), lp = s.lam_plus[m].real();
  const double tau = (lm + lp) / 2, half = (lp - lm) / 2;
  const double mu = s.mu[m].real();
  const double sign = s.delta_mu[m].real() >= 0 ? 1.0 : -1.0;
  // lambda = tau - half cos(t): psi dlambda / sqrt(Delta^2 - 4) = -f_n |pi_m| / (sign sqrt(G_m)) dt with
  // G_m = \prod_{r != m} (lambda+_r - lambda)(lambda-_r - lambda)/pi_r^2 * tail^2 > 0 inside G_m
  const auto other = [&](double lam) {
    const double q = s.tail.eval(lam).real();
    double g = q * q;
    for (int r = -s.N; r <= s.N; ++r)
      if (r != m) g *= ((s.lam_plus[r].real() - lam) * (s.lam_minus[r].real() - lam)) / (pi_m(r) * pi_m(r));
    return g;
  };
  // Delta^2 - 4 = 4 half^2 sin^2(t) G_m / pi_m^2 and equals delta(mu)^2 at mu. The sine taken from
  // delta(mu) stays accurate at the gap edges, where acos of the endpoint ratio loses half the digits.
  const double sine = std::abs(s.delta_mu[m].real()) * std::abs(pi_m(m)) / (2 * half * std::sqrt(other(mu)));
  const double upper = std::atan2(std::min(sine, 1.0), std::clamp((tau - mu) / half, -1.0, 1.0));
  if (upper == 0.0) return 0.0;
  const auto integrand = [&](double t) {
    const double lam = tau - half * std::cos(t);
    const double f = f_product(s, sigma.sigma, sigma.n, lam).real();
    return -f * std::abs(pi_m(m)) / (sign * std::sqrt(other(lam)));
  };
  return integrate_gl(integrand, 0.0, upper, nodes);
}

BirkhoffCoordinates birkhoff_from(const Potential& phi, const SpectrumRecord& s, const Tolerances& tol,
                                  int report) {
  if (!s.real_type) throw DomainError("the Birkhoff map is implemented for real-type potentials");
  const int N = s.N;
  const int R = report < 0 ? N : std::min(report, N);
  const auto rules = gamma_rules(s, tol);
  BirkhoffCoordinates out;
  out.N = R;
  out.h_tau = s.h_tau;
  out.entries.resize(2 * R + 1);
  parallel_for(-R, R + 1, [&](int n) {
    BirkhoffEntry& e = out.entries[n + R];
    e.n = n;
    const auto a = action(phi, s, rules[n + N], tol);
    if (std::abs(a.zero_integral) > 1e-8)
      throw ConvergenceError("branch check failed on Gamma_" + std::to_string(n));
    e.I = a.value.real();
    e.xi = xi_value(s, n, a.value);
    e.collapsed = s.gap(n) == GapState::collapsed;
    const auto sg = solve_sigma(s, rules, n, tol);
    for (int m = -N; m <= N; ++m)
      if (m != n) e.beta += angle_term(s, sg, m);
    const double gamma = s.gamma[n].real();
    if (!e.collapsed) {
      e.eta = angle_term(s, sg, n);
      const double raw = *e.eta + e.beta;
      e.theta = std::fmod(std::fmod(raw, 2 * pi) + 2 * pi, 2 * pi);
      const double seam = std::min(e.theta, 2 * pi - e.theta);
      e.near_branch = seam < 1e-6;
      e.z_plus = gamma * std::exp(I * *e.eta);
      e.z_minus = gamma * std::exp(-I * *e.eta);
      const double r = e.xi.real() * gamma / std::sqrt(2.0);
      e.x = r * std::cos(e.theta);
      e.y = r * std::sin(e.theta);
    }
  });
  return out;
}

BirkhoffCoordinates birkhoff_map(const Potential& phi, int N, const Tolerances& tol) {
  return birkhoff_from(phi, padded_spectrum(phi, N, 1e-8, tol), tol, N);
}

}  // namespace zs
