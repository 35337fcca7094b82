#include "zs/verify.hpp"

#include "zs/parallel.hpp"
#include "zs/products.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace zs {

namespace {

double rel(cplx closed, cplx fd, double floor) { return std::abs(closed - fd) / std::max(std::abs(fd), floor); }

double wrap(double a) { return std::remainder(a, 2 * pi); }

// Shared probe points for discriminant-type functionals.
const std::vector<cplx>& probe_lambdas() {
  static const std::vector<cplx> l{1.3, {-4.0, 0.7}, 7.9, {0.2, -1.1}, -10.4};
  return l;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

const Check* SuiteReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass()) return &c;
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wronskian", "products", "gradients", "brackets",
                                              "actions-sum", "psi-orth", "flow"};
  return names;
}

SuiteReport run_suite(std::string_view suite, const Potential& phi, int N, const Tolerances& tol) {
  if (suite == "wronskian") return wronskian_suite(phi, tol);
  if (suite == "products") return products_suite(phi, N, tol);
  if (suite == "gradients") return gradients_suite(phi, N, tol);
  if (suite == "brackets") return brackets_suite(phi, N, tol);
  if (suite == "actions-sum") return actions_sum_suite(phi, N, tol);
  if (suite == "psi-orth") return psi_orth_suite(phi, N, tol);
  if (suite == "flow") return flow_suite(phi, N, tol);
  throw DomainError("unknown suite '" + std::string(suite) + "'");
}

SuiteReport wronskian_suite(const Potential& phi, const Tolerances& tol) {
  std::vector<double> times;
  for (int i = 1; i <= 10; ++i) times.push_back(i / 10.0);
  std::vector<cplx> lambdas;
  for (int j = 0; j < 20; ++j) lambdas.emplace_back(-20 * pi + 40 * pi * (j + 0.5) / 20, 0.0);
  // moderate imaginary parts keep |M| small enough for an absolute determinant check
  for (int j = 0; j < 20; ++j) lambdas.emplace_back(-19 * pi + 38 * pi * j / 19, (j % 2 ? 1.0 : -1.0) * (0.5 + 2.5 * j / 19));
  std::vector<double> worst(lambdas.size());
  parallel_for(0, static_cast<int>(lambdas.size()), [&](int i) {
    for (const auto& m : fundamental_solution_on(phi, lambdas[i], times, 0, tol))
      worst[i] = std::max(worst[i], std::abs(m.det() - 1.0));
  });
  return {"wronskian", {{"det M = 1 (10 t x 40 lambda)", *std::max_element(worst.begin(), worst.end()), 1e-10}}, {}};
}

SuiteReport products_suite(const Potential& phi, int N, const Tolerances& tol) {
  const auto s = compute_spectrum(phi, std::max(N, 12), tol);
  double wp = 0, wd = 0, wdd = 0, wc = 0;
  for (int k = 0; k <= 12; ++k)
    for (int j = 0; j < 16; ++j) {
      const cplx lam = (k * pi + pi / 2) * std::polar(1.0, 2 * pi * (j + 0.5) / 16);
      const auto d = spectral_scalars(phi, lam, 1, tol);
      const cplx c = c_root(s, lam);
      wp = std::max(wp, rel(chi_p_product(s, lam), d.chi_p, 0));
      wdd = std::max(wdd, rel(delta_dot_product(s, lam), d.delta_dot, 0));
      wd = std::max(wd, rel(chi_d_product(s, lam), d.chi_d, 0));
      wc = std::max(wc, rel(c * c, d.chi_p, 0));
    }
  return {"products",
          {{"chi_p product", wp, 1e-6},
           {"Delta-dot product", wdd, 1e-6},
           {"chi_d product", wd, 1e-6},
           {"c-root squared", wc, 1e-6}},
          {}};
}

SuiteReport gradients_suite(const Potential& phi, int N, const Tolerances& tol) {
  const auto grid = default_grid();
  const int range = std::min(N, 2);
  const auto base = padded_spectrum(phi, std::max(N, 4), 1e-8, tol);
  const auto rules = gamma_rules(base, tol);
  const double eps = 1e-3, floor = 1e-6;
  // four-point central stencil at phi + j eps h, j = -2, -1, 1, 2
  const std::array<double, 4> steps{-2, -1, 1, 2}, weights{1, -8, 8, -1};
  auto stencil = [&](const std::array<cplx, 4>& v) {
    cplx d{};
    for (int i = 0; i < 4; ++i) d += weights[i] * v[i];
    return d / (12 * eps);
  };
  double wd = 0, wu = 0, wmu = 0, wtau = 0, wgam = 0, wI = 0;
  const int Nb = base.N;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = Potential::random(1000 + seed, phi.band_limit() + 2, 1.0);
    std::array<Potential, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = phi + (steps[i] * eps) * h;
    for (cplx lam : probe_lambdas()) {
      std::array<cplx, 4> d, u;
      for (int i = 0; i < 4; ++i) {
        const auto sc = spectral_scalars(p[i], lam, 0, tol);
        d[i] = sc.delta;
        u[i] = sc.u;
      }
      wd = std::max(wd, rel(grad_discriminant(phi, lam, grid, tol).directional(h), stencil(d), floor));
      wu = std::max(wu, rel(grad_u(phi, lam, grid, tol).directional(h), stencil(u), floor));
    }
    std::array<SpectrumRecord, 4> rec;
    std::array<std::vector<GammaRule>, 4> rr;
    for (int i = 0; i < 4; ++i) {
      rec[i] = update_spectrum(p[i], base, tol);
      rr[i] = gamma_rules(rec[i], tol);
    }
    for (int n = -range; n <= range; ++n) {
      std::array<cplx, 4> mu, tau, gsq, act;
      for (int i = 0; i < 4; ++i) {
        mu[i] = rec[i].mu[n];
        tau[i] = rec[i].tau[n];
        gsq[i] = rec[i].gamma_sq[n];
        act[i] = action(p[i], rec[i], rr[i][n + Nb], tol).value;
      }
      wmu = std::max(wmu, rel(grad_mu(phi, base.mu[n], grid, tol).directional(h), stencil(mu), floor));
      const auto tg = grad_tau_gamma(phi, base, n, grid, tol);
      wtau = std::max(wtau, rel(tg.tau.directional(h), stencil(tau), floor));
      wgam = std::max(wgam, rel(tg.gamma_sq.directional(h), stencil(gsq), floor));
      wI = std::max(wI, rel(grad_action(phi, rules[n + Nb], grid, tol).directional(h), stencil(act), floor));
    }
  }
  return {"gradients",
          {{"dDelta", wd, 1e-5},
           {"du", wu, 1e-5},
           {"dmu_n", wmu, 1e-5},
           {"dtau_n", wtau, 1e-5},
           {"dgamma_n^2", wgam, 1e-5},
           {"dI_n", wI, 1e-5}},
          {"10 random directions, four-point central differences with step 1e-3, |n| <= " + std::to_string(range)}};
}

AngleBracketTable angle_brackets(const Potential& phi, int range, int directions, double eps,
                                 const Tolerances& tol) {
  if (!phi.is_real_type()) throw DomainError("angle brackets need a real-type potential");
  const auto base = padded_spectrum(phi, range, 1e-8, tol);
  for (int n = -range; n <= range; ++n)
    if (base.gap(n) != GapState::open) throw DomainError("angle brackets need open gaps |n| <= range");
  const auto rules = gamma_rules(base, tol);
  const int K = directions, R = range, width = 2 * R + 1;

  std::vector<FourierDifferential> dI(width), dtheta(width);
  for (int m = -R; m <= R; ++m) dI[m + R] = fourier_differential(grad_action(phi, rules[m + base.N], default_grid(), tol), K);
  for (auto& d : dtheta) {
    d.K = K;
    d.along_real.resize(2 * K + 1);
    d.along_imag.resize(2 * K + 1);
  }
  auto angles = [&](const Potential& p) {
    const auto b = birkhoff_from(p, update_spectrum(p, base, tol), tol, R);
    std::vector<double> t(width);
    for (int n = -R; n <= R; ++n) t[n + R] = b[n].theta;
    return t;
  };
  for (int k = -K; k <= K; ++k)
    for (bool imaginary : {false, true}) {
      const auto h = fourier_direction(k, imaginary);
      const auto tp = angles(phi + eps * h), tm = angles(phi - eps * h);
      for (int n = 0; n < width; ++n) {
        const double d = wrap(tp[n] - tm[n]) / (2 * eps);
        (imaginary ? dtheta[n].along_imag : dtheta[n].along_real)[k + K] = d;
      }
    }

  AngleBracketTable out;
  out.range = R;
  out.action_angle.resize(width, width);
  out.angle_angle.resize(width, width);
  for (int m = 0; m < width; ++m)
    for (int n = 0; n < width; ++n) {
      out.action_angle(m, n) = poisson_bracket(dI[m], dtheta[n]);
      out.angle_angle(m, n) = poisson_bracket(dtheta[m], dtheta[n]);
    }
  return out;
}

SuiteReport brackets_suite(const Potential& phi, int N, const Tolerances& tol) {
  SuiteReport r{"brackets", {}, {}};
  const auto grid = default_grid();
  const auto s = compute_spectrum(phi, std::max(N, 10), tol);
  const int R = 3;
  std::vector<GradientField> dmu;
  for (int n = -R; n <= R; ++n) dmu.push_back(grad_mu(phi, s.mu[n], grid, tol));
  double wmm = 0, wdm = 0, wdh = 0;
  for (const auto& a : dmu)
    for (const auto& b : dmu) wmm = std::max(wmm, std::abs(poisson_bracket(a, b)));
  const auto dh = grad_h_tau(phi, grid);
  for (cplx lam : probe_lambdas()) {
    const auto dd = grad_discriminant(phi, lam, grid, tol);
    wdh = std::max(wdh, std::abs(poisson_bracket(dd, dh)));
    for (int n = -R; n <= R; ++n)
      wdm = std::max(wdm, std::abs(-2.0 * poisson_bracket(dd, dmu[n + R]) - star_root(s, n) * interpolant_p(s, n, lam)));
  }
  r.checks.push_back({"{mu_m, mu_n}", wmm, 1e-8});
  r.checks.push_back({"-2{Delta, mu_n} - delta(mu_n) p_n", wdm, 1e-6});
  r.checks.push_back({"{Delta, H_tau}", wdh, 1e-8});

  bool angles = phi.is_real_type();
  for (int n = -R; n <= R && angles; ++n) angles = s.gap(n) == GapState::open;
  if (!angles) {
    r.notes.push_back("angle table skipped: needs real type and open gaps |n| <= 3");
    return r;
  }
  const auto t = angle_brackets(phi, R, 12, 1e-4, tol);
  const auto id = Eigen::MatrixXcd::Identity(2 * R + 1, 2 * R + 1);
  r.checks.push_back({"{I_m, theta_n} - delta_mn", (t.action_angle - id).cwiseAbs().maxCoeff(), 1e-4});
  r.checks.push_back({"{theta_m, theta_n}", t.angle_angle.cwiseAbs().maxCoeff(), 1e-4});
  return r;
}

SuiteReport actions_sum_suite(const Potential& phi, int N, const Tolerances& tol) {
  if (!phi.is_real_type()) throw DomainError("actions are implemented for real-type potentials");
  const auto s = padded_spectrum(phi, N, 1e-8, tol);
  const auto rules = gamma_rules(s, tol);
  double sum = 0, neg = 0, alt = 0;
  for (int n = -s.N; n <= s.N; ++n) {
    const auto a = action(phi, s, rules[n + s.N], tol);
    sum += a.value.real();
    neg = std::max(neg, -a.value.real());
    if (!a.limit) alt = std::max(alt, std::abs(a.value - a.alt));
  }
  return {"actions-sum",
          {{"sum I_n - H_tau", std::abs(sum - phi.h_tau().real()), 1e-6},
           {"negative part of I_n", neg, 1e-15},
           {"centred vs primary action", alt, 1e-9}},
          {"truncation N = " + std::to_string(s.N)}};
}

SuiteReport psi_orth_suite(const Potential& phi, int N, const Tolerances& tol) {
  const int R = 4;
  const auto s = padded_spectrum(phi, std::max(N, 2 * R), 1e-8, tol);
  const auto rules = gamma_rules(s, tol);
  double worst = 0, outside = 0, C = 0;
  std::vector<double> ratio(2 * R + 1);
  for (int n = -R; n <= R; ++n) {
    const auto sg = solve_sigma(s, rules, n, tol);
    for (int m = -R; m <= R; ++m) {
      const cplx a = a_functional(rules[m + s.N], [&](cplx l) { return psi_eval(s, sg, l); }) / (2 * pi);
      worst = std::max(worst, std::abs(a - (m == n ? 1.0 : 0.0)));
    }
    for (int m = -s.N; m <= s.N; ++m) {
      if (m == n) continue;
      if (s.real_type) {
        const double x = sg.sigma[m].real();
        outside = std::max({outside, s.lam_minus[m].real() - x, x - s.lam_plus[m].real(), std::abs(sg.sigma[m].imag())});
      }
      if (std::abs(s.gamma_sq[m]) > tol.gap_collapse)
        ratio[n + R] = std::max(ratio[n + R], std::abs(sg.sigma[m] - s.tau[m]) / std::abs(s.gamma_sq[m]));
      else
        outside = std::max(outside, std::abs(sg.sigma[m] - s.tau[m]));
    }
  }
  C = *std::max_element(ratio.begin(), ratio.end());
  SuiteReport r{"psi-orth", {{"orthonormality", worst, 1e-8}}, {}};
  if (s.real_type) r.checks.push_back({"sigma^n_m outside G_m", outside, 1e-10});
  r.notes.push_back("fitted C in |sigma^n_m - tau_m| <= C gamma_m^2: " + std::to_string(C));
  return r;
}

SuiteReport flow_suite(const Potential& phi, int N, const Tolerances& tol) {
  SuiteReport r{"flow", {}, {}};
  double conj = 0, inv = 0;
  const double s = 0.9;
  const auto rotated = phase_flow(phi, s);
  for (cplx lam : probe_lambdas()) {
    const auto a = fundamental_solution(phi, lam, 1.0, 0, tol), b = fundamental_solution(rotated, lam, 1.0, 0, tol);
    conj = std::max({conj, std::abs(b.m1() - a.m1()), std::abs(b.m4() - a.m4()),
                     std::abs(b.m2() - std::polar(1.0, s) * a.m2()), std::abs(b.m3() - std::polar(1.0, -s) * a.m3())});
    inv = std::max(inv, std::abs((b.m1() + b.m4()) - (a.m1() + a.m4())));
  }
  r.checks.push_back({"phase flow conjugation of M", conj, 1e-9});
  r.checks.push_back({"Delta under phase flow", inv, 1e-10});
  if (!phi.is_real_type()) {
    r.notes.push_back("Dirichlet flow skipped: complex potential");
    return r;
  }
  const auto spec = compute_spectrum(phi, std::max(N, 3), tol);
  int n = 0;
  bool found = false;
  for (int a = 0; a <= 2 && !found; ++a)
    for (int cand : {a, -a})
      if (!found && spec.gap(cand) == GapState::open) {
        n = cand;
        found = true;
      }
  if (!found) {
    r.notes.push_back("Dirichlet flow skipped: no open gap with |n| <= 2");
    return r;
  }
  FlowOptions opt;
  opt.abort_on_breach = false;
  const auto t = flow_X(phi, n, 1.0, 51, opt, tol);
  r.notes.push_back("Dirichlet flow of gap " + std::to_string(n) + " over s in [0, 1]");
  r.checks.push_back({"Delta-grid drift", t.max_delta_drift, 1e-5});
  r.checks.push_back({"mu_m drift (m != n)", t.max_mu_drift, 1e-5});
  r.checks.push_back({"mu_n velocity vs delta(mu_n)/2", t.mu_dot_residual, 1e-4});
  r.checks.push_back({"norm drift", t.max_norm_drift, 1e-6});
  return r;
}

}  // namespace zs
