#include "zs/flows.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zs {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

// Real-type potentials in the band |k| <= B as (Re c1_k, Im c1_k), k = -B..B.
State to_state(const Potential& phi, int B) {
  const auto d = phi.dense1(B);
  State x(2 * d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    x[2 * i] = d[i].real();
    x[2 * i + 1] = d[i].imag();
  }
  return x;
}

Potential from_state(const State& x) {
  const std::size_t len = x.size() / 2;
  std::vector<cplx> d1(len), d2(len);
  for (std::size_t i = 0; i < len; ++i) d1[i] = {x[2 * i], x[2 * i + 1]};
  for (std::size_t i = 0; i < len; ++i) d2[i] = std::conj(d1[len - 1 - i]);
  return Potential::from_dense(d1, d2);
}

std::vector<cplx> default_monitor_lambdas() {
  return {-7.3, -4.1, -1.7, 0.4, 2.2, 5.9, 8.8, {1.0, 0.5}, {-2.0, 1.0}, {3.5, 0.3}, {0.2, 2.0}};
}

std::vector<cplx> discriminant_on(const Potential& phi, const std::vector<cplx>& lambdas, const Tolerances& tol) {
  std::vector<cplx> d;
  d.reserve(lambdas.size());
  for (cplx l : lambdas) d.push_back(spectral_scalars(phi, l, 0, tol).delta);
  return d;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// phi' = X_n(phi) on the state space; mu_n is continued from the last evaluation.
struct FieldRhs {
  int band;
  GridPtr grid;
  const Tolerances* tol;
  cplx* mu;
  double* residual;

  void operator()(const State& x, State& dx, double /*s*/) const {
    const Potential phi = from_state(x);
    *mu = track_dirichlet(phi, *mu, *tol);
    const auto f = project_field_at(phi, *mu, band, grid, *tol);
    *residual = std::max(*residual, f.residual);
    dx = to_state(f.field, band);
  }
};

}  // namespace

Potential phase_flow(const Potential& phi, double s) {
  const cplx e = std::polar(1.0, s);
  Coeffs a = phi.coeffs1(), b = phi.coeffs2();
  for (auto& [k, v] : a) v *= e;
  for (auto& [k, v] : b) v *= std::conj(e);
  return {std::move(a), std::move(b)};
}

cplx delta_at_dirichlet(const Potential& phi, cplx mu, const Tolerances& tol) {
  const cplx d = spectral_scalars(phi, mu, 0, tol).delta_anti;
  return phi.is_real_type() ? cplx(d.real()) : d;
}

ProjectedField project_field_at(const Potential& phi, cplx mu, int band, const GridPtr& grid,
                                const Tolerances& tol) {
  const auto grad = grad_discriminant(phi, mu, grid, tol);
  const std::size_t len = 2 * band + 1;
  std::vector<cplx> c1(len), c2(len);
  double total = 0, asym = 0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const cplx x1 = I * grad.v[i](1), x2 = -I * grad.v[i](0);
    const double w = grid->w[i];
    total += w * (std::norm(x1) + std::norm(x2));
    asym += w * std::norm(x2 - std::conj(x1));
    for (int k = -band; k <= band; ++k) {
      const cplx e = std::polar(1.0, -2.0 * pi * k * grid->t[i]);
      c1[k + band] += w * x1 * e;
      c2[k + band] += w * x2 * e;
    }
  }
  double kept = 0;
  for (std::size_t i = 0; i < len; ++i) kept += std::norm(c1[i]) + std::norm(c2[i]);

  std::vector<cplx> s1(len), s2(len);
  for (int k = -band; k <= band; ++k) s1[k + band] = 0.5 * (c1[k + band] + std::conj(c2[band - k]));
  for (int k = -band; k <= band; ++k) s2[k + band] = std::conj(s1[band - k]);
  return {Potential::from_dense(s1, s2), std::sqrt(std::max(0.0, total - kept)), std::sqrt(asym)};
}

ProjectedField vector_field_X(const Potential& phi, int n, const Tolerances& tol) {
  if (!phi.is_real_type()) throw DomainError("vector field X_n requires a real-type potential");
  const cplx mu = dirichlet_eigenvalue(phi, n, tol);
  return project_field_at(phi, mu, phi.band_limit() + 8, default_grid(), tol);
}

FlowTrajectory flow_X(const Potential& phi0, int n, double s_max, int samples, const FlowOptions& opt,
                      const Tolerances& tol) {
  if (!phi0.is_real_type()) throw DomainError("flow_X requires a real-type potential");
  if (samples < 2 || !(s_max > 0)) throw DomainError("flow_X needs s_max > 0 and at least two samples");
  const int range = opt.monitor_range > 0 ? opt.monitor_range : std::max(std::abs(n) + 2, 3);
  const SpectrumRecord spec = compute_spectrum(phi0, range, tol);
  if (spec.gap(n) != GapState::open) throw DomainError("flow_X requires an open gap");

  const int band = phi0.band_limit() + opt.band_extra;
  const auto lambdas = opt.monitor_lambdas.empty() ? default_monitor_lambdas() : opt.monitor_lambdas;
  const auto delta0 = discriminant_on(phi0, lambdas, tol);
  const double norm0 = phi0.l2_norm();
  const cplx h0 = phi0.h_tau();

  std::vector<cplx> mus(spec.mu.v);  // tracked mu_m, index m + range
  cplx mu_rhs = spec.mu[n];
  double residual = 0;
  FieldRhs rhs{band, default_grid(), &tol, &mu_rhs, &residual};

  FlowTrajectory out;
  out.n = n;
  auto record = [&](double s, const Potential& phi) {
    FlowState st;
    st.s = s;
    st.phi = phi;
    for (int m = -range; m <= range; ++m) {
      cplx& mu = mus[m + range];
      mu = track_dirichlet(phi, mu, tol);
      if (m != n) st.mu_drift = std::max(st.mu_drift, std::abs(mu - spec.mu[m]));
    }
    st.mu_n = mus[n + range];
    st.delta_mu_n = delta_at_dirichlet(phi, st.mu_n, tol);
    st.delta_drift = max_diff(discriminant_on(phi, lambdas, tol), delta0);
    st.norm_drift = std::abs(phi.l2_norm() - norm0);
    st.h_tau_drift = std::abs(phi.h_tau() - h0);
    st.projection_residual = residual;
    out.max_delta_drift = std::max(out.max_delta_drift, st.delta_drift);
    out.max_mu_drift = std::max(out.max_mu_drift, st.mu_drift);
    out.max_norm_drift = std::max(out.max_norm_drift, st.norm_drift);
    out.max_h_tau_drift = std::max(out.max_h_tau_drift, st.h_tau_drift);
    out.states.push_back(std::move(st));
  };

  State x = to_state(phi0, band);
  record(0.0, phi0);
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  const double h = s_max / (samples - 1);
  for (int i = 1; i < samples; ++i) {
    mu_rhs = mus[n + range];
    odeint::integrate_adaptive(stepper, rhs, x, (i - 1) * h, i * h, h / 4);
    record(i * h, from_state(x));
  }
  out.max_projection_residual = residual;

  // five-point derivative of mu_n against delta(mu_n)/2
  for (int i = 2; i + 2 < samples; ++i) {
    const auto& st = out.states;
    const cplx d = (-st[i + 2].mu_n + 8.0 * st[i + 1].mu_n - 8.0 * st[i - 1].mu_n + st[i - 2].mu_n) / (12.0 * h);
    out.mu_dot_residual = std::max(out.mu_dot_residual, std::abs(d - st[i].delta_mu_n / 2.0));
  }

  std::ostringstream why;
  if (out.max_delta_drift >= opt.max_delta_drift)
    why << "discriminant drift " << out.max_delta_drift;
  else if (out.max_mu_drift >= opt.max_mu_drift)
    why << "Dirichlet drift " << out.max_mu_drift;
  else if (samples >= 5 && out.mu_dot_residual >= opt.max_mu_dot_residual)
    why << "mu_n velocity residual " << out.mu_dot_residual;
  else if (out.max_norm_drift >= opt.max_norm_drift)
    why << "norm drift " << out.max_norm_drift;
  out.breach = why.str();
  if (!out.breach.empty() && opt.abort_on_breach) throw ConvergenceError("flow monitor breached: " + out.breach);
  return out;
}

SteerResult steer_to_target(const Potential& phi0, const std::vector<SteerTarget>& targets, double s_budget,
                            const FlowOptions& opt, const Tolerances& tol) {
  if (!phi0.is_real_type()) throw DomainError("steering requires a real-type potential");
  int range = 1;
  for (const auto& t : targets) range = std::max(range, std::abs(t.n));
  const SpectrumRecord spec = compute_spectrum(phi0, range, tol);
  const int band = phi0.band_limit() + opt.band_extra;
  const auto lambdas = opt.monitor_lambdas.empty() ? default_monitor_lambdas() : opt.monitor_lambdas;
  const auto delta0 = discriminant_on(phi0, lambdas, tol);

  SteerResult res;
  Potential phi = phi0;
  std::vector<cplx> mus(spec.mu.v);
  for (const auto& target : targets) {
    const int n = target.n;
    const double lo = spec.lam_minus[n].real(), hi = spec.lam_plus[n].real();
    if (target.mu < lo - 1e-12 || target.mu > hi + 1e-12)
      throw DomainError("target for gap " + std::to_string(n) + " lies outside the gap");
    const bool endpoint = std::min(std::abs(target.mu - lo), std::abs(target.mu - hi)) < 1e-12;
    const double near = 0.25 * (hi - lo);

    cplx mu = track_dirichlet(phi, mus[n + range], tol);
    cplx del = delta_at_dirichlet(phi, mu, tol);
    auto satisfied = [&](cplx m, cplx d) {
      if (std::abs(m.real() - target.mu) > 1e-10) return false;
      return endpoint || (d.real() >= 0 ? 1 : -1) == target.sign;
    };
    if (satisfied(mu, del)) {
      res.flow_time.push_back(0.0);
      res.mu_reached.push_back(mu);
      res.delta_reached.push_back(del);
      continue;
    }

    cplx mu_rhs = mu;
    double residual = 0;
    FieldRhs rhs{band, default_grid(), &tol, &mu_rhs, &residual};
    auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(to_state(phi, band), 0.0, 0.01);

    // event function on the dense output; mu continued from `guess`
    auto probe = [&](double s, cplx guess) {
      State xs(to_state(phi, band).size());
      stepper.calc_state(s, xs);
      const Potential p = from_state(xs);
      const cplx m = track_dirichlet(p, guess, tol);
      return std::tuple{p, m, delta_at_dirichlet(p, m, tol)};
    };
    auto event_value = [&](cplx m, cplx d) { return endpoint ? d.real() : m.real() - target.mu; };

    bool done = false;
    while (!done) {
      if (stepper.current_time() > s_budget)
        throw ConvergenceError("target for gap " + std::to_string(n) + " not reached within the flow budget");
      const auto [t0, t1] = stepper.do_step(rhs);
      const Potential p1 = from_state(stepper.current_state());
      const cplx m1 = track_dirichlet(p1, mu, tol);
      const cplx d1 = delta_at_dirichlet(p1, m1, tol);
      const double g0 = event_value(mu, del), g1 = event_value(m1, d1);
      const bool crossed = (g0 < 0) != (g1 < 0) || g1 == 0;
      bool accept = crossed;
      if (endpoint) accept = accept && std::abs(m1.real() - target.mu) < near;
      if (accept) {
        double a = t0, b = t1, ga = g0;
        cplx ma = mu;
        while (b - a > 1e-8 * std::max(1.0, b)) {
          const double c = 0.5 * (a + b);
          const auto [pc, mc, dc] = probe(c, ma);
          const double gc = event_value(mc, dc);
          if ((gc < 0) == (ga < 0)) {
            a = c;
            ga = gc;
            ma = mc;
          } else {
            b = c;
          }
        }
        const auto [pb, mb, db] = probe(b, ma);
        // an interior crossing with the wrong sign of delta is passed over
        if (endpoint || (db.real() >= 0 ? 1 : -1) == target.sign) {
          phi = pb;
          res.flow_time.push_back(b);
          res.mu_reached.push_back(mb);
          res.delta_reached.push_back(db);
          done = true;
        }
      }
      mu = m1;
      del = d1;
      mu_rhs = m1;
    }
    for (int m = -range; m <= range; ++m) mus[m + range] = track_dirichlet(phi, mus[m + range], tol);
  }
  res.phi = phi;
  res.max_delta_drift = max_diff(discriminant_on(phi, lambdas, tol), delta0);
  return res;
}

}  // namespace zs
