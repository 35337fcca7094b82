#include "zs/spectra.hpp"

#include "zs/frame.hpp"
#include "zs/parallel.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace zs {

namespace {

struct Step {
  cplx f, df;
};

// Newton iteration; keep(x) guards the localization region, real projects
// iterates onto the real axis.
cplx newton(const std::function<Step(cplx)>& fn, cplx x, const Tolerances& tol, const std::function<bool(cplx)>& keep,
            bool real, const std::string& what) {
  for (int it = 0; it < tol.newton_max_iter; ++it) {
    const Step s = fn(x);
    if (std::abs(s.f) < tol.newton_f) return x;
    if (s.df == cplx{}) throw ConvergenceError(what + ": vanishing derivative");
    cplx dx = -s.f / s.df;
    if (real) dx = dx.real();
    x += dx;
    if (!keep(x)) throw LocalizationError(what + ": iterate left its localization region");
    if (std::abs(dx) < tol.newton_step * std::max(1.0, std::abs(x))) return x;
  }
  throw ConvergenceError(what + ": Newton did not converge");
}

std::function<Step(cplx)> chi_d_fn(const Potential& phi, const Tolerances& tol) {
  return [&phi, &tol](cplx l) {
    const auto s = spectral_scalars(phi, l, 1, tol);
    return Step{s.chi_d, s.chi_d_dot};
  };
}
std::function<Step(cplx)> chi_n_fn(const Potential& phi, const Tolerances& tol) {
  return [&phi, &tol](cplx l) {
    const auto s = spectral_scalars(phi, l, 1, tol);
    return Step{s.chi_n, s.chi_n_dot};
  };
}
std::function<Step(cplx)> delta_dot_fn(const Potential& phi, const Tolerances& tol) {
  return [&phi, &tol](cplx l) {
    const auto s = spectral_scalars(phi, l, 2, tol);
    return Step{s.delta_dot, s.delta_ddot};
  };
}
std::function<Step(cplx)> periodic_fn(const Potential& phi, int n, const Tolerances& tol) {
  return [&phi, &tol, n](cplx l) {
    const auto s = spectral_scalars(phi, l, 1, tol);
    return Step{s.delta - 2.0 * parity(n), s.delta_dot};
  };
}

bool is_integral(double x, double coarse, double tol) {
  return std::abs(x - std::round(x)) < tol && std::round(x) == std::round(coarse);
}

// Newton root of Delta-dot near m pi confined to D_m.
cplx tail_root(const Potential& phi, int m, cplx guess, const Tolerances& tol) {
  const bool real = phi.is_real_type();
  const cplx centre = m * pi;
  return newton(delta_dot_fn(phi, tol), real ? cplx(guess.real()) : guess, tol,
                [&](cplx x) { return std::abs(x - centre) < pi / 4; }, real, "Delta-dot root " + std::to_string(m));
}

// Pass-one estimates for one index.
struct Estimate {
  cplx tau, gamma_sq;
  cplx mu, nu, dot;
  bool from_disc = false;
  double gamma_abs() const { return std::sqrt(std::abs(gamma_sq)); }
};

Estimate estimate_from_scan(const DiscScan& d) {
  Estimate e;
  const cplx c = d.circle.center;
  e.tau = c + d.s1 / 2.0;
  e.gamma_sq = 2.0 * d.s2 - d.s1 * d.s1;
  e.mu = c + d.m_d;
  e.nu = c + d.m_n;
  e.dot = c + d.m_dot;
  e.from_disc = true;
  return e;
}

bool disc_valid(const DiscScan& d, const Tolerances& tol) {
  return d.integral(tol.count_integrality) && std::lround(d.count_p) == 2 && std::lround(d.count_d) == 1 &&
         std::lround(d.count_n) == 1 && std::lround(d.count_dot) == 1;
}

// Real-type localization of |n| <= L from the real Delta-dot roots in
// [-(L + 3/2) pi, (L + 3/2) pi], which also holds the roots of index +-(L+1).
std::vector<Estimate> real_axis_estimates(const Potential& phi, int L, const Tolerances& tol) {
  const double half = (L + 1.5) * pi;
  const auto ddot = [&](double x) { return spectral_scalars(phi, x, 1, tol).delta_dot.real(); };
  const auto delta = [&](double x) { return spectral_scalars(phi, x, 0, tol).delta.real(); };
  const int want = 2 * L + 3;
  boost::math::tools::eps_tolerance<double> stop(50);

  std::vector<double> roots;
  for (int samples = 64 * (2 * L + 1); samples <= 1024 * (2 * L + 1); samples *= 4) {
    roots.clear();
    const double h = 2 * half / samples;
    double x0 = -half, f0 = ddot(x0);
    for (int i = 1; i <= samples; ++i) {
      const double x1 = -half + i * h, f1 = ddot(x1);
      if (f0 == 0.0) roots.push_back(x0);
      else if (f0 * f1 < 0) {
        std::uintmax_t iters = 100;
        const auto r = boost::math::tools::toms748_solve(ddot, x0, x1, f0, f1, stop, iters);
        roots.push_back((r.first + r.second) / 2);
      }
      x0 = x1;
      f0 = f1;
    }
    if (static_cast<int>(roots.size()) == want) break;
  }
  if (static_cast<int>(roots.size()) != want)
    throw LocalizationError("real-axis scan found " + std::to_string(roots.size()) + " Delta-dot roots, expected " +
                            std::to_string(want));

  std::vector<Estimate> out;
  for (int n = -L; n <= L; ++n) {
    const double dot = roots[n + L + 1];
    const double sd = parity(n) * delta(dot) - 2.0;
    if (sd < -1e-8) throw LocalizationError("periodic labelling failed at index " + std::to_string(n));
    Estimate e;
    e.dot = e.mu = e.nu = dot;
    e.tau = dot;
    e.gamma_sq = 0.0;
    if (sd > 0) {
      const auto g = [&](double x) { return parity(n) * delta(x) - 2.0; };
      const double left = roots[n + L], right = roots[n + L + 2];
      std::uintmax_t it1 = 200, it2 = 200;
      double lm = dot, lp = dot;
      if (g(left) < 0) {
        const auto r = boost::math::tools::toms748_solve(g, left, dot, stop, it1);
        lm = (r.first + r.second) / 2;
      }
      if (g(right) < 0) {
        const auto r = boost::math::tools::toms748_solve(g, dot, right, stop, it2);
        lp = (r.first + r.second) / 2;
      }
      e.tau = (lm + lp) / 2;
      e.gamma_sq = (lp - lm) * (lp - lm);
    }
    out.push_back(e);
  }
  return out;
}


}  // namespace

bool DiscScan::integral(double tol) const {
  return is_integral(count_p, coarse_p, tol) && is_integral(count_d, coarse_d, tol) &&
         is_integral(count_n, coarse_n, tol) && is_integral(count_dot, coarse_dot, tol);
}

DiscScan disc_scan(const Potential& phi, const Circle& c, const Tolerances& tol) {
  const VecFn g = [&](cplx l) {
    const auto s = spectral_scalars(phi, l, 2, tol);
    const cplx x = l - c.center;
    const cplx p = 2.0 * s.delta * s.delta_dot / s.chi_p;
    const cplx d = s.chi_d_dot / s.chi_d;
    const cplx nn = s.chi_n_dot / s.chi_n;
    const cplx dd = s.delta_ddot / s.delta_dot;
    return std::vector<cplx>{p, p * x, p * x * x, d, d * x, nn, nn * x, dd, dd * x};
  };
  const auto r = circle_integral(c, g, tol.contour_min_nodes, tol.contour_max_nodes, tol.contour_rel, 1e-14);
  DiscScan out;
  out.circle = c;
  out.nodes = r.nodes;
  out.converged = r.converged;
  out.count_p = r.value[0].real();
  out.count_d = r.value[3].real();
  out.count_n = r.value[5].real();
  out.count_dot = r.value[7].real();
  out.coarse_p = r.coarse[0].real();
  out.coarse_d = r.coarse[3].real();
  out.coarse_n = r.coarse[5].real();
  out.coarse_dot = r.coarse[7].real();
  out.s1 = r.value[1];
  out.s2 = r.value[2];
  out.m_d = r.value[4];
  out.m_n = r.value[6];
  out.m_dot = r.value[8];
  return out;
}

BallCount ball_count(const Potential& phi, int N, const Tolerances& tol) {
  const Circle c{0.0, (N + 0.5) * pi};
  const VecFn g = [&](cplx l) {
    const auto s = spectral_scalars(phi, l, 1, tol);
    return std::vector<cplx>{2.0 * s.delta * s.delta_dot / s.chi_p};
  };
  int min_nodes = tol.contour_min_nodes;
  while (min_nodes < 16 * (4 * N + 2)) min_nodes *= 2;
  const auto r = circle_integral(c, g, min_nodes, std::max(min_nodes, tol.contour_max_nodes), tol.contour_rel, 1e-12);
  return BallCount{N, r.value[0].real(), r.coarse[0].real(), r.nodes};
}

CountingReport counting_report(const Potential& phi, const Tolerances& tol) {
  std::map<int, DiscScan> cache;
  const auto disc = [&](int n) -> const DiscScan& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, disc_scan(phi, Circle{n * pi, pi / 4}, tol)).first;
    return it->second;
  };
  const auto ok = [&](int n) {
    const auto& d = disc(n);
    return is_integral(d.count_p, d.coarse_p, tol.count_integrality) && std::lround(d.count_p) == 2;
  };
  for (int N = 0; N <= tol.counting_cap; ++N) {
    bool discs = true;
    for (int k = N + 1; k <= N + tol.counting_margin && discs; ++k) discs = ok(k) && ok(-k);
    if (!discs) continue;
    const auto ball = ball_count(phi, N, tol);
    if (is_integral(ball.count, ball.coarse, tol.count_integrality) && std::lround(ball.count) == 4 * N + 2) {
      CountingReport rep;
      rep.N = N;
      rep.ball = ball;
      for (int k = N + 1; k <= N + tol.counting_margin; ++k) {
        rep.discs.emplace(k, disc(k));
        rep.discs.emplace(-k, disc(-k));
      }
      return rep;
    }
  }
  throw LocalizationError("root counts did not stabilize below the counting cap");
}

int counting_threshold(const Potential& phi, const Tolerances& tol) { return counting_report(phi, tol).N; }

TauGamma tau_gamma_by_contour(const Potential& phi, const Circle& c, const Tolerances& tol) {
  const VecFn g = [&](cplx l) {
    const auto s = spectral_scalars(phi, l, 1, tol);
    const cplx x = l - c.center;
    const cplx p = 2.0 * s.delta * s.delta_dot / s.chi_p;
    return std::vector<cplx>{p, p * x, p * x * x};
  };
  const auto r = circle_integral(c, g, tol.contour_min_nodes, tol.contour_max_nodes, tol.contour_rel, 1e-14);
  const double count = r.value[0].real();
  if (!is_integral(count, r.coarse[0].real(), tol.count_integrality) || std::lround(count) != 2)
    throw LocalizationError("contour does not isolate exactly two periodic eigenvalues");
  const cplx s1 = r.value[1], s2 = r.value[2];
  return TauGamma{c.center + s1 / 2.0, 2.0 * s2 - s1 * s1, count};
}

bool lex_less(cplx a, cplx b, double tie) {
  if (std::abs(a.real() - b.real()) <= tie) return a.imag() < b.imag();
  return a.real() < b.real();
}

std::vector<cplx> asymptotic_coefficients(const Potential& phi, int order) {
  using Series = std::map<int, cplx>;
  const auto mul = [](const Series& a, const Series& b) {
    Series r;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) r[i + j] += x * y;
    return r;
  };
  std::vector<Series> w(order + 1);
  for (const auto& [k, v] : phi.coeffs2()) w[1][k] = v / 2.0;
  for (int j = 1; j < order; ++j) {
    Series next;
    for (const auto& [k, v] : w[j]) next[k] += 2.0 * pi * I * double(k) * v;
    Series conv;
    for (int a = 1; a < j; ++a)
      for (const auto& [k, v] : mul(w[a], w[j - a])) conv[k] += v;
    // w_{j+1} = (w_j' + i phi1 sum_{a+b=j} w_a w_b) / (2i)
    for (const auto& [k, v] : mul(phi.coeffs1(), conv)) next[k] += I * v;
    for (auto& [k, v] : next) v /= 2.0 * I;
    w[j + 1] = std::move(next);
  }
  std::vector<cplx> c(order);
  for (int j = 1; j <= order; ++j)
    for (const auto& [k, v] : phi.coeffs1()) {
      const auto it = w[j].find(-k);
      if (it != w[j].end()) c[j - 1] += v * it->second;
    }
  return c;
}

cplx model_root(const std::vector<cplx>& c, int m) {
  cplx x = m * pi;
  for (int it = 0; it < 60; ++it) {
    cplx s{}, p = 1.0;
    for (const cplx cj : c) {
      p /= x;
      s += cj * p;
    }
    const cplx next = m * pi + s;
    if (std::abs(next - x) < 1e-16 * std::abs(x)) return next;
    x = next;
  }
  return x;
}

ProductTail build_tail(const Potential& phi, int N, const Tolerances& tol, const ProductTail* warm) {
  const auto c = asymptotic_coefficients(phi, tol.tail_order);
  ProductTail t;
  t.N = N;
  t.c1 = c.empty() ? cplx{} : c[0];
  const int explicit_to = N + tol.tail_explicit;
  const int M = explicit_to + tol.tail_model;
  t.pos.resize(M - N);
  t.neg.resize(M - N);
  const bool zero = phi.is_zero();
  for (int m = N + 1; m <= M; ++m) {
    t.pos[m - N - 1] = model_root(c, m);
    t.neg[m - N - 1] = model_root(c, -m);
  }
  if (!zero) {
    parallel_for(N + 1, explicit_to + 1, [&](int m) {
      const bool have = warm && warm->N == N && warm->M() >= m;
      t.pos[m - N - 1] = tail_root(phi, m, have ? warm->root(m) : t.pos[m - N - 1], tol);
      t.neg[m - N - 1] = tail_root(phi, -m, have ? warm->root(-m) : t.neg[m - N - 1], tol);
    });
  }
  return t;
}

namespace {

// Pass two for one index: contour on the isolating circle, classification,
// and Newton polishing.
// Confinement for mu, nu and the Delta-dot root: D_n for disc estimates, the
// isolating circle for real-axis estimates, a fixed ball around warm starts.
enum class Confine { disc, circle, warm };

void finish_index(const Potential& phi, SpectrumRecord& s, int n, const Estimate& e, const Circle& circle,
                  const Tolerances& tol, Confine confine) {
  const bool rescan_moments = confine == Confine::circle;
  const bool real = s.real_type;
  const auto k = static_cast<std::size_t>(n + s.N);
  Estimate est = e;
  cplx tau, gsq;
  if (rescan_moments) {
    const auto d = disc_scan(phi, circle, tol);
    if (!disc_valid(d, tol))
      throw LocalizationError("isolating circle of index " + std::to_string(n) + " has inconsistent root counts");
    const auto f = estimate_from_scan(d);
    tau = f.tau;
    gsq = f.gamma_sq;
    est.mu = f.mu;
    est.nu = f.nu;
    est.dot = f.dot;
  } else {
    const auto tg = tau_gamma_by_contour(phi, circle, tol);
    tau = tg.tau;
    gsq = tg.gamma_sq;
  }
  if (real) {
    tau = tau.real();
    gsq = gsq.real();
    if (gsq.real() < 0) {
      if (gsq.real() < -tol.gap_near_collapse)
        throw LocalizationError("negative gap length squared at index " + std::to_string(n));
      gsq = 0.0;
    }
  }
  s.gamma_circle[k] = circle;
  s.gamma_sq[n] = gsq;

  const double g2 = std::abs(gsq);
  const auto inside = [&](cplx x) { return std::abs(x - circle.center) < circle.radius * 1.5; };
  const auto confined = [&](cplx start) {
    return [&, start](cplx x) {
      switch (confine) {
        case Confine::disc: return std::abs(x - n * pi) < pi / 4;
        case Confine::circle: return inside(x);
        case Confine::warm: break;
      }
      return std::abs(x - start) < 0.2;
    };
  };
  cplx lm, lp;
  if (g2 < tol.gap_collapse) {
    s.state[k] = GapState::collapsed;
    lm = lp = tau;
  } else {
    const cplx half = std::sqrt(gsq) / 2.0;
    lm = tau - half;
    lp = tau + half;
    if (g2 < tol.gap_near_collapse) {
      s.state[k] = GapState::near_collapsed;
    } else {
      s.state[k] = GapState::open;
      const auto f = periodic_fn(phi, n, tol);
      lm = newton(f, lm, tol, inside, real, "periodic eigenvalue -" + std::to_string(n));
      lp = newton(f, lp, tol, inside, real, "periodic eigenvalue +" + std::to_string(n));
      if (!real && lex_less(lp, lm, tol.lex_tie)) std::swap(lm, lp);
      if (real && lp.real() < lm.real()) std::swap(lm, lp);
      if (std::abs(lp - lm) < 1e-3 * std::sqrt(g2))
        throw LocalizationError("periodic eigenvalues of index " + std::to_string(n) + " merged under polishing");
      for (const cplx l : {lm, lp})
        if (std::abs(spectral_scalars(phi, l, 0, tol).delta - 2.0 * parity(n)) > 1e-8)
          throw ConvergenceError("periodic eigenvalue residual too large at index " + std::to_string(n));
      tau = (lm + lp) / 2.0;
    }
  }
  if (!real && s.state[k] != GapState::open && lex_less(lp, lm, tol.lex_tie)) std::swap(lm, lp);
  s.lam_minus[n] = lm;
  s.lam_plus[n] = lp;
  s.tau[n] = tau;
  s.gamma[n] = lp - lm;

  const auto project = [&](cplx x) { return real ? cplx(x.real()) : x; };
  s.mu[n] = newton(chi_d_fn(phi, tol), project(est.mu), tol, confined(est.mu), real,
                   "Dirichlet eigenvalue " + std::to_string(n));
  s.nu[n] = newton(chi_n_fn(phi, tol), project(est.nu), tol, confined(est.nu), real,
                   "Neumann eigenvalue " + std::to_string(n));
  s.lam_dot[n] = newton(delta_dot_fn(phi, tol), project(est.dot), tol, confined(est.dot), real,
                        "Delta-dot root " + std::to_string(n));
  const auto at_mu = spectral_scalars(phi, s.mu[n], 0, tol);
  s.delta_mu[n] = project(at_mu.delta_anti);
  s.u_mu[n] = project(at_mu.u);
}

// Isolating radii: min(pi/4, max(2|gamma|, r_min)), capped so neighbouring
// circles stay disjoint and each contains its gap.
std::vector<Circle> isolating_circles(const std::vector<Estimate>& est, const Tolerances& tol) {
  const std::size_t count = est.size();
  std::vector<Circle> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double g = est[i].gamma_abs();
    double r = std::min(tol.isolating_radius_max, std::max(2 * g, tol.isolating_radius_min));
    double clear = 1e300;
    for (const std::size_t j : {i - 1, i + 1}) {
      if (j >= count) continue;
      const double d = std::abs(est[j].tau - est[i].tau) - g / 2 - est[j].gamma_abs() / 2;
      clear = std::min(clear, d);
    }
    if (clear <= 0) throw LocalizationError("neighbouring gaps overlap");
    r = std::max(r, 0.6 * g);
    r = std::min(r, g / 2 + 0.45 * clear);
    out[i] = Circle{est[i].tau, r};
  }
  for (std::size_t i = 0; i + 1 < count; ++i)
    if (std::abs(out[i].center - out[i + 1].center) <= out[i].radius + out[i + 1].radius)
      throw LocalizationError("isolating circles are not disjoint");
  return out;
}

SpectrumRecord empty_record(int N, int counting_N, bool real, cplx h) {
  SpectrumRecord s;
  s.N = N;
  s.counting_N = counting_N;
  s.real_type = real;
  for (Indexed* a : {&s.lam_minus, &s.lam_plus, &s.mu, &s.nu, &s.lam_dot, &s.tau, &s.gamma, &s.gamma_sq, &s.delta_mu,
                     &s.u_mu})
    *a = Indexed(N);
  s.state.assign(2 * N + 1, GapState::collapsed);
  s.gamma_circle.assign(2 * N + 1, Circle{0.0, 0.0});
  s.h_tau = h;
  return s;
}

}  // namespace

SpectrumRecord compute_spectrum(const Potential& phi, int N, const Tolerances& tol) {
  if (N < 0) throw DomainError("truncation index must be nonnegative");
  const bool real = phi.is_real_type();
  const auto report = counting_report(phi, tol);
  std::map<int, DiscScan> scans = report.discs;
  const auto disc = [&](int n) -> const DiscScan& {
    auto it = scans.find(n);
    if (it == scans.end()) it = scans.emplace(n, disc_scan(phi, Circle{n * pi, pi / 4}, tol)).first;
    return it->second;
  };

  // localization threshold: all four counts consistent beyond it
  int L = report.N;
  const auto valid_beyond = [&](int l) {
    for (int k = l + 1; k <= l + tol.counting_margin; ++k)
      if (!disc_valid(disc(k), tol) || !disc_valid(disc(-k), tol)) return false;
    return true;
  };
  while (!valid_beyond(L)) {
    if (++L > tol.counting_cap) throw LocalizationError("Dirichlet/Neumann counts did not stabilize");
  }
  if (!real) {
    for (int n = -N; n <= N; ++n)
      if (std::abs(n) <= L && !disc_valid(disc(n), tol))
        throw LocalizationError("index " + std::to_string(n) +
                                " cannot be isolated by a disc; complex potentials need valid discs");
    L = 0;
  }
  N = std::max(N, real ? L : 0);

  // pass one, plus one neighbour on each side for the radius rule
  std::vector<Estimate> est(2 * N + 3);
  std::vector<Estimate> axis;
  if (real && L > 0) axis = real_axis_estimates(phi, L, tol);
  for (int n = -N - 1; n <= N + 1; ++n) {
    Estimate& e = est[n + N + 1];
    if (real && std::abs(n) <= L && L > 0) e = axis[n + L];
    else e = estimate_from_scan(disc(n));
    if (real) {
      for (cplx* x : {&e.tau, &e.gamma_sq, &e.mu, &e.nu, &e.dot}) *x = x->real();
      e.gamma_sq = std::max(0.0, e.gamma_sq.real());
    }
  }
  const auto circles = isolating_circles(est, tol);

  SpectrumRecord s = empty_record(N, report.N, real, phi.h_tau());
  parallel_for(-N, N + 1, [&](int n) {
    const Estimate& e = est[n + N + 1];
    finish_index(phi, s, n, e, circles[n + N + 1], tol, e.from_disc ? Confine::disc : Confine::circle);
  });
  s.tail = build_tail(phi, N, tol);
  return s;
}

SpectrumRecord update_spectrum(const Potential& phi, const SpectrumRecord& base, const Tolerances& tol) {
  const int N = base.N;
  const bool real = phi.is_real_type();
  SpectrumRecord s = empty_record(N, base.counting_N, real, phi.h_tau());
  parallel_for(-N, N + 1, [&](int n) {
    Estimate e;
    e.tau = base.tau[n];
    e.gamma_sq = base.gamma_sq[n];
    e.mu = base.mu[n];
    e.nu = base.nu[n];
    e.dot = base.lam_dot[n];
    finish_index(phi, s, n, e, base.circle(n), tol, Confine::warm);
  });
  s.tail = build_tail(phi, N, tol, &base.tail);
  return s;
}

std::pair<cplx, cplx> periodic_pair(const Potential& phi, int n, const Tolerances& tol) {
  const auto s = compute_spectrum(phi, std::abs(n), tol);
  return {s.lam_minus[n], s.lam_plus[n]};
}
cplx dirichlet_eigenvalue(const Potential& phi, int n, const Tolerances& tol) {
  return compute_spectrum(phi, std::abs(n), tol).mu[n];
}
cplx neumann_eigenvalue(const Potential& phi, int n, const Tolerances& tol) {
  return compute_spectrum(phi, std::abs(n), tol).nu[n];
}
cplx delta_dot_root(const Potential& phi, int n, const Tolerances& tol) {
  return compute_spectrum(phi, std::abs(n), tol).lam_dot[n];
}

SpectrumRecord padded_spectrum(const Potential& phi, int N, double edge_gap, const Tolerances& tol) {
  int M = std::max(N, phi.band_limit() + 2);
  for (;;) {
    auto s = compute_spectrum(phi, M, tol);
    const double edge = std::max(std::abs(s.gamma_sq[s.N]), std::abs(s.gamma_sq[-s.N]));
    if (edge < edge_gap || s.N >= N + 24) return s;
    M = s.N + 2;
  }
}

cplx track_dirichlet(const Potential& phi, cplx guess, const Tolerances& tol) {
  const bool real = phi.is_real_type();
  const cplx start = real ? cplx(guess.real()) : guess;
  return newton(chi_d_fn(phi, tol), start, tol, [&](cplx x) { return std::abs(x - start) < 0.2; }, real,
                "Dirichlet continuation");
}

cplx star_root(const SpectrumRecord& s, int n) { return s.delta_mu[n]; }

double kappa(const SpectrumRecord& s, int n) {
  if (!s.real_type) throw DomainError("kappa is defined for real-type potentials only");
  const double v = parity(n) * s.u_mu[n].real();
  if (v <= 0) throw ConvergenceError("(-1)^n u(mu_n) is not positive at index " + std::to_string(n));
  return 2.0 * std::log(v);
}

bool collapsed_gap_test(const Potential& phi, const SpectrumRecord& s, int n, double tol_matrix,
                        const Tolerances& tol) {
  const auto m = fundamental_solution(phi, s.mu[n], 1.0, 0, tol).m;
  return (m - parity(n) * Mat2::Identity()).norm() < tol_matrix;
}

double dirichlet_winding(const Potential& phi, cplx mu, int samples, const Tolerances& tol) {
  std::vector<double> times(samples + 1);
  for (int i = 0; i <= samples; ++i) times[i] = double(i) / samples;
  const auto gh = solutions_g_h(phi, mu, times, tol);
  double total = 0.0;
  cplx prev{1.0, 0.0};
  for (const auto& g : gh.g) {
    // AKNS components (p, q); p - i q rotates like exp(i lambda t) at zero potential
    const auto v = zs_to_akns(g);
    const cplx w = v(0) - I * v(1);
    total += std::arg(w / prev);
    prev = w;
  }
  return total;
}

}  // namespace zs
