#include "zs/gradients.hpp"

#include <cmath>

namespace zs {

namespace {

void same_grid(const GradientField& a, const GradientField& b) {
  if (a.grid != b.grid) throw DomainError("gradient fields live on different grids");
}

using Vec2 = Eigen::Vector2cd;

Vec2 star(const Vec2& g, const Vec2& h) { return {g(1) * h(1), g(0) * h(0)}; }

}  // namespace

cplx GradientField::directional(const Potential& h) const {
  cplx s{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [h1, h2] = h(grid->t[i]);
    s += grid->w[i] * (v[i](0) * h1 + v[i](1) * h2);
  }
  return s;
}

double GradientField::l2_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += grid->w[i] * v[i].squaredNorm();
  return std::sqrt(s);
}

GradientField& GradientField::operator+=(const GradientField& o) {
  same_grid(*this, o);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}
GradientField& GradientField::operator-=(const GradientField& o) {
  same_grid(*this, o);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}
GradientField& GradientField::operator*=(cplx s) {
  for (auto& x : v) x *= s;
  return *this;
}

GradientField star_product(const GradientField& g, const GradientField& h) {
  same_grid(g, h);
  GradientField out(g.grid);
  for (std::size_t i = 0; i < g.v.size(); ++i) out.v[i] = star(g.v[i], h.v[i]);
  return out;
}

Columns columns_on(const Potential& phi, cplx lambda, const GridPtr& grid, const Tolerances& tol) {
  std::vector<double> times = grid->t;
  times.push_back(1.0);
  const auto ms = fundamental_solution_on(phi, lambda, times, 0, tol);
  Columns c{GradientField(grid), GradientField(grid), ms.back().m};
  for (std::size_t i = 0; i < grid->size(); ++i) {
    c.first.v[i] = ms[i].m.col(0);
    c.second.v[i] = ms[i].m.col(1);
  }
  return c;
}

namespace {

// dDelta from columns: i dDelta = m2 M1*M1 + (m4 - m1) M1*M2 - m3 M2*M2
GradientField grad_delta_from(const Columns& c) {
  const Mat2& m = c.m_hat;
  const cplx a = m(0, 1), b = m(1, 1) - m(0, 0), d = -m(1, 0);
  GradientField out(c.first.grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const Vec2& p = c.first.v[i];
    const Vec2& q = c.second.v[i];
    out.v[i] = -I * (a * star(p, p) + b * star(p, q) + d * star(q, q));
  }
  return out;
}

}  // namespace

GradientField grad_discriminant(const Potential& phi, cplx lambda, const GridPtr& grid, const Tolerances& tol) {
  return grad_delta_from(columns_on(phi, lambda, grid, tol));
}

GradientField grad_discriminant_floquet(const Potential& phi, cplx lambda, const GridPtr& grid,
                                        const Tolerances& tol) {
  const auto c = columns_on(phi, lambda, grid, tol);
  const auto f = floquet_data(c.m_hat, tol);
  GradientField out(grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const Vec2 fp = c.first.v[i] + f.a_plus * c.second.v[i];
    const Vec2 fm = c.first.v[i] + f.a_minus * c.second.v[i];
    out.v[i] = -I * c.m_hat(0, 1) * star(fp, fm);
  }
  return out;
}

GradientField grad_u(const Potential& phi, cplx lambda, const GridPtr& grid, const Tolerances& tol) {
  // i du = h * g with h = (m2 + m4) M1 - (m1 + m3) M2 and g = M1 + M2
  const auto c = columns_on(phi, lambda, grid, tol);
  const Mat2& m = c.m_hat;
  const cplx a = m(0, 1) + m(1, 1), b = m(0, 0) + m(1, 0);
  GradientField out(grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const Vec2 h = a * c.first.v[i] - b * c.second.v[i];
    const Vec2 g = c.first.v[i] + c.second.v[i];
    out.v[i] = -I * star(h, g);
  }
  return out;
}

GradientField grad_mu(const Potential& phi, cplx mu, const GridPtr& grid, const Tolerances& tol) {
  // g * g / (2 chi_d-dot (m3 + m4)) with g = M1 + M2 the Dirichlet solution
  const auto c = columns_on(phi, mu, grid, tol);
  const auto s = spectral_scalars(phi, mu, 1, tol);
  const cplx norm = 2.0 * s.chi_d_dot * (c.m_hat(1, 0) + c.m_hat(1, 1));
  if (std::abs(norm) < 1e-300) throw DegenerateError("Dirichlet eigenfunction norm vanishes");
  GradientField out(grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const Vec2 g = c.first.v[i] + c.second.v[i];
    out.v[i] = star(g, g) / norm;
  }
  return out;
}

GradientField grad_simple_periodic(const Potential& phi, const SpectrumRecord& s, int n, bool plus,
                                   const GridPtr& grid, const Tolerances& tol) {
  if (std::abs(s.gamma_sq[n]) < tol.gap_near_collapse)
    throw DegenerateError("periodic eigenvalue " + std::to_string(n) + " is (nearly) double");
  const cplx lam = plus ? s.lam_plus[n] : s.lam_minus[n];
  const auto sc = spectral_scalars(phi, lam, 1, tol);
  return grad_discriminant(phi, lam, grid, tol) * (-1.0 / sc.delta_dot);
}

TauGammaGradient grad_tau_gamma(const Potential& phi, const SpectrumRecord& s, int n, const GridPtr& grid,
                                const Tolerances& tol) {
  // Integration by parts in the contour formulas:
  // dS1 = -(1/2 pi i) \oint 2 Delta dDelta / chi_p, dS2 = -(1/2 pi i) \oint 4 (lambda - c) Delta dDelta / chi_p
  const Circle& circle = s.circle(n);
  const std::size_t G = grid->size();
  const VecFn integrand = [&](cplx lam) {
    const auto c = columns_on(phi, lam, grid, tol);
    const auto d = grad_delta_from(c);
    const cplx delta = c.m_hat.trace();
    const cplx w = -2.0 * delta / (delta * delta - 4.0);
    const cplx x = 2.0 * (lam - circle.center);
    std::vector<cplx> out(4 * G);
    for (std::size_t i = 0; i < G; ++i) {
      out[2 * i] = w * d.v[i](0);
      out[2 * i + 1] = w * d.v[i](1);
      out[2 * G + 2 * i] = x * w * d.v[i](0);
      out[2 * G + 2 * i + 1] = x * w * d.v[i](1);
    }
    return out;
  };
  const auto r = circle_integral(circle, integrand, tol.contour_min_nodes, tol.contour_max_nodes, tol.contour_rel,
                                 1e-14);
  if (!r.converged) throw ConvergenceError("gradient contour integral did not converge");
  const cplx s1 = 2.0 * (s.tau[n] - circle.center);
  TauGammaGradient out{GradientField(grid), GradientField(grid)};
  for (std::size_t i = 0; i < G; ++i) {
    const Vec2 ds1{r.value[2 * i], r.value[2 * i + 1]};
    const Vec2 ds2{r.value[2 * G + 2 * i], r.value[2 * G + 2 * i + 1]};
    out.tau.v[i] = ds1 / 2.0;
    out.gamma_sq.v[i] = 2.0 * ds2 - 2.0 * s1 * ds1;
  }
  return out;
}

GradientField grad_h_tau(const Potential& phi, const GridPtr& grid) {
  GradientField out(grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const auto [p1, p2] = phi(grid->t[i]);
    out.v[i] = Vec2{p2, p1};
  }
  return out;
}

cplx poisson_bracket(const GradientField& f, const GradientField& g) {
  same_grid(f, g);
  cplx s{};
  for (std::size_t i = 0; i < f.v.size(); ++i)
    s += f.grid->w[i] * (f.v[i](0) * g.v[i](1) - f.v[i](1) * g.v[i](0));
  return I * s;
}

cplx interpolant_p(const SpectrumRecord& s, int n, cplx lambda) {
  return skipped_product(s.mu, s.tail, n, lambda) / skipped_product(s.mu, s.tail, n, s.mu[n]);
}

Potential fourier_direction(int k, bool imaginary) {
  const cplx a = imaginary ? I : cplx(1.0);
  return Potential(Coeffs{{k, a}}, Coeffs{{-k, std::conj(a)}});
}

FourierDifferential fourier_differential(const GradientField& f, int K) {
  FourierDifferential d;
  d.K = K;
  d.along_real.resize(2 * K + 1);
  d.along_imag.resize(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    d.along_real[k + K] = f.directional(fourier_direction(k, false));
    d.along_imag[k + K] = f.directional(fourier_direction(k, true));
  }
  return d;
}

cplx poisson_bracket(const FourierDifferential& f, const FourierDifferential& g) {
  if (f.K != g.K) throw DomainError("Fourier differentials of different band limits");
  // with a_{-k} = (Dr - i Di)/2 and b_k = (Dr + i Di)/2 the bracket becomes
  // -1/2 sum_k (Dr_F Di_G - Di_F Dr_G)
  cplx s{};
  for (std::size_t k = 0; k < f.along_real.size(); ++k)
    s += f.along_real[k] * g.along_imag[k] - f.along_imag[k] * g.along_real[k];
  return -0.5 * s;
}

}  // namespace zs
