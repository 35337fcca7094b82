#include "doctest.h"
#include "oracles.hpp"
#include "zs/transfer.hpp"

#include <random>

using namespace zs;

namespace {

double mdiff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

cplx wron(const Eigen::Vector2cd& g, const Eigen::Vector2cd& h) { return g(0) * h(1) - g(1) * h(0); }

Eigen::Vector2cd star(const Eigen::Vector2cd& g, const Eigen::Vector2cd& h) { return {g(1) * h(1), g(0) * h(0)}; }

}  // namespace

TEST_CASE("zero potential closed form") {
  const Potential zero;
  for (cplx lam : {cplx(0.7, 0.0), cplx(3.0, -1.5), cplx(-10.0, 2.0)})
    for (double t : {0.0, 0.4, 1.0}) {
      const auto s = fundamental_solution(zero, lam, t, 2);
      CHECK(std::abs(s.m1() - std::exp(-I * lam * t)) == 0.0);
      CHECK(std::abs(s.m4() - std::exp(I * lam * t)) == 0.0);
      CHECK(s.m2() == cplx{});
      CHECK(s.m3() == cplx{});
      CHECK(std::abs(s.dm(0, 0) + I * t * std::exp(-I * lam * t)) < 1e-15);
    }
}

TEST_CASE("initial condition") {
  const auto p = Potential::random(1, 3, 0.7);
  const auto s = fundamental_solution(p, cplx(4.0, 1.0), 0.0, 2);
  CHECK(s.m == Mat2::Identity());
  CHECK(s.dm == Mat2::Zero());
  CHECK_THROWS_AS(fundamental_solution(p, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(fundamental_solution(p, 1.0, -0.1), DomainError);
}

TEST_CASE("constant potential matches matrix exponential and series oracle") {
  const Potential p({{0, 1.0}}, {{0, 1.0}});
  const auto s = fundamental_solution(p, 0.0, 1.0, 0);
  // exp of [[0, i], [-i, 0]]: cosh(1) Id + sinh(1) B
  Mat2 B;
  B << 0.0, I, -I, 0.0;
  const Mat2 ex = std::cosh(1.0) * Mat2::Identity() + std::sinh(1.0) * B;
  CHECK(mdiff(s.m, ex) < 1e-13);
  CHECK(mdiff(oracle::neumann_series(p, 0.0), ex) < 1e-13);
}

TEST_CASE("integrator agrees with series oracle and single-mode exact form") {
  for (std::uint64_t seed : {2u, 3u}) {
    auto p = Potential::random(seed, 3, 1.0, seed == 3);
    p = p * (1.0 / p.l2_norm());
    for (cplx lam : {cplx(0.0), cplx(7.3, 0.0), cplx(-9.5, 1.2), cplx(2.0, -6.0)}) {
      const Mat2 ref = oracle::neumann_series(p, lam);
      const Mat2 m = fundamental_solution(p, lam, 1.0, 0).m;
      CHECK(mdiff(m, ref) / std::max(1.0, ref.cwiseAbs().maxCoeff()) < 1e-12);
    }
  }
  const cplx a(0.6, -0.3);
  for (int k : {-2, 1, 3})
    for (cplx lam : {cplx(0.5), cplx(41.0), cplx(-200.0, 0.0), cplx(17.0, 9.0)}) {
      const auto p = Potential::single_mode(a, k);
      const Mat2 ref = oracle::single_mode_exact(a, std::conj(a), k, lam);
      const Mat2 m = fundamental_solution(p, lam, 1.0, 0).m;
      CHECK(mdiff(m, ref) / std::max(1.0, ref.cwiseAbs().maxCoeff()) < 1e-12);
    }
}

TEST_CASE("lambda derivatives match finite differences") {
  const auto p = Potential::random(4, 2, 0.8);
  const cplx lam(2.3, 0.4);
  const auto s = fundamental_solution(p, lam, 1.0, 2);
  const double h = 1e-4;
  const auto sp = fundamental_solution(p, lam + h, 1.0, 1), sm = fundamental_solution(p, lam - h, 1.0, 1);
  const auto sp2 = fundamental_solution(p, lam + 2.0 * h, 1.0, 1), sm2 = fundamental_solution(p, lam - 2.0 * h, 1.0, 1);
  const Mat2 fd1 = (8.0 * (sp.m - sm.m) - (sp2.m - sm2.m)) / (12.0 * h);
  const Mat2 fd2 = (8.0 * (sp.dm - sm.dm) - (sp2.dm - sm2.dm)) / (12.0 * h);
  CHECK(mdiff(fd1, s.dm) < 1e-9);
  CHECK(mdiff(fd2, s.ddm) < 1e-9);
}

TEST_CASE("determinant, reality and growth bound") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    const auto p = Potential::random(100 + rep, 3, 0.8);
    const double nrm = p.l2_norm();
    for (int j = 0; j < 6; ++j) {
      const cplx lam(40.0 * u(rng), j % 2 ? 0.0 : 5.0 * u(rng));
      for (double t : {0.3, 1.0}) {
        const auto s = fundamental_solution(p, lam, t, 0);
        CHECK(std::abs(s.det() - 1.0) < 1e-10);
        const double opnorm = Eigen::JacobiSVD<Mat2>(s.m).singularValues()(0);
        CHECK(opnorm <= std::exp(std::abs(lam.imag()) * t + nrm * std::sqrt(t)) * (1 + 1e-6));
        if (lam.imag() == 0.0) {
          CHECK(std::abs(s.m4() - std::conj(s.m1())) < 1e-10);
          CHECK(std::abs(s.m3() - std::conj(s.m2())) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("spectral scalars") {
  const Potential zero;
  const auto s = spectral_scalars(zero, pi / 2);
  CHECK(std::abs(s.delta) < 1e-15);
  CHECK(std::abs(s.chi_p + 4.0) < 1e-15);
  CHECK(std::abs(s.chi_d - 1.0) < 1e-15);
  CHECK(std::abs(s.chi_n + 1.0) < 1e-15);
  for (int n = -5; n <= 5; ++n) {
    const auto q = spectral_scalars(zero, n * pi);
    CHECK(std::abs(q.delta - 2.0 * parity(n)) < 1e-12);
    CHECK(std::abs(q.chi_p) < 1e-12);
  }
  for (double l : {-3.0, 0.2, 1.7, 12.0})
    CHECK(std::abs(spectral_scalars(zero, l).delta - 2.0 * std::cos(l)) < 1e-12);
  const auto p = Potential::random(5, 3, 0.6);
  for (double l : {-7.0, 0.1, 2.5}) {
    const auto q = spectral_scalars(p, l);
    CHECK(std::abs(q.delta.imag()) < 1e-10);
    CHECK(std::abs(q.chi_d.imag()) < 1e-10);
    CHECK(std::abs(q.chi_n.imag()) < 1e-10);
  }
}

TEST_CASE("Floquet data") {
  const auto [xp, xm] = floquet_multipliers(fundamental_solution(Potential{}, pi / 3, 1.0, 0).m);
  CHECK(std::abs(xp - std::exp(-I * pi / 3.0)) < 1e-15);
  CHECK(std::abs(xm - std::exp(I * pi / 3.0)) < 1e-15);
  CHECK_THROWS_AS(floquet_data(Potential{}, pi / 3), DegenerateError);

  // single mode k=1: gap around -pi of half width |a|
  const auto p = Potential::single_mode(0.3);
  const auto f = floquet_data(p, -pi + 0.1);
  CHECK(std::abs(std::abs(f.xi_plus) - 1.0) > 1e-3);
  CHECK(std::abs(f.xi_plus * f.xi_minus - 1.0) < 1e-10);
  const auto r = Potential::random(6, 3, 0.5);
  for (cplx lam : {cplx(0.3), cplx(4.0, 0.5)}) {
    const Mat2 m = fundamental_solution(r, lam, 1.0, 0).m;
    const auto d = floquet_data(m);
    CHECK(std::abs(m(0, 1) * (d.a_plus + d.a_minus) - (m(1, 1) - m(0, 0))) < 1e-10);
    CHECK(std::abs(m(0, 1) * d.a_plus * d.a_minus + m(1, 0)) < 1e-10);
  }
}

TEST_CASE("solutions g and h; Wronskian identities") {
  const std::vector<double> ts{0.0, 0.25, 0.5, 1.0};
  for (int n : {-2, 0, 3}) {
    const auto gh = solutions_g_h(Potential{}, n * pi, ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      CHECK(std::abs(gh.g[j](0) - std::exp(-I * pi * double(n) * ts[j])) < 1e-15);
      CHECK(std::abs(gh.g[j](1) - std::exp(I * pi * double(n) * ts[j])) < 1e-15);
    }
  }
  const auto p = Potential::random(8, 3, 0.7);
  const auto gh0 = solutions_g_h(p, cplx(1.3, 0.2), std::vector<double>{0.0});
  CHECK((gh0.g[0] - Eigen::Vector2cd(1, 1)).norm() == 0.0);
  CHECK((gh0.h[0] - Eigen::Vector2cd(1, -1)).norm() == 0.0);

  // i d/dt <g,h> = (mu - nu)(g1 h2 + g2 h1) for Lg = mu g, Lh = nu h
  const cplx mu(1.1, 0.3), nu(-0.4, 0.1);
  const double t = 0.37, dt = 1e-3;
  std::vector<double> tt{t - 2 * dt, t - dt, t, t + dt, t + 2 * dt};
  const auto a = solutions_g_h(p, mu, tt), b = solutions_g_h(p, nu, tt);
  std::vector<cplx> w;
  for (int j = 0; j < 5; ++j) w.push_back(wron(a.g[j], b.h[j]));
  const cplx dw = (-w[4] + 8.0 * w[3] - 8.0 * w[1] + w[0]) / (12.0 * dt);
  const cplx rhs = (mu - nu) * (a.g[2](0) * b.h[2](1) + a.g[2](1) * b.h[2](0));
  CHECK(std::abs(I * dw - rhs) < 1e-9);

  // \int <a*b, c*d> = [<a,c><b,d>]_0^1 / (2i(mu - nu)) with a,b at mu and c,d at nu
  const auto grid = default_grid();
  const auto A = solutions_g_h(p, mu, grid->t), C = solutions_g_h(p, nu, grid->t);
  cplx integral{};
  for (std::size_t j = 0; j < grid->size(); ++j)
    integral += grid->w[j] * wron(star(A.g[j], A.h[j]), star(C.g[j], C.h[j]));
  auto boundary = [&](double tb) {
    const auto x = solutions_g_h(p, mu, std::vector<double>{tb}), y = solutions_g_h(p, nu, std::vector<double>{tb});
    return wron(x.g[0], y.g[0]) * wron(x.h[0], y.h[0]);
  };
  const cplx expected = (boundary(1.0) - boundary(0.0)) / (2.0 * I * (mu - nu));
  CHECK(std::abs(integral - expected) < 1e-8);
}

TEST_CASE("discriminant asymptotics") {
  std::vector<double> ts;
  for (double t = 20; t <= 80; t += 5) ts.push_back(t);
  const auto z = discriminant_asymptotic_check(Potential{}, ts);
  for (const auto& r : z.residual) CHECK(std::abs(r) < 1e-12);

  const auto p = Potential::single_mode(0.5);
  const auto f = discriminant_asymptotic_check(p, ts);
  CHECK(f.exponent <= -1.8);
  CHECK(std::abs(f.h_tau_fit - p.h_tau()) < 1e-3);

  // Delta - 2cos - (sin/lambda) H = O(1/lambda^2) on the real line
  const auto r = Potential::random(12, 2, 0.5);
  const cplx h = r.h_tau();
  double prev = 0.0;
  for (double l : {20.3, 40.3, 80.3}) {
    const cplx d = spectral_scalars(r, l, 0).delta;
    const double res = std::abs(d - 2.0 * std::cos(l) - std::sin(l) / l * h);
    CHECK(res * l * l < 20.0);
    prev = res;
  }
  CHECK(prev < 1e-2);
}
