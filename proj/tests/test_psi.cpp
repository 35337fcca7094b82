#include "doctest.h"
#include "zs/psi.hpp"

using namespace zs;

TEST_CASE("psi at zero potential") {
  const auto s = compute_spectrum(Potential{}, 6);
  const auto rules = gamma_rules(s);
  for (int n = -4; n <= 4; ++n) {
    const auto sg = solve_sigma(s, rules, n);
    CHECK(sg.newton_iters == 0);
    for (int m = -6; m <= 6; ++m) CHECK(std::abs(sg.sigma[m] - m * pi) < 1e-12);
    CHECK(std::abs(psi_eval(s, sg, n * pi) - 2.0 * parity(n - 1)) < 1e-10);
    for (int m = -4; m <= 4; ++m) {
      // A_m f_n = -pi delta_mn with c_root = -2i sin at zero
      const cplx a = a_functional(rules[m + 6], [&](cplx l) { return f_product(s, sg.sigma, n, l); });
      CHECK(std::abs(a + (m == n ? pi : 0.0)) < 1e-10);
    }
    const auto Q = jacobian_Q(s, rules, n, sg.sigma);
    Eigen::MatrixXcd expect = -Eigen::MatrixXcd::Identity(13, 13);
    expect(n + 6, n + 6) = 1.0;
    CHECK((Q - expect).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("sigma solve on a real-type potential") {
  const auto phi = Potential::random(31, 3, 1.0);
  const auto s = compute_spectrum(phi, 10);
  const auto rules = gamma_rules(s);
  std::vector<SigmaSequence> all;
  for (int n = -4; n <= 4; ++n) all.push_back(solve_sigma(s, rules, n));

  double worst = 0.0, ratio = 0.0;
  for (const auto& sg : all) {
    CHECK(sg.residual_norm < 1e-11);
    CHECK(sg.newton_iters <= 8);
    for (int m = -4; m <= 4; ++m) {
      const cplx a = a_functional(rules[m + 10], [&](cplx l) { return psi_eval(s, sg, l); }) / (2 * pi);
      worst = std::max(worst, std::abs(a - (m == sg.n ? 1.0 : 0.0)));
    }
    for (int m = -10; m <= 10; ++m) {
      const double x = sg.sigma[m].real();
      CHECK(sg.sigma[m].imag() == 0.0);
      CHECK(x >= s.lam_minus[m].real() - 1e-10);
      CHECK(x <= s.lam_plus[m].real() + 1e-10);
      if (m != sg.n && std::abs(s.gamma_sq[m]) > 1e-12)
        ratio = std::max(ratio, std::abs(sg.sigma[m] - s.tau[m]) / std::abs(s.gamma_sq[m]));
      if (s.gap(m) == GapState::collapsed) CHECK(std::abs(sg.sigma[m] - s.tau[m]) < 1e-12);
    }
    // no root of psi_n inside G_n: the sign is constant across the gap
    const auto& g = s;
    const int n = sg.n;
    if (g.gap(n) == GapState::open) {
      const double a = g.lam_minus[n].real(), b = g.lam_plus[n].real();
      const double va = psi_eval(s, sg, a).real(), vb = psi_eval(s, sg, b).real(), vm = psi_eval(s, sg, (a + b) / 2).real();
      CHECK(va * vb > 0);
      CHECK(va * vm > 0);
    }
  }
  MESSAGE("orthonormality error " << worst << ", sup |sigma - tau|/gamma^2 = " << ratio);
  CHECK(worst < 1e-8);
  CHECK(ratio < 10.0);
}

TEST_CASE("Jacobian against finite differences and truncation stability") {
  const auto phi = Potential::random(41, 2, 0.7);
  const auto s = compute_spectrum(phi, 6);
  const auto rules = gamma_rules(s);
  const int n = 1;
  const auto sg = solve_sigma(s, rules, n);
  const auto Q = jacobian_Q(s, rules, n, sg.sigma);
  const double h = 1e-6;
  for (int r : {-3, 0, 2, 5}) {
    Indexed p = sg.sigma, m = sg.sigma;
    p[r] += h;
    m[r] -= h;
    const Eigen::VectorXcd fd = (residual_F(s, rules, n, p) - residual_F(s, rules, n, m)) / (2 * h);
    for (int k = 0; k < 13; ++k)
      if (k != n + 6) CHECK(std::abs(Q(k, r + 6) - fd(k)) < 1e-6);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Q);
  CHECK(svd.singularValues().minCoeff() > 0.5);

  const auto big = compute_spectrum(phi, 14);
  const auto sg_big = solve_sigma(big, gamma_rules(big), n);
  for (int m = -6; m <= 6; ++m) CHECK(std::abs(sg_big.sigma[m] - sg.sigma[m]) < 1e-8);
}
