#include "doctest.h"
#include "zs/actions.hpp"

using namespace zs;

TEST_CASE("actions and coordinates at zero potential") {
  const Potential zero;
  const auto b = birkhoff_map(zero, 8);
  for (const auto& e : b.entries) {
    CHECK(std::abs(e.I) < 1e-10);
    CHECK(std::abs(e.xi - 1.0) < 1e-10);
    CHECK(e.collapsed);
    CHECK(!e.eta.has_value());
    CHECK(e.z_plus == cplx{});
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
  }
  const auto s = compute_spectrum(zero, 4);
  const auto rules = gamma_rules(s);
  for (int n = -4; n <= 4; ++n) {
    const auto a = action(zero, s, rules[n + 4]);
    CHECK(std::abs(a.alt) < 1e-12);
    CHECK(std::abs(a.zero_integral) < 1e-12);
  }
}

TEST_CASE("single-mode coordinates") {
  // gap -k carries x + i y = -sqrt(2) conj(a); I = |a|^2
  for (int k : {1, -2}) {
    const cplx a(0.03, -0.02);
    const auto b = birkhoff_map(Potential::single_mode(a, k), 3);
    const auto& e = b[-k];
    CHECK(std::abs(e.I - std::norm(a)) < 1e-10);
    CHECK(std::abs(cplx(e.x, e.y) + std::sqrt(2.0) * std::conj(a)) < 1e-8);
    for (int n = -3; n <= 3; ++n)
      if (n != -k) CHECK(b[n].collapsed);
  }
}

TEST_CASE("action identities on a random potential") {
  const auto phi = Potential::random(5, 2, 1.0);
  const auto s = compute_spectrum(phi, 12);
  const auto rules = gamma_rules(s);
  double sum = 0.0;
  for (int n = -12; n <= 12; ++n) {
    const auto a = action(phi, s, rules[n + 12]);
    CHECK(std::abs(a.zero_integral) < 1e-10);
    CHECK(a.value.real() >= -1e-12);
    CHECK(std::abs(a.value.imag()) == 0.0);
    if (!a.limit) CHECK(std::abs(a.value - a.alt) < 1e-9);
    sum += a.value.real();
  }
  CHECK(std::abs(sum - phi.h_tau().real()) < 1e-6);

  const auto b = birkhoff_from(phi, s);
  for (const auto& e : b.entries) {
    CHECK(std::abs((e.x * e.x + e.y * e.y) / 2 - e.I) < 1e-8);
    CHECK(e.theta >= 0.0);
    CHECK(e.theta < 2 * pi);
    if (!e.collapsed) CHECK(std::abs(std::abs(e.z_plus * e.z_minus) - std::norm(s.gamma[e.n])) < 1e-10);
  }
}

TEST_CASE("action gradient against central differences") {
  const auto phi = Potential::random(12, 2, 0.8);
  const auto s = compute_spectrum(phi, 6);
  const auto rules = gamma_rules(s);
  const double eps = 1e-5;
  for (std::uint64_t seed : {1u, 2u}) {
    const auto h = Potential::random(seed + 50, 3, 1.0);
    const auto sp = update_spectrum(phi + eps * h, s), sm = update_spectrum(phi - eps * h, s);
    const auto rp = gamma_rules(sp), rm = gamma_rules(sm);
    for (int n = -2; n <= 2; ++n) {
      if (s.gap(n) != GapState::open) continue;
      const cplx fd =
          (action(phi + eps * h, sp, rp[n + 6]).value - action(phi - eps * h, sm, rm[n + 6]).value) / (2 * eps);
      const cplx closed = grad_action(phi, rules[n + 6]).directional(h);
      CHECK(std::abs(closed - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("angle terms") {
  const auto phi = Potential::random(5, 2, 1.0);
  const auto s = compute_spectrum(phi, 6);
  const auto rules = gamma_rules(s);
  const auto sg = solve_sigma(s, rules, 0);
  // mu at the left gap edge gives a vanishing term
  SpectrumRecord moved = s;
  moved.mu[2] = moved.lam_minus[2];
  moved.delta_mu[2] = 0.0;
  CHECK(angle_term(moved, sg, 2) == 0.0);
  for (int m = -6; m <= 6; ++m)
    if (m != 0) CHECK(std::abs(angle_term(s, sg, m)) <= 2.0 * (std::abs(s.gamma[m]) + std::abs(s.mu[m] - s.tau[m])));
}
