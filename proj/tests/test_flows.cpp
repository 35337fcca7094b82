#include "doctest.h"
#include "zs/actions.hpp"
#include "zs/flows.hpp"

using namespace zs;

TEST_CASE("phase flow") {
  const auto phi = Potential::random(11, 3, 0.8);
  const auto full = phase_flow(phi, 2 * pi);
  for (const auto& [k, v] : phi.coeffs1()) CHECK(std::abs(full.coeffs1().at(k) - v) < 1e-14);

  const double s = 0.7;
  const auto rotated = phase_flow(phi, s);
  for (cplx l : {cplx(1.3), cplx(-4.0, 0.5), cplx(9.0, -1.0)}) {
    const auto a = fundamental_solution(phi, l, 1.0, 0);
    const auto b = fundamental_solution(rotated, l, 1.0, 0);
    CHECK(std::abs(b.m1() - a.m1()) < 1e-9);
    CHECK(std::abs(b.m4() - a.m4()) < 1e-9);
    CHECK(std::abs(b.m2() - std::polar(1.0, s) * a.m2()) < 1e-9);
    CHECK(std::abs(b.m3() - std::polar(1.0, -s) * a.m3()) < 1e-9);
  }
}

TEST_CASE("Dirichlet-moving field") {
  const auto zero_field = project_field_at(Potential{}, pi, 8);
  CHECK(zero_field.field.l2_norm() < 1e-14);

  const auto phi = Potential::random(3, 2, 0.6);
  const auto f = vector_field_X(phi, 1);
  CHECK(f.field.is_real_type());
  CHECK(f.asymmetry < 1e-10);
  CHECK(f.residual < 1e-8);
  // H_tau is conserved: <dH, X> = 0
  CHECK(std::abs(grad_h_tau(phi).directional(f.field)) < 1e-10);
}

TEST_CASE("flow of X_n keeps the spectrum") {
  const auto phi = Potential::random(3, 2, 0.6);
  const auto s0 = compute_spectrum(phi, 3);
  REQUIRE(s0.gap(1) == GapState::open);
  const auto traj = flow_X(phi, 1, 1.0, 51);
  MESSAGE("delta drift " << traj.max_delta_drift << " mu drift " << traj.max_mu_drift << " velocity "
                         << traj.mu_dot_residual << " norm " << traj.max_norm_drift << " projection "
                         << traj.max_projection_residual);
  CHECK(traj.passed());
  CHECK(traj.max_delta_drift < 1e-5);
  CHECK(traj.max_mu_drift < 1e-5);
  CHECK(traj.mu_dot_residual < 1e-4);
  CHECK(traj.max_norm_drift < 1e-6);
  CHECK(traj.max_h_tau_drift < 1e-6);
  // mu_n stays in its gap and actually moves
  double lo = 1e9, hi = -1e9;
  for (const auto& st : traj.states) {
    CHECK(st.mu_n.real() >= s0.lam_minus[1].real() - 1e-8);
    CHECK(st.mu_n.real() <= s0.lam_plus[1].real() + 1e-8);
    lo = std::min(lo, st.mu_n.real());
    hi = std::max(hi, st.mu_n.real());
  }
  CHECK(hi - lo > 1e-3);
  const auto s1 = compute_spectrum(traj.final(), 3);
  for (int m = -3; m <= 3; ++m) CHECK(std::abs(s1.gamma[m] - s0.gamma[m]) < 1e-5);

  // actions are constants of the flow, the angle of gap 1 is not
  const auto b0 = birkhoff_from(phi, s0);
  const auto b1 = birkhoff_from(traj.final(), s1);
  for (int m = -3; m <= 3; ++m) CHECK(std::abs(b1[m].I - b0[m].I) < 1e-5);
  CHECK(std::abs(b1[1].theta - b0[1].theta) > 1e-3);
}

TEST_CASE("phase flow preserves actions") {
  const auto phi = Potential::random(3, 2, 0.6);
  const auto b0 = birkhoff_map(phi, 3);
  const auto b1 = birkhoff_map(phase_flow(phi, 1.1), 3);
  for (int m = -3; m <= 3; ++m) CHECK(std::abs(b1[m].I - b0[m].I) < 1e-8);
}

TEST_CASE("steering a Dirichlet eigenvalue") {
  const auto phi = Potential::random(3, 2, 0.6);
  const auto s0 = compute_spectrum(phi, 2);
  SUBCASE("identity") {
    const int sgn = s0.delta_mu[1].real() >= 0 ? 1 : -1;
    const auto r = steer_to_target(phi, {{1, s0.mu[1].real(), sgn}});
    CHECK(r.flow_time[0] == 0.0);
  }
  SUBCASE("midpoint then endpoint") {
    const double mid = s0.tau[1].real();
    const auto r = steer_to_target(phi, {{1, mid, +1}, {-1, s0.lam_minus[-1].real(), 0}});
    CHECK(std::abs(r.mu_reached[0].real() - mid) < 1e-5);
    CHECK(r.delta_reached[0].real() > 0);
    CHECK(std::abs(r.mu_reached[1].real() - s0.lam_minus[-1].real()) < 1e-5);
    CHECK(r.max_delta_drift < 1e-5);
    const auto s1 = compute_spectrum(r.phi, 2);
    CHECK(std::abs(s1.mu[1].real() - mid) < 1e-5);
    CHECK(std::abs(s1.mu[-1].real() - s0.lam_minus[-1].real()) < 1e-5);
  }
}
