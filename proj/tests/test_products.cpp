#include "doctest.h"
#include "zs/products.hpp"

using namespace zs;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

void check_products(const Potential& phi, int N, int kmax, double tol) {
  const auto s = compute_spectrum(phi, N);
  double worst = 0.0;
  for (int k = 0; k <= kmax; ++k)
    for (int j = 0; j < 16; ++j) {
      const cplx lam = (k * pi + pi / 2) * std::polar(1.0, 2 * pi * (j + 0.5) / 16);
      const auto d = spectral_scalars(phi, lam, 1);
      const cplx c = c_root(s, lam);
      for (const double e : {rel(chi_p_product(s, lam), d.chi_p), rel(delta_dot_product(s, lam), d.delta_dot),
                             rel(chi_d_product(s, lam), d.chi_d), rel(c * c, d.chi_p)})
        worst = std::max(worst, e);
    }
  MESSAGE("worst relative product error " << worst);
  CHECK(worst < tol);
}

}  // namespace

TEST_CASE("c-root at zero potential") {
  const auto s = compute_spectrum(Potential{}, 6);
  for (cplx lam : {cplx(0.3, 0.2), cplx(5.0, -1.0), cplx(-17.0, 0.5), cplx(40.0, 3.0)})
    CHECK(std::abs(c_root(s, lam) + 2.0 * I * std::sin(lam)) < 1e-12 * std::max(1.0, std::abs(std::sin(lam))));
}

TEST_CASE("product identities") {
  check_products(Potential::single_mode(0.3, 2), 12, 12, 1e-6);
  check_products(Potential::random(2, 3, 1.0), 12, 12, 1e-6);
  check_products(Potential::random(4, 2, 0.3, true), 12, 12, 1e-6);
}

TEST_CASE("c-root sign above the zeroth gap") {
  // real-type phi with gap 0 open: value just above G_0 is positive up to rounding
  Coeffs c1{{0, 0.4}}, c2{{0, 0.4}};
  const Potential phi(c1, c2);
  const auto s = compute_spectrum(phi, 6);
  REQUIRE(s.gap(0) == GapState::open);
  const cplx v = c_root(s, cplx(s.tau[0].real(), 1e-6));
  MESSAGE("c_root above G_0 = " << v);
  CHECK(std::abs(v / std::abs(v) - 1.0) < 1e-4);
}
