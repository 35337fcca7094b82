#include "doctest.h"
#include "zs/branch.hpp"

#include <random>

using namespace zs;

namespace {

Indexed free_sequence(int N) {
  Indexed s(N);
  for (int m = -N; m <= N; ++m) s[m] = m * pi;
  return s;
}

}  // namespace

TEST_CASE("s-root values and branch") {
  CHECK(std::abs(s_root(-1.0, 1.0, 2.0) + std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(s_root(0.5, 0.5, 2.0) + 1.5) == 0.0);
  CHECK_THROWS_AS(s_root(-1.0, 1.0, 0.3), CutError);
  CHECK_THROWS_AS(s_root(-1.0, 1.0, cplx(1.0, 1e-13)), CutError);
  CHECK_NOTHROW(s_root(-1.0, 1.0, cplx(0.3, 1e-6)));

  // square and continuity along 2 -> 2i -> -2 -> -2i -> 2
  const cplx a{-1.0, 0.2}, b{1.5, -0.3};
  cplx prev = s_root(a, b, 3.0);
  const int steps = 4000;
  double jump = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const cplx lam = 3.0 * std::polar(1.0, 2 * pi * i / steps);
    const cplx v = s_root(a, b, lam);
    CHECK(std::abs(v * v - (a - lam) * (b - lam)) < 1e-13 * std::max(1.0, std::abs(v * v)));
    jump = std::max(jump, std::abs(v - prev));
    prev = v;
  }
  CHECK(jump < 0.01);
  CHECK(std::abs(prev - s_root(a, b, 3.0)) < 1e-14);

  // the continuity-tracked value on the imaginary axis from lambda = 2
  cplx tracked = s_root(-1.0, 1.0, 2.0);
  for (int i = 1; i <= 1000; ++i) {
    const cplx lam = 2.0 * std::polar(1.0, pi / 2 * i / 1000);
    const cplx r = std::sqrt((-1.0 - lam) * (1.0 - lam));
    tracked = std::abs(r - tracked) < std::abs(r + tracked) ? r : -r;
  }
  CHECK(std::abs(tracked - s_root(-1.0, 1.0, cplx(0.0, 2.0))) < 1e-12);
}

TEST_CASE("free products reproduce sin") {
  for (int N : {0, 3, 8}) {
    const auto sigma = free_sequence(N);
    const auto tail = ProductTail::free(N, N + 40);
    for (cplx lam : {cplx(0.3, 0.0), cplx(-7.1, 0.4), cplx(19.5, -2.0), cplx(3 * pi, 0.0), cplx(12.0, 3.0),
                     cplx(-20.0, 0.0), cplx(0.0, 0.0)}) {
      const cplx s = std::sin(lam);
      CHECK(std::abs(entire_product(sigma, tail, lam) - s) < 1e-10 * std::max(1.0, std::abs(s)));
    }
    for (int n = -N; n <= N; ++n) {
      CHECK(std::abs(entire_product(sigma, tail, n * pi)) < 1e-10);
      CHECK(std::abs(skipped_product(sigma, tail, n, n * pi) - parity(n)) < 1e-12);
    }
  }
}

TEST_CASE("tail remainder against a long explicit product") {
  // roots m pi + c/(m pi) for all |m| > N; stored through M, analytic remainder beyond
  const int N = 2, M = 60;
  const cplx c{0.3, 0.1};
  ProductTail t;
  t.N = N;
  t.c1 = c;
  for (int m = N + 1; m <= M; ++m) {
    t.pos.push_back(m * pi + c / (m * pi));
    t.neg.push_back(-m * pi - c / (m * pi));
  }
  // references from a 30-digit log-sum of the full infinite product
  const std::pair<cplx, cplx> ref[] = {
      {cplx(1.0, 0.5), cplx(0.99358474867602756, -0.031829395525733868)},
      {cplx(7.0, -1.0), cplx(0.079987222618875477, 0.083188804185042539)},
      {cplx(3 * pi + 0.01, 0.0), cplx(0.00023511007117374138, 0.00011684366624249376)},
  };
  for (const auto& [lam, want] : ref) CHECK(std::abs(t.eval(lam) / want - 1.0) < 1e-7);
}

TEST_CASE("interpolation") {
  const int N = 64;
  const auto sigma = free_sequence(N);
  const auto tail = ProductTail::free(N, N + 16);
  Indexed ones(N, 1.0), zeros(N);
  CHECK(std::abs(interpolate(sigma, ones, tail, pi / 2) - 1.0) <= 1e-4);
  CHECK(interpolate(sigma, zeros, tail, 0.7) == cplx{});

  // sin(z)/(3 pi - z) vanishes at every m pi except 3 pi, where it is 1
  Indexed vals(N);
  vals[3] = 1.0;
  for (cplx z : {cplx(0.4, 0.0), cplx(2.0, 1.0), cplx(10.3, -0.5)}) {
    const cplx direct = std::sin(z) / (3 * pi - z);
    CHECK(std::abs(interpolate(sigma, vals, tail, z) - direct) < 1e-12);
  }
}

TEST_CASE("discrete Hilbert transform") {
  std::vector<cplx> unit(21);
  unit[10] = 1.0;
  const auto h = hilbert_transform(unit);
  for (int i = 0; i < 21; ++i) {
    const int n = i - 10;
    CHECK(std::abs(h[i] - (n == 0 ? cplx{} : cplx(-1.0 / n))) < 1e-15);
  }

  std::vector<cplx> even(31);
  for (int i = 0; i < 31; ++i) even[i] = 1.0 / (1.0 + (i - 15) * (i - 15));
  const auto he = hilbert_transform(even);
  for (int i = 0; i < 31; ++i) CHECK(std::abs(he[i] + he[30 - i]) < 1e-14);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> x(200);
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto y = hilbert_transform(x);
    double nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nx += std::norm(x[i]);
      ny += std::norm(y[i]);
    }
    CHECK(std::sqrt(ny) <= pi * std::sqrt(nx));
  }
}
