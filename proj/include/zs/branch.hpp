#pragma once

#include "zs/types.hpp"

#include <span>
#include <vector>

namespace zs {

// Root of (a - lambda)(b - lambda) continuous off the segment [a,b] and
// asymptotic to (a+b)/2 - lambda. Throws CutError on the segment.
cplx s_root(cplx a, cplx b, cplx lambda, double cut_tol = 1e-12);

// Zeros of an entire product beyond the explicit range |m| <= N:
// stored roots for N < |m| <= M and an analytic remainder for |m| > M from
// sigma_m ~ m pi + c1/(m pi).
struct ProductTail {
  int N = 0;
  std::vector<cplx> pos, neg;  // m = N+1..M and m = -(N+1)..-M
  cplx c1{};

  int M() const { return N + static_cast<int>(pos.size()); }
  cplx root(int m) const { return m > 0 ? pos[m - N - 1] : neg[-m - N - 1]; }

  // \prod_{|m| > N} (sigma_m - lambda)/pi_m
  cplx eval(cplx lambda) const;

  // zero potential tail: sigma_m = m pi for |m| > N
  static ProductTail free(int N, int M);
};

// Values indexed by n = -N..N.
struct Indexed {
  int N = 0;
  std::vector<cplx> v;
  Indexed() = default;
  explicit Indexed(int n, cplx fill = {}) : N(n), v(2 * n + 1, fill) {}
  cplx& operator[](int n) { return v[n + N]; }
  cplx operator[](int n) const { return v[n + N]; }
};

// -\prod_m (sigma_m - lambda)/pi_m; sin(lambda) for sigma_m = m pi.
cplx entire_product(const Indexed& sigma, const ProductTail& tail, cplx lambda);
// (1/pi_n) \prod_{m != n} (sigma_m - lambda)/pi_m
cplx skipped_product(const Indexed& sigma, const ProductTail& tail, int n, cplx lambda);

// Lagrange-type reconstruction sum_n f(sigma_n) \prod_{m != n} (sigma_m - z)/(sigma_m - sigma_n)
// over the stored range, with the same tail completion.
cplx interpolate(const Indexed& sigma, const Indexed& values, const ProductTail& tail, cplx z);

// (Hx)_n = sum_{m != n} x_m/(m - n) over the window.
std::vector<cplx> hilbert_transform(std::span<const cplx> x);

}  // namespace zs
