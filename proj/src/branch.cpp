#include "zs/branch.hpp"

#include <cmath>

namespace zs {

namespace {

cplx sinc(cplx x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

// sin(lambda)/(j pi - lambda), regular at lambda = j pi
cplx sin_over(int j, cplx lambda) { return -parity(j) * sinc(lambda - j * pi); }

}  // namespace

cplx s_root(cplx a, cplx b, cplx lambda, double cut_tol) {
  const cplx tau = (a + b) / 2.0, gamma = b - a;
  if (gamma == cplx{}) return tau - lambda;
  const cplx z = (lambda - tau) / (gamma / 2.0);
  if (std::abs(z.imag()) < cut_tol && std::abs(z.real()) <= 1.0) throw CutError("s-root evaluated on its cut");
  return (tau - lambda) * std::sqrt(1.0 - 1.0 / (z * z));
}

ProductTail ProductTail::free(int N, int M) {
  ProductTail t;
  t.N = N;
  for (int m = N + 1; m <= M; ++m) {
    t.pos.push_back(m * pi);
    t.neg.push_back(-m * pi);
  }
  return t;
}

cplx ProductTail::eval(cplx lambda) const {
  // \prod_{|m|>N} (m pi - lambda)/(m pi) = sin(lambda) / (lambda \prod_{m<=N} (1 - lambda^2/(m pi)^2)),
  // with the factor nearest to lambda folded into sin(lambda)/(j pi - lambda).
  const int j = static_cast<int>(std::lround(lambda.real() / pi));
  const int aj = std::abs(j);
  const int Mx = M();
  cplx finite = 1.0;
  for (int m = 1; m <= N; ++m)
    if (m != aj) finite *= 1.0 - lambda * lambda / (m * m * pi * pi);
  cplx z;
  bool folded = false;
  if (j == 0) {
    z = sinc(lambda) / finite;
  } else if (aj <= N) {
    // sin/(lambda (1 - lambda^2/(j pi)^2)) = s_j (j pi)^2 / (lambda (j pi + lambda))
    z = sin_over(j, lambda) * (j * pi) * (j * pi) / (lambda * finite * (j * pi + lambda));
  } else if (aj <= Mx) {
    z = sin_over(j, lambda) * (root(j) - lambda) / (lambda * finite);
    folded = true;
  } else {
    z = std::sin(lambda) / (lambda * finite);
  }
  for (int m = N + 1; m <= Mx; ++m) {
    if (!(folded && m == aj && j > 0)) z *= (pos[m - N - 1] - lambda) / (m * pi - lambda);
    if (!(folded && m == aj && j < 0)) z *= (neg[m - N - 1] - lambda) / (-m * pi - lambda);
  }
  if (c1 != cplx{}) {
    const double X = Mx + 0.5;
    const cplx a = lambda / pi;
    const cplx r = a / X;
    const cplx L = std::abs(r) < 1e-3 ? (2.0 / X) * (1.0 + r * r / 3.0 + r * r * r * r / 5.0)
                                      : std::log((X + a) / (X - a)) / a;
    z *= std::exp(c1 / (pi * pi) * L);
  }
  return z;
}

cplx entire_product(const Indexed& sigma, const ProductTail& tail, cplx lambda) {
  cplx p = -tail.eval(lambda);
  for (int m = -sigma.N; m <= sigma.N; ++m) p *= (sigma[m] - lambda) / pi_m(m);
  return p;
}

cplx skipped_product(const Indexed& sigma, const ProductTail& tail, int n, cplx lambda) {
  cplx p = tail.eval(lambda) / pi_m(n);
  for (int m = -sigma.N; m <= sigma.N; ++m)
    if (m != n) p *= (sigma[m] - lambda) / pi_m(m);
  return p;
}

cplx interpolate(const Indexed& sigma, const Indexed& values, const ProductTail& tail, cplx z) {
  cplx s{};
  for (int n = -sigma.N; n <= sigma.N; ++n) {
    if (values[n] == cplx{}) continue;
    s += values[n] * skipped_product(sigma, tail, n, z) / skipped_product(sigma, tail, n, sigma[n]);
  }
  return s;
}

std::vector<cplx> hilbert_transform(std::span<const cplx> x) {
  const auto n = static_cast<long>(x.size());
  std::vector<cplx> y(x.size());
  for (long i = 0; i < n; ++i)
    for (long m = 0; m < n; ++m)
      if (m != i) y[i] += x[m] / double(m - i);
  return y;
}

}  // namespace zs
