#pragma once
// Independent reference computations used only by tests.

#include "zs/potential.hpp"
#include "zs/quadrature.hpp"
#include "zs/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace zs::oracle {

// M(1, lambda) by summing the Neumann series M = sum_n M_n with
// M_{n+1}(t) = \int_0^t E(t-s) Phi~(s) M_n(s) ds, Phi~ = [[0, i phi1], [-i phi2, 0]].
// Cumulative integrals on 128 panels x 16 Gauss nodes with exponential
// weights kept inside each panel so large |Im lambda| stays well conditioned.
inline Mat2 neumann_series(const Potential& phi, cplx lambda, int* terms_used = nullptr) {
  constexpr int P = 128, Q = 16;
  const auto& r = gauss_rule(Q);
  // S(i,j) = \int_0^{x_i} l_j
  Eigen::MatrixXd S(Q, Q);
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) {
      double acc = 0.0;
      for (int q = 0; q < Q; ++q) {
        const double s = r.x[i] * r.x[q];
        double lj = 1.0;
        for (int k = 0; k < Q; ++k)
          if (k != j) lj *= (s - r.x[k]) / (r.x[j] - r.x[k]);
        acc += r.w[q] * lj;
      }
      S(i, j) = acc * r.x[i];
    }
  const double h = 1.0 / P;
  std::vector<cplx> f1(P * Q), f2(P * Q);
  for (int p = 0; p < P; ++p)
    for (int j = 0; j < Q; ++j) std::tie(f1[p * Q + j], f2[p * Q + j]) = phi((p + r.x[j]) * h);

  // term values at nodes: rows 0,1 of the 2x2 matrix as 4 arrays
  std::vector<Mat2> term(P * Q);
  for (int p = 0; p < P; ++p)
    for (int j = 0; j < Q; ++j) {
      const double t = (p + r.x[j]) * h;
      term[p * Q + j] << std::exp(-I * lambda * t), 0.0, 0.0, std::exp(I * lambda * t);
    }
  Mat2 total;
  total << std::exp(-I * lambda), 0.0, 0.0, std::exp(I * lambda);
  const double scale = std::max(1.0, total.cwiseAbs().maxCoeff());
  int n = 0;
  for (; n < 200; ++n) {
    std::vector<Mat2> next(P * Q);
    Mat2 carry = Mat2::Zero();  // value at the left end of the panel
    double sup = 0.0;
    for (int p = 0; p < P; ++p) {
      // g = Phi~ M_n at nodes, weighted by e^{+-i lambda (s - t_p)}
      std::vector<Eigen::Matrix<cplx, 1, 2>> g1(Q), g2(Q);
      for (int j = 0; j < Q; ++j) {
        const Mat2& m = term[p * Q + j];
        const double x = r.x[j] * h;
        g1[j] = (I * f1[p * Q + j]) * m.row(1) * std::exp(I * lambda * x);
        g2[j] = (-I * f2[p * Q + j]) * m.row(0) * std::exp(-I * lambda * x);
      }
      for (int i = 0; i < Q; ++i) {
        Eigen::Matrix<cplx, 1, 2> a1 = carry.row(0), a2 = carry.row(1);
        for (int j = 0; j < Q; ++j) {
          a1 += h * S(i, j) * g1[j];
          a2 += h * S(i, j) * g2[j];
        }
        const double x = r.x[i] * h;
        Mat2 v;
        v.row(0) = a1 * std::exp(-I * lambda * x);
        v.row(1) = a2 * std::exp(I * lambda * x);
        next[p * Q + i] = v;
        sup = std::max(sup, v.cwiseAbs().maxCoeff());
      }
      Eigen::Matrix<cplx, 1, 2> e1 = carry.row(0), e2 = carry.row(1);
      for (int j = 0; j < Q; ++j) {
        e1 += h * r.w[j] * g1[j];
        e2 += h * r.w[j] * g2[j];
      }
      carry.row(0) = e1 * std::exp(-I * lambda * h);
      carry.row(1) = e2 * std::exp(I * lambda * h);
    }
    total += carry;
    term = std::move(next);
    if (std::max(sup, carry.cwiseAbs().maxCoeff()) < 1e-17 * scale) break;
  }
  if (terms_used) *terms_used = n + 1;
  return total;
}

// Exact M(1, lambda) for phi1 = a e^{2 pi i k t}, phi2 = b e^{-2 pi i k t}
// via the gauge y = diag(e^{i pi k t}, e^{-i pi k t}) v.
inline Mat2 single_mode_exact(cplx a, cplx b, int k, cplx lambda) {
  const cplx l = lambda + pi * k;
  Mat2 B;
  B << -I * l, I * a, -I * b, I * l;
  const cplx q = std::sqrt(a * b - l * l);
  const cplx sh = std::abs(q) < 1e-8 ? 1.0 + q * q / 6.0 : std::sinh(q) / q;
  const Mat2 E = std::cosh(q) * Mat2::Identity() + sh * B;
  Mat2 G;
  G << std::exp(I * pi * double(k)), 0.0, 0.0, std::exp(-I * pi * double(k));
  return G * E;
}

inline cplx single_mode_delta(double abs_a, int k, cplx lambda) {
  return 2.0 * parity(k) * std::cos(std::sqrt((lambda + pi * k) * (lambda + pi * k) - abs_a * abs_a));
}

}  // namespace zs::oracle
