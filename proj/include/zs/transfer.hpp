#pragma once

#include "zs/config.hpp"
#include "zs/potential.hpp"
#include "zs/types.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace zs {

// M(t, lambda) with optional first and second lambda-derivatives.
struct TransferMatrix {
  double t = 0.0;
  cplx lambda{};
  Mat2 m = Mat2::Identity();
  Mat2 dm = Mat2::Zero();
  Mat2 ddm = Mat2::Zero();
  int derivatives = 0;

  cplx m1() const { return m(0, 0); }
  cplx m2() const { return m(0, 1); }
  cplx m3() const { return m(1, 0); }
  cplx m4() const { return m(1, 1); }
  cplx det() const { return m.determinant(); }
};

// Fundamental solution of iR M' + Phi M = lambda M, M(0) = Id, by fixed-step
// 8-stage Gauss collocation (order 16); exact closed form when phi = 0.
TransferMatrix fundamental_solution(const Potential& phi, cplx lambda, double t, int derivatives = 1,
                                    const Tolerances& tol = default_tolerances());

// Same, sampled at ascending times in [0,1].
std::vector<TransferMatrix> fundamental_solution_on(const Potential& phi, cplx lambda, std::span<const double> times,
                                                    int derivatives = 0,
                                                    const Tolerances& tol = default_tolerances());

struct SpectralScalars {
  cplx lambda{};
  Mat2 m_hat;             // M(1, lambda)
  cplx delta{};           // discriminant m1 + m4
  cplx delta_dot{};       // d/d lambda
  cplx delta_ddot{};      // second derivative (when requested)
  cplx delta_anti{};      // m2 + m3
  cplx u{};               // m1 + m2 + m3 + m4
  cplx chi_p{}, chi_d{}, chi_n{};
  cplx chi_d_dot{}, chi_n_dot{};
};

SpectralScalars scalars_from(const TransferMatrix& at_one);
SpectralScalars spectral_scalars(const Potential& phi, cplx lambda, int derivatives = 1,
                                 const Tolerances& tol = default_tolerances());

// Eigenvalues of M(1); xi_plus is the one closer to m1-hat.
std::pair<cplx, cplx> floquet_multipliers(const Mat2& m_hat);

struct FloquetData {
  cplx xi_plus, xi_minus;
  cplx a_plus, a_minus;  // (xi - m1)/m2
};
// Throws DegenerateError when |m2-hat| is below threshold.
FloquetData floquet_data(const Potential& phi, cplx lambda, const Tolerances& tol = default_tolerances());
FloquetData floquet_data(const Mat2& m_hat, const Tolerances& tol = default_tolerances());

// g = M (1,1)^T and h = M (1,-1)^T sampled at ascending times.
struct SolutionsGH {
  std::vector<Eigen::Vector2cd> g, h;
};
SolutionsGH solutions_g_h(const Potential& phi, cplx lambda, std::span<const double> times,
                          const Tolerances& tol = default_tolerances());

// Principal branch on C minus (-inf, 1].
cplx acosh_principal(cplx z);

struct AsymptoticFit {
  std::vector<double> t;
  std::vector<cplx> residual;   // acosh(Delta(it)/2) - t - H/(2t)
  double exponent = 0.0;        // slope of log|residual| against log t
  cplx h_tau_fit{};             // 2 A from acosh(Delta/2) - t ~ A/t + B/t^2 + C/t^3
  bool all_zero = false;
};
AsymptoticFit discriminant_asymptotic_check(const Potential& phi, std::span<const double> t_values,
                                            const Tolerances& tol = default_tolerances());

}  // namespace zs
