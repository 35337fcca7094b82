#pragma once

#include "zs/products.hpp"

#include <Eigen/Dense>

#include <vector>

namespace zs {

struct SigmaSequence {
  int n = 0;
  Indexed sigma;  // sigma_n = tau_n
  double residual_norm = 0.0;
  int newton_iters = 0;
  int damped_steps = 0;    // steps shortened to stay in the confinement domain
  bool certified = true;   // false for complex potentials
};

// f_n(sigma, lambda) = (1/pi_n) \prod_{m != n} (sigma_m - lambda)/pi_m with the record's tail.
cplx f_product(const SpectrumRecord& s, const Indexed& sigma, int n, cplx lambda);

// F_m = (n - m) A_m f_n(sigma) for m != n, F_n = sigma_n - tau_n; index m + N.
Eigen::VectorXcd residual_F(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                            const Indexed& sigma);
// Q_mr = (n - m) A_m df_n/dsigma_r, Kronecker in row and column n.
Eigen::MatrixXcd jacobian_Q(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                            const Indexed& sigma);

// Newton from sigma_m = tau_m with damping into the domain
// theta lambda+_{m-1} + (1-theta) lambda-_m < sigma_m < theta lambda-_{m+1} + (1-theta) lambda+_m.
SigmaSequence solve_sigma(const SpectrumRecord& s, const std::vector<GammaRule>& rules, int n,
                          const Tolerances& tol = default_tolerances());
std::vector<SigmaSequence> solve_all_sigma(const SpectrumRecord& s, const std::vector<GammaRule>& rules,
                                           const Tolerances& tol = default_tolerances());

// psi_n(lambda) = -2 f_n(sigma^n, lambda)
cplx psi_eval(const SpectrumRecord& s, const SigmaSequence& sigma, cplx lambda);

}  // namespace zs
