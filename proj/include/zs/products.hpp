#pragma once

#include "zs/spectra.hpp"

#include <functional>
#include <vector>

namespace zs {

// 2i \prod_m s_root(lambda-_m, lambda+_m, lambda)/pi_m; -2i sin(lambda) at phi = 0.
// Gaps beyond the record are closed at the stored Delta-dot roots.
cplx c_root(const SpectrumRecord& s, cplx lambda, double cut_tol = 1e-12);

// Product representations of chi_p, Delta-dot and chi_d from a record.
cplx chi_p_product(const SpectrumRecord& s, cplx lambda);
cplx delta_dot_product(const SpectrumRecord& s, cplx lambda);
cplx chi_d_product(const SpectrumRecord& s, cplx lambda);

// Trapezoidal rule on the isolating circle Gamma_m for \oint f / c_root:
// weights hold d lambda / c_root(lambda). Nodes double until the moments of
// 1/c_root settle.
struct GammaRule {
  int m = 0;
  Circle circle;
  std::vector<cplx> nodes, weights;

  template <class F>
  cplx integrate(F&& f) const {
    cplx s{};
    for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * f(nodes[j]);
    return s;
  }
};
GammaRule gamma_rule(const SpectrumRecord& s, int m, const Tolerances& tol = default_tolerances());
std::vector<GammaRule> gamma_rules(const SpectrumRecord& s, const Tolerances& tol = default_tolerances());

// A_m f = \oint_{Gamma_m} f / c_root
inline cplx a_functional(const GammaRule& rule, const std::function<cplx(cplx)>& f) { return rule.integrate(f); }

}  // namespace zs
