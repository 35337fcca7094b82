#pragma once

#include "zs/branch.hpp"
#include "zs/quadrature.hpp"
#include "zs/spectra.hpp"
#include "zs/transfer.hpp"

#include <Eigen/Dense>

#include <vector>

namespace zs {

// Pair of functions on a Gauss-Legendre grid: (d1, d2) = (v[i](0), v[i](1)).
// Used both for 2-vector solutions and for gradients (dF/dphi1, dF/dphi2).
struct GradientField {
  GridPtr grid;
  std::vector<Eigen::Vector2cd> v;

  GradientField() = default;
  explicit GradientField(GridPtr g) : grid(std::move(g)), v(grid->size(), Eigen::Vector2cd::Zero()) {}

  // \int (d1 h1 + d2 h2) dt
  cplx directional(const Potential& h) const;
  double l2_norm() const;

  GradientField& operator+=(const GradientField& o);
  GradientField& operator-=(const GradientField& o);
  GradientField& operator*=(cplx s);
  friend GradientField operator+(GradientField a, const GradientField& b) { return a += b; }
  friend GradientField operator-(GradientField a, const GradientField& b) { return a -= b; }
  friend GradientField operator*(GradientField a, cplx s) { return a *= s; }
  friend GradientField operator*(cplx s, GradientField a) { return a *= s; }
};

// (g2 h2, g1 h1) pointwise; throws DomainError on grid mismatch.
GradientField star_product(const GradientField& g, const GradientField& h);

// Columns of M(t, lambda) on the grid, plus M(1, lambda).
struct Columns {
  GradientField first, second;
  Mat2 m_hat;
};
Columns columns_on(const Potential& phi, cplx lambda, const GridPtr& grid, const Tolerances& tol = default_tolerances());

GradientField grad_discriminant(const Potential& phi, cplx lambda, const GridPtr& grid = default_grid(),
                                const Tolerances& tol = default_tolerances());
// Floquet form i dDelta = m2-hat f+ * f-; throws DegenerateError when m2-hat is small.
GradientField grad_discriminant_floquet(const Potential& phi, cplx lambda, const GridPtr& grid = default_grid(),
                                        const Tolerances& tol = default_tolerances());
GradientField grad_u(const Potential& phi, cplx lambda, const GridPtr& grid = default_grid(),
                     const Tolerances& tol = default_tolerances());
// Gradient of a Dirichlet eigenvalue mu (given its value).
GradientField grad_mu(const Potential& phi, cplx mu, const GridPtr& grid = default_grid(),
                      const Tolerances& tol = default_tolerances());
// Gradient of a simple periodic eigenvalue; refuses |gamma_n^2| below the near-collapse threshold.
GradientField grad_simple_periodic(const Potential& phi, const SpectrumRecord& s, int n, bool plus,
                                   const GridPtr& grid = default_grid(), const Tolerances& tol = default_tolerances());

struct TauGammaGradient {
  GradientField tau, gamma_sq;
};
TauGammaGradient grad_tau_gamma(const Potential& phi, const SpectrumRecord& s, int n,
                                const GridPtr& grid = default_grid(), const Tolerances& tol = default_tolerances());

// (phi2, phi1) on the grid.
GradientField grad_h_tau(const Potential& phi, const GridPtr& grid = default_grid());

// i \int (dF1 dG2 - dF2 dG1) dt
cplx poisson_bracket(const GradientField& f, const GradientField& g);

// p_n(lambda) = \prod_{m != n} (mu_m - lambda)/(mu_m - mu_n) with the record's tail.
cplx interpolant_p(const SpectrumRecord& s, int n, cplx lambda);

// Derivatives along the real-type Fourier directions
// e_k = (e^{2 pi i k t}, e^{-2 pi i k t}) and i e_k = (i e^{2 pi i k t}, -i e^{-2 pi i k t}), |k| <= K.
struct FourierDifferential {
  int K = 0;
  std::vector<cplx> along_real, along_imag;  // index k + K
};
FourierDifferential fourier_differential(const GradientField& f, int K);
Potential fourier_direction(int k, bool imaginary);
// Bracket from Fourier differentials of two functionals on real-type potentials.
cplx poisson_bracket(const FourierDifferential& f, const FourierDifferential& g);

}  // namespace zs
