#pragma once

#include "zs/gradients.hpp"
#include "zs/psi.hpp"

#include <optional>
#include <vector>

namespace zs {

// chi_n(lambda) = \prod_{m != n, |m| <= N} (lambda-dot_m - lambda)/s_root_m(lambda)
cplx collapse_factor(const SpectrumRecord& s, int n, cplx lambda);

struct ActionValue {
  cplx value;           // I_n
  cplx alt;             // centred form (1/pi) \oint (lambda - lambda-dot_n) Delta-dot / c_root
  cplx zero_integral;   // \oint Delta-dot / c_root, vanishes for a consistent branch
  bool limit = false;   // near-collapsed: gamma^2/4 chi_n(tau_n)
};
// Contour values use Delta-dot from the ODE at the rule nodes.
ActionValue action(const Potential& phi, const SpectrumRecord& s, const GammaRule& rule,
                   const Tolerances& tol = default_tolerances());

// sqrt(4 I_n / gamma_n^2); sqrt(chi_n(tau_n)) at (near-)collapsed gaps.
cplx xi_value(const SpectrumRecord& s, int n, cplx action_value);

// dI_n = -(1/pi) \oint dDelta / c_root
GradientField grad_action(const Potential& phi, const GammaRule& rule,
                          const GridPtr& grid = default_grid(), const Tolerances& tol = default_tolerances());

// \int_{lambda-_m}^{mu*_m} psi_n / sqrt(Delta^2 - 4) on the sheet where the root equals
// delta(mu_m) at mu_m. Real-type only; zero for collapsed m.
double angle_term(const SpectrumRecord& s, const SigmaSequence& sigma, int m, int nodes = 48);

struct BirkhoffEntry {
  int n = 0;
  double I = 0.0;
  cplx xi{};
  std::optional<double> eta;  // absent on collapsed gaps
  double beta = 0.0;          // sum_{m != n} beta^n_m
  double theta = 0.0;         // [0, 2 pi)
  cplx z_plus{}, z_minus{};
  double x = 0.0, y = 0.0;
  bool collapsed = false;
  bool near_branch = false;   // theta within 1e-6 of the 0/2pi seam
};

struct BirkhoffCoordinates {
  int N = 0;
  std::vector<BirkhoffEntry> entries;  // n = -N..N
  cplx h_tau{};
  const BirkhoffEntry& operator[](int n) const { return entries[n + N]; }
};

// Real-type potentials only. birkhoff_map works on a padded spectrum and
// reports |n| <= N; birkhoff_from reports |n| <= report (all of s when negative).
BirkhoffCoordinates birkhoff_map(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
BirkhoffCoordinates birkhoff_from(const Potential& phi, const SpectrumRecord& s,
                                  const Tolerances& tol = default_tolerances(), int report = -1);

}  // namespace zs
