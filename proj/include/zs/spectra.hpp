#pragma once

#include "zs/branch.hpp"
#include "zs/config.hpp"
#include "zs/potential.hpp"
#include "zs/quadrature.hpp"
#include "zs/transfer.hpp"

#include <map>
#include <optional>
#include <vector>

namespace zs {

// Argument-principle data of chi_p, chi_d, chi_n and Delta-dot on one circle.
// Moments are central (about the circle center).
struct DiscScan {
  Circle circle;
  int nodes = 0;
  double count_p = 0, count_d = 0, count_n = 0, count_dot = 0;             // final resolution
  double coarse_p = 0, coarse_d = 0, coarse_n = 0, coarse_dot = 0;         // half resolution
  cplx s1{}, s2{};                 // sums of roots and squared roots of chi_p
  cplx m_d{}, m_n{}, m_dot{};      // root sums of chi_d, chi_n, Delta-dot
  bool converged = false;

  // all counts integral within tol and unchanged by doubling
  bool integral(double tol = 1e-6) const;
};
DiscScan disc_scan(const Potential& phi, const Circle& c, const Tolerances& tol = default_tolerances());

// Root count of chi_p in B_N = {|lambda| < (N + 1/2) pi}; both resolutions reported.
struct BallCount {
  int N = 0;
  double count = 0, coarse = 0;
  int nodes = 0;
};
BallCount ball_count(const Potential& phi, int N, const Tolerances& tol = default_tolerances());

struct CountingReport {
  int N = 0;
  BallCount ball;
  std::map<int, DiscScan> discs;  // N < |n| <= N + margin
};
CountingReport counting_report(const Potential& phi, const Tolerances& tol = default_tolerances());
int counting_threshold(const Potential& phi, const Tolerances& tol = default_tolerances());

// Contour values (tau_n, gamma_n^2) on an isolating circle.
struct TauGamma {
  cplx tau, gamma_sq;
  double count;
};
TauGamma tau_gamma_by_contour(const Potential& phi, const Circle& c, const Tolerances& tol = default_tolerances());

enum class GapState { open, near_collapsed, collapsed };

struct SpectrumRecord {
  int N = 0;
  int counting_N = 0;
  bool real_type = false;
  Indexed lam_minus, lam_plus, mu, nu, lam_dot, tau, gamma, gamma_sq;
  Indexed delta_mu;  // star root delta(mu_n)
  Indexed u_mu;      // u(mu_n)
  std::vector<GapState> state;   // index n + N
  std::vector<Circle> gamma_circle;  // isolating circles Gamma_n
  ProductTail tail;                   // Delta-dot roots beyond N
  cplx h_tau{};

  GapState gap(int n) const { return state[n + N]; }
  const Circle& circle(int n) const { return gamma_circle[n + N]; }
};

// Full computation with contours; throws LocalizationError when indices
// cannot be isolated.
SpectrumRecord compute_spectrum(const Potential& phi, int N, const Tolerances& tol = default_tolerances());

// compute_spectrum with the truncation raised from N (in steps of 2, at most
// N + 24) until both outermost |gamma^2| fall below edge_gap.
SpectrumRecord padded_spectrum(const Potential& phi, int N, double edge_gap = 1e-8,
                               const Tolerances& tol = default_tolerances());

// Newton continuation from the record of a nearby potential; no contours.
SpectrumRecord update_spectrum(const Potential& phi, const SpectrumRecord& base,
                               const Tolerances& tol = default_tolerances());

// Single-index operations (each localizes from scratch).
std::pair<cplx, cplx> periodic_pair(const Potential& phi, int n, const Tolerances& tol = default_tolerances());
cplx dirichlet_eigenvalue(const Potential& phi, int n, const Tolerances& tol = default_tolerances());
cplx neumann_eigenvalue(const Potential& phi, int n, const Tolerances& tol = default_tolerances());
cplx delta_dot_root(const Potential& phi, int n, const Tolerances& tol = default_tolerances());

// Newton continuation of one Dirichlet eigenvalue from a nearby value.
cplx track_dirichlet(const Potential& phi, cplx guess, const Tolerances& tol = default_tolerances());

cplx star_root(const SpectrumRecord& s, int n);
double kappa(const SpectrumRecord& s, int n);
bool collapsed_gap_test(const Potential& phi, const SpectrumRecord& s, int n, double tol_matrix = 1e-6,
                        const Tolerances& tol = default_tolerances());

// Total phase of the AKNS Dirichlet eigenfunction over [0,1].
double dirichlet_winding(const Potential& phi, cplx mu, int samples = 2048,
                         const Tolerances& tol = default_tolerances());

// Lexicographic order with tie tolerance on the real part.
bool lex_less(cplx a, cplx b, double tie = 1e-12);

// Asymptotic coefficients c_j of p(x) = x - sum_j c_j x^{-j}, Delta ~ 2 cos p.
std::vector<cplx> asymptotic_coefficients(const Potential& phi, int order);
cplx model_root(const std::vector<cplx>& c, int m);

// Tail of Delta-dot roots for N < |m| (explicit Newton roots, then model roots).
ProductTail build_tail(const Potential& phi, int N, const Tolerances& tol = default_tolerances(),
                       const ProductTail* warm = nullptr);

}  // namespace zs
