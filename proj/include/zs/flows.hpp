#pragma once

#include "zs/gradients.hpp"
#include "zs/potential.hpp"
#include "zs/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zs {

// Coefficients of phi1 times e^{is}, of phi2 times e^{-is}.
Potential phase_flow(const Potential& phi, double s);

// Tangent field i(d2 Delta, -d1 Delta) at lambda = mu, L2-projected onto
// frequencies |k| <= band and symmetrized to real type.
struct ProjectedField {
  Potential field;
  double residual = 0;   // L2 norm of the part discarded by the projection
  double asymmetry = 0;  // L2 distance of the raw field from real type
};
ProjectedField project_field_at(const Potential& phi, cplx mu, int band, const GridPtr& grid = default_grid(),
                                const Tolerances& tol = default_tolerances());
// Same at the n-th Dirichlet eigenvalue, band K + 8.
ProjectedField vector_field_X(const Potential& phi, int n, const Tolerances& tol = default_tolerances());

struct FlowOptions {
  int band_extra = 8;
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int monitor_range = 0;  // |m| <= range of tracked mu_m; 0 means max(|n| + 2, 3)
  std::vector<cplx> monitor_lambdas;  // empty: a fixed real and complex grid
  // breach thresholds
  double max_delta_drift = 1e-5;
  double max_mu_drift = 1e-5;
  double max_mu_dot_residual = 1e-4;
  double max_norm_drift = 1e-6;
  bool abort_on_breach = true;
};

struct FlowState {
  double s = 0;
  Potential phi;
  cplx mu_n{}, delta_mu_n{};
  double delta_drift = 0;  // max over monitor grid
  double mu_drift = 0;     // max over tracked m != n
  double norm_drift = 0;
  double h_tau_drift = 0;
  double projection_residual = 0;
};

struct FlowTrajectory {
  int n = 0;
  std::vector<FlowState> states;
  double max_delta_drift = 0, max_mu_drift = 0, max_norm_drift = 0, max_h_tau_drift = 0;
  double mu_dot_residual = 0;  // five-point derivative of mu_n against delta(mu_n)/2
  double max_projection_residual = 0;
  std::string breach;          // first violated monitor, empty when all pass
  bool passed() const { return breach.empty(); }
  const Potential& final() const { return states.back().phi; }
};

// Integrates phi' = X_n(phi) for s in [0, s_max], sampled at `samples` equally spaced times.
// Throws ConvergenceError naming the breached monitor unless abort_on_breach is false.
FlowTrajectory flow_X(const Potential& phi, int n, double s_max, int samples, const FlowOptions& opt = {},
                      const Tolerances& tol = default_tolerances());

struct SteerTarget {
  int n = 0;
  double mu = 0;   // target inside [lambda-_n, lambda+_n]
  int sign = 0;    // required sign of delta(mu_n); 0 for an endpoint target
};

struct SteerResult {
  Potential phi;
  std::vector<double> flow_time;        // per target
  std::vector<cplx> mu_reached, delta_reached;
  double max_delta_drift = 0;
};

// Applies the flows of X_n one target at a time, stopping at the first time
// mu_n reaches its target with the requested sign of delta(mu_n).
// Throws ConvergenceError when a target is not reached within s_budget.
SteerResult steer_to_target(const Potential& phi, const std::vector<SteerTarget>& targets, double s_budget = 50.0,
                            const FlowOptions& opt = {}, const Tolerances& tol = default_tolerances());

// delta(mu) = sqrt-branch of Delta(mu)^2 - 4 selected by the Dirichlet data (m4 - m1 at mu).
cplx delta_at_dirichlet(const Potential& phi, cplx mu, const Tolerances& tol = default_tolerances());

}  // namespace zs
