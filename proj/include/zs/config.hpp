#pragma once

namespace zs {

// All numerical thresholds in one place. Every algorithm takes a const
// reference; defaults are used when none is supplied.
struct Tolerances {
  // Integrator: Omega*h per 8-stage Gauss step, Omega = |lambda| + sup|phi| + 2*pi*K.
  double ode_step_ratio = 1.2;
  int ode_min_steps = 4;

  // Circle quadrature doubling.
  int contour_min_nodes = 64;
  int contour_max_nodes = 4096;
  double contour_rel = 1e-10;

  // Argument principle.
  double count_integrality = 1e-6;
  int counting_margin = 8;
  int counting_cap = 48;

  // Newton.
  double newton_f = 1e-12;
  double newton_step = 1e-14;
  int newton_max_iter = 50;

  // Gap geometry.
  double gap_collapse = 1e-14;       // |gamma^2| below: collapsed
  double gap_near_collapse = 1e-8;   // |gamma^2| below: near-collapsed
  double isolating_radius_max = 0.7853981633974483;  // pi/4
  double isolating_radius_min = 0.05;
  double lex_tie = 1e-12;

  // Branches and degeneracy.
  double cut = 1e-12;
  double m2_degenerate = 1e-9;

  // Products: explicit tail roots beyond the spectrum range, then model roots.
  int tail_explicit = 16;
  int tail_model = 512;
  int tail_order = 16;

  // Gradient grid: panels x Gauss nodes.
  int grid_panels = 32;
  int grid_nodes = 8;

  // sigma solve.
  double sigma_residual = 1e-11;
  int sigma_max_iter = 30;
  double v_domain_theta = 0.25;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace zs
