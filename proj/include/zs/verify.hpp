#pragma once

#include "zs/actions.hpp"
#include "zs/flows.hpp"
#include "zs/gradients.hpp"
#include "zs/psi.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace zs {

struct Check {
  std::string name;
  double residual = 0;
  double bound = 0;
  bool pass() const { return residual < bound; }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // skipped parts and fitted constants
  bool passed() const;
  const Check* first_failure() const;
};

const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown suite name.
SuiteReport run_suite(std::string_view suite, const Potential& phi, int N,
                      const Tolerances& tol = default_tolerances());

// Suites, also usable one at a time.
SuiteReport wronskian_suite(const Potential& phi, const Tolerances& tol = default_tolerances());
SuiteReport products_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
SuiteReport gradients_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
SuiteReport brackets_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
SuiteReport actions_sum_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
SuiteReport psi_orth_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());
SuiteReport flow_suite(const Potential& phi, int N, const Tolerances& tol = default_tolerances());

// {I_m, theta_n} and {theta_m, theta_n} for |m|, |n| <= range from closed-form
// action gradients and central differences of the angles along the Fourier
// directions |k| <= directions. Requires real type and open gaps |n| <= range.
struct AngleBracketTable {
  int range = 0;
  Eigen::MatrixXcd action_angle;  // (m + range, n + range)
  Eigen::MatrixXcd angle_angle;
};
AngleBracketTable angle_brackets(const Potential& phi, int range, int directions = 12, double eps = 1e-4,
                                 const Tolerances& tol = default_tolerances());

}  // namespace zs
