#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zs {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// pi_m = m*pi for m != 0 and 1 for m == 0
constexpr double pi_m(int m) { return m == 0 ? 1.0 : m * pi; }

constexpr double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument: t outside [0,1], grid mismatch, bad config values.
struct DomainError : Error {
  using Error::Error;
};

// Eigenvalues could not be isolated or labelled.
struct LocalizationError : Error {
  using Error::Error;
};

// Iterative method failed to meet its stopping rule.
struct ConvergenceError : Error {
  using Error::Error;
};

// Square root evaluated on its branch cut.
struct CutError : Error {
  using Error::Error;
};

// Representation breaks down (e.g. m2-hat vanishes).
struct DegenerateError : Error {
  using Error::Error;
};

// Malformed input file or document.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace zs
