#pragma once

#include "zs/types.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace zs {

using Coeffs = std::map<int, cplx>;  // frequency k -> coefficient of e^{2 pi i k t}

// Band-limited periodic potential (phi1, phi2) on [0,1]. Immutable.
class Potential {
 public:
  Potential() = default;
  Potential(Coeffs c1, Coeffs c2);

  // phi1 = a e^{2 pi i k t}, phi2 = conj(a) e^{-2 pi i k t}
  static Potential single_mode(cplx a, int k = 1);
  // Random coefficients for |k| <= K with magnitudes up to amp; real type
  // unless complex_type, in which case phi2 is drawn independently.
  static Potential random(std::uint64_t seed, int K, double amp, bool complex_type = false);

  const Coeffs& coeffs1() const { return c1_; }
  const Coeffs& coeffs2() const { return c2_; }
  int band_limit() const { return K_; }

  std::pair<cplx, cplx> operator()(double t) const;

  bool is_zero() const { return zero_; }
  bool is_real_type() const;
  cplx h_tau() const;
  // sum of |coefficients|, an upper bound for sup|phi1| + sup|phi2|
  double sup_bound() const;
  // (||phi1||^2 + ||phi2||^2)^{1/2}
  double l2_norm() const;

  Potential operator+(const Potential& o) const;
  Potential operator-(const Potential& o) const;
  Potential operator*(double s) const;
  friend Potential operator*(double s, const Potential& p) { return p * s; }

  // Dense coefficient vectors over k = -K..K.
  std::vector<cplx> dense1(int K) const;
  std::vector<cplx> dense2(int K) const;
  static Potential from_dense(const std::vector<cplx>& d1, const std::vector<cplx>& d2);

 private:
  void rebuild();

  Coeffs c1_, c2_;
  int K_ = 0;
  bool zero_ = true;
  std::vector<cplx> h1_, h2_;  // dense, index k + K_, for Horner evaluation
};

}  // namespace zs
