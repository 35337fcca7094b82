#pragma once

#include "zs/types.hpp"

namespace zs {

enum class Frame { zs, akns };

// Conjugation by T = [[1, i], [1, -i]]: K = T^{-1} M T.
inline Mat2 zs_to_akns(const Mat2& m) {
  const cplx m1 = m(0, 0), m2 = m(0, 1), m3 = m(1, 0), m4 = m(1, 1);
  Mat2 k;
  k(0, 0) = (m1 + m2 + m3 + m4) / 2.0;
  k(0, 1) = (m1 - m2 + m3 - m4) / (-2.0 * I);
  k(1, 0) = (m1 + m2 - m3 - m4) / (2.0 * I);
  k(1, 1) = (m1 - m2 - m3 + m4) / 2.0;
  return k;
}

inline Mat2 akns_to_zs(const Mat2& k) {
  const cplx k1 = k(0, 0), k2 = k(0, 1), k3 = k(1, 0), k4 = k(1, 1);
  Mat2 m;
  m(0, 0) = (k1 + k4 + I * (k3 - k2)) / 2.0;
  m(0, 1) = (k1 - k4 + I * (k2 + k3)) / 2.0;
  m(1, 0) = (k1 - k4 - I * (k2 + k3)) / 2.0;
  m(1, 1) = (k1 + k4 + I * (k2 - k3)) / 2.0;
  return m;
}

// Vector in the ZS frame to the AKNS frame: T^{-1} v.
inline Eigen::Vector2cd zs_to_akns(const Eigen::Vector2cd& v) {
  return {(v(0) + v(1)) / 2.0, I * (v(1) - v(0)) / 2.0};
}

}  // namespace zs
