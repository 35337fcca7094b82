#include "zs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace zs {

namespace {

Coeffs drop_zeros(Coeffs c) {
  std::erase_if(c, [](const auto& kv) { return kv.second == cplx{}; });
  return c;
}

cplx horner(const std::vector<cplx>& h, int K, cplx z) {
  cplx acc{};
  for (auto it = h.rbegin(); it != h.rend(); ++it) acc = acc * z + *it;
  // multiply by z^{-K}; |z| = 1
  cplx zk{1.0, 0.0};
  const cplx zc = std::conj(z);
  for (int j = 0; j < K; ++j) zk *= zc;
  return acc * zk;
}

cplx coeff(const Coeffs& c, int k) {
  auto it = c.find(k);
  return it == c.end() ? cplx{} : it->second;
}

}  // namespace

Potential::Potential(Coeffs c1, Coeffs c2) : c1_(drop_zeros(std::move(c1))), c2_(drop_zeros(std::move(c2))) {
  rebuild();
}

void Potential::rebuild() {
  K_ = 0;
  for (const auto* c : {&c1_, &c2_})
    for (const auto& [k, v] : *c) K_ = std::max(K_, std::abs(k));
  zero_ = c1_.empty() && c2_.empty();
  h1_ = dense1(K_);
  h2_ = dense2(K_);
}

Potential Potential::single_mode(cplx a, int k) {
  return Potential({{k, a}}, {{-k, std::conj(a)}});
}

Potential Potential::random(std::uint64_t seed, int K, double amp, bool complex_type) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Coeffs c1, c2;
  for (int k = -K; k <= K; ++k) c1[k] = amp * cplx(u(rng), u(rng)) / std::sqrt(2.0);
  if (complex_type) {
    for (int k = -K; k <= K; ++k) c2[k] = amp * cplx(u(rng), u(rng)) / std::sqrt(2.0);
  } else {
    for (const auto& [k, v] : c1) c2[-k] = std::conj(v);
  }
  return {c1, c2};
}

std::pair<cplx, cplx> Potential::operator()(double t) const {
  if (zero_) return {};
  const cplx z = std::polar(1.0, 2.0 * pi * t);
  return {horner(h1_, K_, z), horner(h2_, K_, z)};
}

bool Potential::is_real_type() const {
  for (const auto& [k, v] : c1_)
    if (coeff(c2_, -k) != std::conj(v)) return false;
  for (const auto& [k, v] : c2_)
    if (coeff(c1_, -k) != std::conj(v)) return false;
  return true;
}

cplx Potential::h_tau() const {
  cplx s{};
  for (const auto& [k, v] : c1_) s += v * coeff(c2_, -k);
  return s;
}

double Potential::sup_bound() const {
  double s = 0.0;
  for (const auto* c : {&c1_, &c2_})
    for (const auto& [k, v] : *c) s += std::abs(v);
  return s;
}

double Potential::l2_norm() const {
  double s = 0.0;
  for (const auto* c : {&c1_, &c2_})
    for (const auto& [k, v] : *c) s += std::norm(v);
  return std::sqrt(s);
}

Potential Potential::operator+(const Potential& o) const {
  Coeffs a = c1_, b = c2_;
  for (const auto& [k, v] : o.c1_) a[k] += v;
  for (const auto& [k, v] : o.c2_) b[k] += v;
  return {a, b};
}

Potential Potential::operator-(const Potential& o) const { return *this + o * -1.0; }

Potential Potential::operator*(double s) const {
  Coeffs a = c1_, b = c2_;
  for (auto& [k, v] : a) v *= s;
  for (auto& [k, v] : b) v *= s;
  return {a, b};
}

std::vector<cplx> Potential::dense1(int K) const {
  std::vector<cplx> d(2 * K + 1);
  for (const auto& [k, v] : c1_)
    if (std::abs(k) <= K) d[k + K] = v;
  return d;
}

std::vector<cplx> Potential::dense2(int K) const {
  std::vector<cplx> d(2 * K + 1);
  for (const auto& [k, v] : c2_)
    if (std::abs(k) <= K) d[k + K] = v;
  return d;
}

Potential Potential::from_dense(const std::vector<cplx>& d1, const std::vector<cplx>& d2) {
  if (d1.size() != d2.size() || d1.size() % 2 == 0) throw DomainError("dense coefficient vectors must have equal odd length");
  const int K = static_cast<int>(d1.size() / 2);
  Coeffs a, b;
  for (int k = -K; k <= K; ++k) {
    a[k] = d1[k + K];
    b[k] = d2[k + K];
  }
  return {a, b};
}

}  // namespace zs
