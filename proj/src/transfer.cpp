#include "zs/transfer.hpp"

#include "zs/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace zs {

namespace {

constexpr int kStages = 8;
using StageMat = Eigen::Matrix<cplx, 2 * kStages, 2 * kStages>;
using StageVec = Eigen::Matrix<cplx, 2 * kStages, 2>;

struct Tableau {
  std::array<double, kStages> c{}, b{};
  Eigen::Matrix<double, kStages, kStages> a;
};

const Tableau& tableau() {
  static const Tableau tab = [] {
    Tableau t;
    const auto& r = gauss_rule(kStages);
    for (int i = 0; i < kStages; ++i) {
      t.c[i] = r.x[i];
      t.b[i] = r.w[i];
    }
    // a_ij = \int_0^{c_i} l_j, exact with the same rule
    for (int i = 0; i < kStages; ++i)
      for (int j = 0; j < kStages; ++j) {
        double acc = 0.0;
        for (int q = 0; q < kStages; ++q) {
          const double s = t.c[i] * r.x[q];
          double lj = 1.0;
          for (int k = 0; k < kStages; ++k)
            if (k != j) lj *= (s - t.c[k]) / (t.c[j] - t.c[k]);
          acc += r.w[q] * lj;
        }
        t.a(i, j) = acc * t.c[i];
      }
    return t;
  }();
  return tab;
}

// D = dA/d lambda = diag(-i, i)
Mat2 apply_d(const Mat2& y) {
  Mat2 r = y;
  r.row(0) *= -I;
  r.row(1) *= I;
  return r;
}

class Integrator {
 public:
  Integrator(const Potential& phi, cplx lambda, int derivatives, const Tolerances& tol)
      : phi_(phi), lambda_(lambda), d_(derivatives), tol_(tol) {
    omega_ = std::abs(lambda) + phi.sup_bound() + 2.0 * pi * phi.band_limit();
  }

  void advance(TransferMatrix& s, double tb) const {
    const double len = tb - s.t;
    if (len <= 0.0) return;
    const int by_omega = static_cast<int>(std::ceil(omega_ * len / tol_.ode_step_ratio));
    const int by_min = static_cast<int>(std::ceil(tol_.ode_min_steps * len));
    const int steps = std::max({1, by_omega, by_min});
    if (steps > 2000000) throw ConvergenceError("step count exceeds integrator budget");
    const double h = len / steps;
    const double t0 = s.t;
    for (int k = 0; k < steps; ++k) step(s, t0 + k * h, h);
    s.t = tb;
  }

 private:
  void step(TransferMatrix& s, double ta, double h) const {
    const auto& tab = tableau();
    std::array<Mat2, kStages> A;
    for (int j = 0; j < kStages; ++j) {
      const auto [f1, f2] = phi_(ta + tab.c[j] * h);
      A[j] << -I * lambda_, I * f1, -I * f2, I * lambda_;
    }
    StageMat K = StageMat::Identity();
    for (int i = 0; i < kStages; ++i)
      for (int j = 0; j < kStages; ++j) K.block<2, 2>(2 * i, 2 * j) -= (h * tab.a(i, j)) * A[j];
    const Eigen::PartialPivLU<StageMat> lu(K);

    StageVec rhs;
    for (int i = 0; i < kStages; ++i) rhs.block<2, 2>(2 * i, 0).setIdentity();
    const StageVec Y = lu.solve(rhs);
    Mat2 S = Mat2::Identity();
    for (int j = 0; j < kStages; ++j) S += (h * tab.b[j]) * A[j] * Y.block<2, 2>(2 * j, 0);

    Mat2 Sd = Mat2::Zero(), Sdd = Mat2::Zero();
    if (d_ >= 1) {
      std::array<Mat2, kStages> DY;
      for (int j = 0; j < kStages; ++j) DY[j] = apply_d(Y.block<2, 2>(2 * j, 0));
      for (int i = 0; i < kStages; ++i) {
        Mat2 acc = Mat2::Zero();
        for (int j = 0; j < kStages; ++j) acc += tab.a(i, j) * DY[j];
        rhs.block<2, 2>(2 * i, 0) = h * acc;
      }
      const StageVec Yd = lu.solve(rhs);
      for (int j = 0; j < kStages; ++j) Sd += (h * tab.b[j]) * (DY[j] + A[j] * Yd.block<2, 2>(2 * j, 0));
      if (d_ >= 2) {
        std::array<Mat2, kStages> DYd;
        for (int j = 0; j < kStages; ++j) DYd[j] = apply_d(Yd.block<2, 2>(2 * j, 0));
        for (int i = 0; i < kStages; ++i) {
          Mat2 acc = Mat2::Zero();
          for (int j = 0; j < kStages; ++j) acc += tab.a(i, j) * DYd[j];
          rhs.block<2, 2>(2 * i, 0) = 2.0 * h * acc;
        }
        const StageVec Ydd = lu.solve(rhs);
        for (int j = 0; j < kStages; ++j)
          Sdd += (h * tab.b[j]) * (2.0 * DYd[j] + A[j] * Ydd.block<2, 2>(2 * j, 0));
      }
    }
    if (d_ >= 2) s.ddm = (Sdd * s.m + 2.0 * Sd * s.dm + S * s.ddm).eval();
    if (d_ >= 1) s.dm = (Sd * s.m + S * s.dm).eval();
    s.m = (S * s.m).eval();
  }

  const Potential& phi_;
  cplx lambda_;
  int d_;
  const Tolerances& tol_;
  double omega_ = 0.0;
};

TransferMatrix free_solution(cplx lambda, double t, int derivatives) {
  TransferMatrix s;
  s.t = t;
  s.lambda = lambda;
  s.derivatives = derivatives;
  const cplx e1 = std::exp(-I * lambda * t), e4 = std::exp(I * lambda * t);
  s.m << e1, 0.0, 0.0, e4;
  if (derivatives >= 1) s.dm << -I * t * e1, 0.0, 0.0, I * t * e4;
  if (derivatives >= 2) s.ddm << -t * t * e1, 0.0, 0.0, -t * t * e4;
  return s;
}

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0,1]");
}

}  // namespace

TransferMatrix fundamental_solution(const Potential& phi, cplx lambda, double t, int derivatives,
                                    const Tolerances& tol) {
  check_time(t);
  if (derivatives < 0 || derivatives > 2) throw DomainError("derivatives must be 0, 1 or 2");
  if (phi.is_zero()) return free_solution(lambda, t, derivatives);
  TransferMatrix s;
  s.lambda = lambda;
  s.derivatives = derivatives;
  Integrator(phi, lambda, derivatives, tol).advance(s, t);
  return s;
}

std::vector<TransferMatrix> fundamental_solution_on(const Potential& phi, cplx lambda, std::span<const double> times,
                                                    int derivatives, const Tolerances& tol) {
  std::vector<TransferMatrix> out;
  out.reserve(times.size());
  if (phi.is_zero()) {
    for (double t : times) {
      check_time(t);
      out.push_back(free_solution(lambda, t, derivatives));
    }
    return out;
  }
  TransferMatrix s;
  s.lambda = lambda;
  s.derivatives = derivatives;
  const Integrator integ(phi, lambda, derivatives, tol);
  for (double t : times) {
    check_time(t);
    if (t < s.t) throw DomainError("times must be ascending");
    integ.advance(s, t);
    out.push_back(s);
  }
  return out;
}

SpectralScalars scalars_from(const TransferMatrix& mt) {
  SpectralScalars s;
  s.lambda = mt.lambda;
  s.m_hat = mt.m;
  const cplx m1 = mt.m1(), m2 = mt.m2(), m3 = mt.m3(), m4 = mt.m4();
  s.delta = m1 + m4;
  s.delta_anti = m2 + m3;
  s.u = m1 + m2 + m3 + m4;
  s.chi_p = s.delta * s.delta - 4.0;
  s.chi_d = (m3 + m4 - m1 - m2) / (2.0 * I);
  s.chi_n = (m3 - m4 + m1 - m2) / (2.0 * I);
  if (mt.derivatives >= 1) {
    const auto& d = mt.dm;
    s.delta_dot = d(0, 0) + d(1, 1);
    s.chi_d_dot = (d(1, 0) + d(1, 1) - d(0, 0) - d(0, 1)) / (2.0 * I);
    s.chi_n_dot = (d(1, 0) - d(1, 1) + d(0, 0) - d(0, 1)) / (2.0 * I);
  }
  if (mt.derivatives >= 2) s.delta_ddot = mt.ddm(0, 0) + mt.ddm(1, 1);
  return s;
}

SpectralScalars spectral_scalars(const Potential& phi, cplx lambda, int derivatives, const Tolerances& tol) {
  return scalars_from(fundamental_solution(phi, lambda, 1.0, derivatives, tol));
}

std::pair<cplx, cplx> floquet_multipliers(const Mat2& m_hat) {
  const cplx delta = m_hat(0, 0) + m_hat(1, 1);
  const cplx r = std::sqrt(delta * delta - 4.0);
  cplx a = (delta - r) / 2.0, b = (delta + r) / 2.0;
  // roots of x^2 - delta x + 1; recompute the smaller one from the product
  if (std::abs(a) < std::abs(b)) a = 1.0 / b; else b = 1.0 / a;
  if (std::abs(b - m_hat(0, 0)) < std::abs(a - m_hat(0, 0))) std::swap(a, b);
  return {a, b};
}

FloquetData floquet_data(const Mat2& m_hat, const Tolerances& tol) {
  const double scale = std::max(1.0, m_hat.cwiseAbs().maxCoeff());
  const cplx m2 = m_hat(0, 1);
  if (std::abs(m2) < tol.m2_degenerate * scale) throw DegenerateError("m2-hat vanishes; Floquet coefficients undefined");
  const auto [xp, xm] = floquet_multipliers(m_hat);
  return {xp, xm, (xp - m_hat(0, 0)) / m2, (xm - m_hat(0, 0)) / m2};
}

FloquetData floquet_data(const Potential& phi, cplx lambda, const Tolerances& tol) {
  return floquet_data(fundamental_solution(phi, lambda, 1.0, 0, tol).m, tol);
}

SolutionsGH solutions_g_h(const Potential& phi, cplx lambda, std::span<const double> times, const Tolerances& tol) {
  SolutionsGH out;
  for (const auto& s : fundamental_solution_on(phi, lambda, times, 0, tol)) {
    out.g.emplace_back(s.m1() + s.m2(), s.m3() + s.m4());
    out.h.emplace_back(s.m1() - s.m2(), s.m3() - s.m4());
  }
  return out;
}

cplx acosh_principal(cplx z) { return std::log(z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0)); }

AsymptoticFit discriminant_asymptotic_check(const Potential& phi, std::span<const double> t_values,
                                            const Tolerances& tol) {
  AsymptoticFit fit;
  const cplx h = phi.h_tau();
  const auto n = static_cast<Eigen::Index>(t_values.size());
  Eigen::MatrixXcd A(n, 3);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = t_values[j];
    const cplx d = spectral_scalars(phi, cplx(0.0, t), 0, tol).delta;
    const cplx r0 = acosh_principal(d / 2.0) - t;
    fit.t.push_back(t);
    fit.residual.push_back(r0 - h / (2.0 * t));
    A(j, 0) = 1.0 / t;
    A(j, 1) = 1.0 / (t * t);
    A(j, 2) = 1.0 / (t * t * t);
    rhs(j) = r0;
  }
  if (n >= 3) fit.h_tau_fit = 2.0 * A.colPivHouseholderQr().solve(rhs)(0);

  // least-squares slope of log|r| vs log t over nonzero residuals
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(fit.residual[j]);
    if (a == 0.0) continue;
    const double x = std::log(fit.t[j]), y = std::log(a);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
  }
  fit.all_zero = (m == 0);
  if (m >= 2) fit.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

}  // namespace zs
