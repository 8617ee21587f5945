#include "swanson/iho.hpp"

#include <cmath>

#include "swanson/error.hpp"

namespace swanson {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kMaxExponent = 700.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive and finite");
}

double sin_half_checked(double abs_omega, double beta) {
  const double s = std::sin(0.5 * beta * abs_omega);
  if (std::abs(s) < kPoleTol)
    throw Error(ErrorKind::PoleAtSinZero, "sin(beta |Omega| / 2) = 0");
  return s;
}

}  // namespace

PartitionReduced partition_reduced(double abs_omega, double beta) {
  require_positive(abs_omega, "|Omega|");
  require_positive(beta, "beta");
  const double s = sin_half_checked(abs_omega, beta);
  return {1.0 / Complex(0.0, 2.0 * s), 1.0 / (4.0 * s * s)};
}

IhoThermo thermo_reduced(double abs_omega, double T) {
  require_positive(abs_omega, "|Omega|");
  require_positive(T, "T");
  const double x = abs_omega / T;
  if (!(x < 2.0 * kPi))
    throw Error(ErrorKind::OutOfDomain, "need 0 < |Omega|/T < 2 pi");
  const double s = sin_half_checked(abs_omega, 1.0 / T);
  const double cot = std::cos(0.5 * x) / s;
  const double log2s = std::log(2.0 * s);
  IhoThermo th;
  th.T = T;
  th.Z_r = 1.0 / Complex(0.0, 2.0 * s);
  th.U_r = 0.5 * abs_omega * cot;
  th.n_r = 0.5 * cot;
  const double r = 0.5 * x / s;
  th.C_r = r * r;
  th.F_r = Complex(T * log2s, 0.5 * kPi * T);
  th.S_r = Complex(-log2s + 0.5 * x * cot, -0.5 * kPi);
  return th;
}

KernelK kernel_K(const DriveParams& d, double abs_omega, double t) {
  require_positive(abs_omega, "|Omega|");
  require_positive(d.W, "W");
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  if (2.0 * abs_omega * t > kMaxExponent)
    throw Error(ErrorKind::Overflow, "2 |Omega| t exceeds 700");
  const double W = d.W, Om = abs_omega;
  const double A = W * W + 4.0 * Om * Om;
  const double sw = std::sin(W * t), cw = std::cos(W * t);
  const double common = sw * sw / A - Om * (2.0 * W * t + std::sin(2.0 * W * t)) / (W * A);
  const double pref = 0.5 * d.V * d.V;
  const double g1 = 4.0 * Om * (std::exp(2.0 * Om * t) * (W * sw + 2.0 * Om * cw) - 2.0 * Om) / (A * A);
  const double g2 = 4.0 * Om * (std::exp(-2.0 * Om * t) * (W * sw - 2.0 * Om * cw) + 2.0 * Om) / (A * A);
  return {pref * (common + g1), pref * (common - g2)};
}

SFunctions s_functions(double abs_omega, Complex y, double beta) {
  require_positive(abs_omega, "|Omega|");
  const Complex w = 0.5 * abs_omega * y;
  if (std::abs(w.imag()) > kMaxExponent)
    throw Error(ErrorKind::Overflow, "|Im y| |Omega| / 2 exceeds 700");
  const Complex s = std::sin(w);
  if (std::abs(s) < kPoleTol) throw Error(ErrorKind::PoleAtSinZero, "sin(y |Omega| / 2) = 0");
  const Complex s3 = s * s * s;
  const Complex i4(0.0, 4.0);
  SFunctions out;
  out.S_minus = std::polar(1.0, abs_omega * beta) / (i4 * s3);
  out.S_plus = std::polar(1.0, -abs_omega * beta) / (i4 * s3);
  out.S_zero = -std::cos(2.0 * w) / (2.0 * s * s);
  return out;
}

Complex eta(double abs_omega, double beta) {
  return Complex(0.0, 2.0) * std::polar(1.0, beta * abs_omega) * std::sin(beta * abs_omega);
}

SecondOrderKernel second_order_kernel(const DriveParams& d, double abs_omega, double t,
                                      double beta) {
  require_positive(beta, "beta");
  SecondOrderKernel k;
  const KernelK kk = kernel_K(d, abs_omega, t);
  k.K1 = kk.K1;
  k.K2 = kk.K2;
  k.S = s_functions(abs_omega, Complex(beta, 2.0 * t), beta);
  k.eta = eta(abs_omega, beta);
  const double e2 = std::norm(k.eta);
  k.F = k.K1 * (e2 * k.S.S_plus - 2.0 * std::conj(k.eta) * k.S.S_zero) +
        k.K2 * (e2 * k.S.S_minus + 2.0 * k.eta * k.S.S_zero);
  return k;
}

Complex kernel_F(const DriveParams& d, double abs_omega, double t, double beta) {
  return second_order_kernel(d, abs_omega, t, beta).F;
}

DrivenOccupation occupation_driven(const DriveParams& d, double abs_omega, double t,
                                   double beta) {
  require_positive(abs_omega, "|Omega|");
  require_positive(beta, "beta");
  const double s = sin_half_checked(abs_omega, beta);
  const double n0 = 0.5 * std::cos(0.5 * beta * abs_omega) / s;
  const Complex F = kernel_F(d, abs_omega, t, beta);
  DrivenOccupation out;
  if (F == Complex(0.0, 0.0)) {
    out.n_bar = n0;
  } else {
    const Complex s0 = s_functions(abs_omega, Complex(beta, -2.0 * t), beta).S_zero;
    // 1/(2Z) = 2 sin^2(beta |Omega| / 2)
    out.n_bar = n0 - 2.0 * s * s * s0 * F;
  }
  out.U_bar = abs_omega * out.n_bar;
  return out;
}

}  // namespace swanson
