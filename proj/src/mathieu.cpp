#include "swanson/mathieu.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "swanson/error.hpp"

namespace swanson {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kMaxStep = 0.01;
constexpr double kBlowUp = 1e250;

template <std::size_t N>
struct MathieuRhs {
  double a, q;
  void operator()(const std::array<double, N>& s, std::array<double, N>& ds, double z) const {
    const double Q = a - 2.0 * q * std::cos(2.0 * z);
    for (std::size_t k = 0; k < N; k += 2) {
      ds[k] = s[k + 1];
      ds[k + 1] = -Q * s[k];
    }
  }
};

void check_finite(double y, double z) {
  if (!std::isfinite(y) || std::abs(y) > kBlowUp)
    throw Error(ErrorKind::NonFinite, "Mathieu solution overflows near z=" + std::to_string(z));
}

template <std::size_t N, class Observer>
std::array<double, N> integrate(double a, double q, double z_end, std::array<double, N> s,
                                double rtol, Observer obs) {
  if (!std::isfinite(a) || !std::isfinite(q) || !std::isfinite(z_end))
    throw Error(ErrorKind::InvalidArgument, "Mathieu arguments must be finite");
  obs(s, 0.0);
  if (z_end == 0.0) return s;
  // the equation is even in z: run on |z| with the derivatives mirrored
  const double sign = z_end < 0.0 ? -1.0 : 1.0;
  auto mirror = [sign](std::array<double, N> x) {
    for (std::size_t k = 1; k < N; k += 2) x[k] *= sign;
    return x;
  };
  s = mirror(s);
  using stepper_t = odeint::runge_kutta_fehlberg78<std::array<double, N>>;
  auto stepper = odeint::make_controlled(rtol * 1e-2, rtol, kMaxStep, stepper_t());
  odeint::integrate_adaptive(stepper, MathieuRhs<N>{a, q}, s, 0.0, sign * z_end, 1e-3,
                             [&](const std::array<double, N>& x, double z) {
                               for (double v : x) check_finite(v, sign * z);
                               if (z > 0.0) obs(mirror(x), sign * z);
                             });
  return mirror(s);
}

}  // namespace

MathieuDrive MathieuDrive::from_model(double alpha_minus_gamma, double V, double W,
                                      DriveVariant variant) {
  if (!(W > 0.0) || !std::isfinite(W))
    throw Error(ErrorKind::InvalidArgument, "drive frequency W must be positive");
  MathieuDrive d;
  d.a = 4.0 * alpha_minus_gamma * alpha_minus_gamma / (W * W);
  d.q = 2.0 * V / (W * W);
  d.W = W;
  d.V = V;
  d.alpha_minus_gamma = alpha_minus_gamma;
  d.variant = variant;
  return d;
}

MathieuSolution::MathieuSolution(double a, double q, double z_end, double y0, double dy0,
                                 double rtol)
    : a_(a), q_(q) {
  std::vector<std::array<double, 2>> st;
  integrate<2>(a, q, z_end, {y0, dy0}, rtol,
               [&](const std::array<double, 2>& s, double z) {
                 if (!z_.empty() && z == z_.back()) return;
                 z_.push_back(z);
                 st.push_back(s);
               });
  if (z_.size() == 1) {
    z_.push_back(z_end);
    st.push_back(st.front());
  }
  pieces_.reserve(z_.size() - 1);
  for (std::size_t k = 0; k + 1 < z_.size(); ++k) {
    const double h = z_[k + 1] - z_[k];
    const double y0k = st[k][0], d0 = st[k][1];
    const double y1k = st[k + 1][0], d1 = st[k + 1][1];
    const double s0 = -(a - 2.0 * q * std::cos(2.0 * z_[k])) * y0k;
    const double s1 = -(a - 2.0 * q * std::cos(2.0 * z_[k + 1])) * y1k;
    Piece p{z_[k], h, {}};
    p.c[0] = y0k;
    p.c[1] = h * d0;
    p.c[2] = 0.5 * h * h * s0;
    const double r0 = y1k - (p.c[0] + p.c[1] + p.c[2]);
    const double r1 = h * d1 - (p.c[1] + 2.0 * p.c[2]);
    const double r2 = h * h * s1 - 2.0 * p.c[2];
    p.c[3] = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
    p.c[4] = -15.0 * r0 + 7.0 * r1 - r2;
    p.c[5] = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;
    pieces_.push_back(p);
  }
}

const MathieuSolution::Piece& MathieuSolution::locate(double z, double& s) const {
  const double lo = std::min(z_.front(), z_.back());
  const double hi = std::max(z_.front(), z_.back());
  if (z < lo - 1e-12 || z > hi + 1e-12)
    throw Error(ErrorKind::OutOfDomain, "z outside the integrated interval");
  std::size_t k;
  if (z_.back() >= z_.front()) {
    auto it = std::upper_bound(z_.begin(), z_.end(), z);
    k = it == z_.begin() ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
  } else {
    auto it = std::upper_bound(z_.begin(), z_.end(), z, std::greater<double>());
    k = it == z_.begin() ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
  }
  k = std::min(k, pieces_.size() - 1);
  const Piece& p = pieces_[k];
  s = (z - p.z0) / p.h;
  return p;
}

MathieuPoint MathieuSolution::operator()(double z) const {
  double s;
  const Piece& p = locate(z, s);
  const auto& c = p.c;
  const double y = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
  const double dy =
      c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
  return {y, dy / p.h};
}

double MathieuSolution::second_derivative(double z) const {
  double s;
  const Piece& p = locate(z, s);
  const auto& c = p.c;
  const double d2 = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
  return d2 / (p.h * p.h);
}

double MathieuSolution::residual(double z) const {
  const double y = (*this)(z).y;
  const double r = second_derivative(z) + (a_ - 2.0 * q_ * std::cos(2.0 * z)) * y;
  return std::abs(r) / std::max(1.0, std::abs(y));
}

MathieuPoint mathieu_c_point(double a, double q, double z) {
  const auto s = integrate<2>(a, q, z, {1.0, 0.0}, 1e-13, [](const auto&, double) {});
  return {s[0], s[1]};
}

double mathieu_c(double a, double q, double z) { return mathieu_c_point(a, q, z).y; }

std::array<double, 4> mathieu_fundamental(double a, double q, double z, double rtol) {
  return integrate<4>(a, q, z, {1.0, 0.0, 0.0, 1.0}, rtol, [](const auto&, double) {});
}

DriveValue drive_eval(const MathieuDrive& d, double t) {
  const double z = 0.5 * d.W * t;
  const MathieuPoint m = mathieu_c_point(d.a, d.q, z);
  if (std::abs(m.y) < 1e-12)
    throw Error(ErrorKind::ZeroCrossing, "M_C vanishes at t=" + std::to_string(t));
  const double half_w = 0.5 * d.W;
  const double g = m.y;
  const double dg = half_w * m.dy;
  const double d2g = -half_w * half_w * (d.a - 2.0 * d.q * std::cos(2.0 * z)) * m.y;
  const double f1 = dg / g;
  const double f2 = d2g / g - f1 * f1;
  DriveValue out;
  out.g = g;
  out.dg = dg;
  if (d.variant == DriveVariant::Printed) {
    out.v = 0.5 * d.V * Complex(d.alpha_minus_gamma, f1);
    out.dv = 0.5 * d.V * Complex(0.0, f2);
  } else {
    out.v = Complex(0.5 * d.alpha_minus_gamma, 0.5 * d.V * f1);
    out.dv = Complex(0.0, 0.5 * d.V * f2);
  }
  return out;
}

Complex drive_v(const MathieuDrive& d, double t) { return drive_eval(d, t).v; }

}  // namespace swanson
