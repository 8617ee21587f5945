#include "swanson/response.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "swanson/error.hpp"

namespace swanson {

namespace {

void require_region_one(const EffectiveOscillator& eff) {
  if (eff.region != Region::I) throw Error(ErrorKind::WrongRegion, "needs region I");
}

void require_beta(double beta) {
  if (!(beta > 0.0) || std::isnan(beta))
    throw Error(ErrorKind::InvalidArgument, "beta must be positive");
}

double coth_half(double x) {
  // coth(x/2), with coth(inf) = 1
  if (x > 80.0) return 1.0;
  return 1.0 / std::tanh(0.5 * x);
}

ThermalMoments linear_moments(const EffectiveOscillator& eff, double beta, double t,
                              double coupling_integral) {
  const double b2 = eff.length() * eff.length();
  const double ch = coth_half(beta * eff.abs_omega);
  ThermalMoments m;
  m.x2 = b2 * ch * (0.5 + coupling_integral);
  m.p2 = ch * (0.5 - coupling_integral) / b2;
  m.t = t;
  m.beta = beta;
  return m;
}

double strip_imag(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, std::abs(z.real())))
    throw Error(ErrorKind::NonHermitian, std::string(what) + " has a non-negligible imaginary part");
  return z.real();
}

}  // namespace

bool strong_drive(const DriveParams& d, const EffectiveOscillator& eff) {
  return std::abs(d.V) >= 0.5 * eff.abs_omega * eff.abs_omega;
}

double equilibrium_partition(const EffectiveOscillator& eff, double beta) {
  require_region_one(eff);
  require_beta(beta);
  const double x = beta * eff.abs_omega;
  return std::exp(-0.5 * x) / (-std::expm1(-x));
}

ThermalMoments equilibrium_moments(const EffectiveOscillator& eff, double beta) {
  require_region_one(eff);
  require_beta(beta);
  return linear_moments(eff, beta, 0.0, 0.0);
}

double i1_integral(const DriveParams& d, const EffectiveOscillator& eff, double t) {
  if (!(d.epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const double Om = eff.abs_omega, W = d.W, e = d.epsilon;
  const double wp = W + 2.0 * Om, wm = W - 2.0 * Om;
  const double num = (wp * wm - e * e) * std::cos(W * t) - 2.0 * W * e * std::sin(W * t);
  const double den = (wp * wp + e * e) * (wm * wm + e * e);
  return -2.0 * Om * std::exp(e * t) * num / den;
}

I2Value i2_integral(const DriveParams& d, const EffectiveOscillator& eff, double t) {
  const double Om = eff.abs_omega, W = d.W, t0 = d.t0;
  if (t <= t0) return {0.0, false};
  if (std::abs(W - 2.0 * Om) < 1e-9) {
    auto f = [&](double tau) { return std::cos(W * tau) * std::sin(2.0 * Om * (t - tau)); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, t0, t, 15, 1e-13);
    return {v, true};
  }
  const double s = 2.0 * Om * (t - t0);
  const double v = -(2.0 * Om * (std::cos(W * t) - std::cos(W * t0) * std::cos(s)) +
                     W * std::sin(W * t0) * std::sin(s)) /
                   (W * W - 4.0 * Om * Om);
  return {v, false};
}

ThermalMoments moments_linear_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                  double beta, double t) {
  require_region_one(eff);
  require_beta(beta);
  const double b2 = eff.length() * eff.length();
  ThermalMoments m = linear_moments(eff, beta, t, d.V * b2 * i1_integral(d, eff, t));
  m.strong_drive = strong_drive(d, eff);
  return m;
}

ThermalMoments moments_linear_ex2(const DriveParams& d, const EffectiveOscillator& eff,
                                  double beta, double t) {
  require_region_one(eff);
  require_beta(beta);
  const double b2 = eff.length() * eff.length();
  ThermalMoments m = linear_moments(eff, beta, t, d.V * b2 * i2_integral(d, eff, t).value);
  m.strong_drive = strong_drive(d, eff);
  return m;
}

ThermalMoments moments_from_evolution(const DisentangledEvolution& z,
                                      const EffectiveOscillator& eff, double beta, double t) {
  require_region_one(eff);
  require_beta(beta);
  const double b2 = eff.length() * eff.length();
  const double ch = coth_half(beta * eff.abs_omega);
  const Mat3 h = heisenberg_generators(z, eff, t);
  // <K+->_0 = 0 and <2K0>_0 = coth/2, so only the 2K0 column survives
  const Complex kp = h(0, 2), km = h(1, 2), k0 = h(2, 2);
  ThermalMoments m;
  m.x2 = strip_imag(0.5 * ch * b2 * (kp + km + k0), "<x^2>");
  m.p2 = strip_imag(0.5 * ch * (k0 - kp - km) / b2, "<p^2>");
  m.t = t;
  m.beta = beta;
  return m;
}

double adiabatic_start(const DriveParams& d, const EffectiveOscillator& eff, double tol) {
  if (!(d.epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const double c = std::abs(d.V) * eff.length() * eff.length();
  if (c == 0.0) return 0.0;
  // integral_{-inf}^{ts} c e^{eps tau} = c e^{eps ts} / eps
  return std::log(tol * d.epsilon / c) / d.epsilon;
}

std::vector<ThermalMoments> moments_exact_ex1(const DriveParams& d,
                                              const EffectiveOscillator& eff, double beta,
                                              std::span<const double> times) {
  require_region_one(eff);
  require_beta(beta);
  if (!(d.epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  std::vector<double> sorted(times.begin(), times.end());
  std::vector<std::size_t> order(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });
  for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = times[order[k]];
  std::vector<ThermalMoments> out(times.size());
  if (times.empty()) return out;
  const double b2 = eff.length() * eff.length();
  const double ts = std::min(adiabatic_start(d, eff), sorted.front());
  auto g = [&](double t) { return -d.V * b2 * std::cos(d.W * t) * std::exp(d.epsilon * t); };
  const auto us = interaction_propagator(g, eff.abs_omega, ts, sorted);
  for (std::size_t k = 0; k < order.size(); ++k) {
    ThermalMoments m = moments_from_evolution(evolution_from_propagator(us[k]), eff, beta,
                                              sorted[k]);
    m.strong_drive = strong_drive(d, eff);
    out[order[k]] = m;
  }
  return out;
}

ThermalMoments moments_exact_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                 double beta, double t) {
  const double ts[1] = {t};
  return moments_exact_ex1(d, eff, beta, std::span<const double>(ts, 1)).front();
}

ThermalMoments moments_disentangled_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                        double beta, double t) {
  const KappaPair k = kappa_coefficients(eff, d, t);
  ThermalMoments m = moments_from_evolution(zeta_from_kappa(k.kappa, k.kappa0), eff, beta, t);
  m.strong_drive = strong_drive(d, eff);
  return m;
}

std::vector<ThermalMoments> moments_exact_ex2(const DriveParams& d,
                                              const EffectiveOscillator& eff, double beta,
                                              std::span<const double> times) {
  require_region_one(eff);
  require_beta(beta);
  std::vector<ThermalMoments> out(times.size());
  std::vector<std::size_t> late;
  std::vector<double> late_t;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] <= d.t0) {
      out[k] = equilibrium_moments(eff, beta);
      out[k].t = times[k];
    } else {
      late.push_back(k);
    }
  }
  std::sort(late.begin(), late.end(), [&](auto a, auto b) { return times[a] < times[b]; });
  for (auto k : late) late_t.push_back(times[k]);
  if (!late.empty()) {
    const double b2 = eff.length() * eff.length();
    auto g = [&](double t) { return -d.V * b2 * std::cos(d.W * t); };
    const auto us = interaction_propagator(g, eff.abs_omega, d.t0, late_t);
    for (std::size_t j = 0; j < late.size(); ++j)
      out[late[j]] = moments_from_evolution(evolution_from_propagator(us[j]), eff, beta, late_t[j]);
  }
  for (auto& m : out) m.strong_drive = strong_drive(d, eff);
  return out;
}

}  // namespace swanson
