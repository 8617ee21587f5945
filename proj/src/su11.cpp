#include "swanson/su11.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "swanson/error.hpp"

namespace swanson {

namespace {

constexpr double kSeriesThreshold = 1e-6;

// cosh(r) and sinh(r)/r as functions of r^2, branch-free
void cosh_sinhc(Complex r2, Complex& ch, Complex& shc) {
  const Complex r = std::sqrt(r2);
  if (std::abs(r) < kSeriesThreshold) {
    ch = 1.0 + r2 / 2.0;
    shc = 1.0 + r2 / 6.0;
  } else {
    ch = std::cosh(r);
    shc = std::sinh(r) / r;
  }
}

Complex sinc(Complex d) {
  if (std::abs(d) < kSeriesThreshold) return 1.0 - d * d / 6.0;
  return std::sin(d) / d;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Mat2 matrix_rep(const Su11Element& e) {
  Mat2 m;
  m << e.a_zero, e.a_plus, -e.a_minus, -e.a_zero;
  return m;
}

Mat2 exp_rep(const Su11Element& e) {
  const Complex A = e.a_plus, B = e.a_minus, C = e.a_zero;
  Complex ch, shc;
  cosh_sinhc(C * C - A * B, ch, shc);
  Mat2 m;
  m << ch + C * shc, A * shc, -B * shc, ch - C * shc;
  return m;
}

NormalForm normal_form(const Mat2& g) {
  const Complex m22 = g(1, 1);
  if (!(std::abs(m22) > 1e-14 * g.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::SingularFactorization, "(2,2) entry vanishes");
  const Complex b0 = 1.0 / m22;
  return {b0 * g(0, 1), std::log(b0), -b0 * g(1, 0)};
}

NormalForm disentangle(const Su11Element& e) {
  if (!finite(e.a_plus) || !finite(e.a_minus) || !finite(e.a_zero))
    throw Error(ErrorKind::InvalidArgument, "non-finite su(1,1) coefficient");
  return normal_form(exp_rep(e));
}

Mat2 recompose(const NormalForm& f) {
  const Complex b0 = std::exp(f.ln_beta_zero);
  Mat2 m;
  m << b0 - f.beta_plus * f.beta_minus / b0, f.beta_plus / b0, -f.beta_minus / b0, 1.0 / b0;
  return m;
}

KappaPair kappa_coefficients(const EffectiveOscillator& eff, const DriveParams& d, double t) {
  if (eff.region != Region::I) throw Error(ErrorKind::WrongRegion, "kappa needs region I");
  if (!(d.epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const double Om = eff.abs_omega, W = d.W, eps = d.epsilon;
  const double coupling = d.V * eff.length() * eff.length();
  const double grow = std::exp(eps * t);
  const double c = std::cos(W * t), s = std::sin(W * t);
  const Complex sig(eps, 2.0 * Om);
  const Complex num = (W * W + std::conj(sig) * std::conj(sig)) * (sig * c + W * s);
  const double den = ((W - 2.0 * Om) * (W - 2.0 * Om) + eps * eps) *
                     ((W + 2.0 * Om) * (W + 2.0 * Om) + eps * eps);
  const Complex phase = std::polar(1.0, 2.0 * Om * t);
  KappaPair k;
  k.kappa = -coupling * grow * phase * num / den;
  k.kappa0 = -coupling * grow * (eps * c + W * s) / (W * W + eps * eps);
  return k;
}

DisentangledEvolution zeta_from_kappa(Complex kappa, Complex kappa0) {
  DisentangledEvolution z;
  z.kappa = kappa;
  z.kappa0 = kappa0;
  z.d = std::sqrt(kappa0 * kappa0 - std::norm(kappa));
  const Complex sc = sinc(z.d);
  const Complex den = std::cos(z.d) + Complex(0.0, 1.0) * kappa0 * sc;
  if (!(std::abs(den) > 1e-14))
    throw Error(ErrorKind::SingularFactorization, "cos d + i kappa0 sin d / d = 0");
  z.zeta_zero = 1.0 / den;
  z.zeta_plus = Complex(0.0, -1.0) * kappa * sc * z.zeta_zero;
  z.zeta_minus = Complex(0.0, -1.0) * std::conj(kappa) * sc * z.zeta_zero;
  return z;
}

DisentangledEvolution evolution_from_propagator(const Mat2& u) {
  const NormalForm f = normal_form(u);
  DisentangledEvolution z;
  z.zeta_zero = std::exp(f.ln_beta_zero);
  z.zeta_plus = f.beta_plus;
  z.zeta_minus = f.beta_minus;
  // u = cos d + sinc(d) (-i)(kappa K+ + kappa* K- + kappa0 2K0)
  z.d = std::acos(0.5 * (u(0, 0) + u(1, 1)));
  const Complex sc = sinc(z.d);
  if (std::abs(sc) < 1e-12) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    z.kappa = z.kappa0 = Complex(nan, nan);
  } else {
    const Complex k = Complex(0.0, 1.0) / sc;
    z.kappa = k * u(0, 1);
    z.kappa0 = k * 0.5 * (u(0, 0) - u(1, 1));
  }
  return z;
}

Mat3 heisenberg_generators(const DisentangledEvolution& z, const EffectiveOscillator& eff,
                           double t) {
  const Complex zp = z.zeta_plus, zm = z.zeta_minus, z0 = z.zeta_zero;
  const Complex ph = std::polar(1.0, 2.0 * eff.abs_omega * t);
  const Complex a = ph / (z0 * z0);
  const Complex b = std::conj(ph) / std::conj(z0 * z0);
  const Complex w = zp / (z0 * z0);
  Mat3 m;
  m << a, a * zm * zm, -a * zm,
       b * std::conj(zm * zm), b, -b * std::conj(zm),
       2.0 * w, 2.0 * std::conj(w), 1.0 - 2.0 * zm * w;
  return m;
}

std::vector<Mat2> interaction_propagator(const std::function<double(double)>& g, double omega,
                                         double t_start, std::span<const double> times,
                                         double rtol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 8>;
  std::vector<Mat2> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_start || (k > 0 && times[k] < times[k - 1]))
      throw Error(ErrorKind::InvalidArgument, "output times must be ascending and >= t_start");
  }
  auto rhs = [&](const State& s, State& ds, double t) {
    const Complex u00(s[0], s[1]), u01(s[2], s[3]), u10(s[4], s[5]), u11(s[6], s[7]);
    const double gt = g(t);
    const Complex e = std::polar(gt, 2.0 * omega * t);
    // G = [[g, e], [-conj(e), -g]]
    const Complex mi(0.0, -1.0);
    const Complex d00 = mi * (gt * u00 + e * u10);
    const Complex d01 = mi * (gt * u01 + e * u11);
    const Complex d10 = mi * (-std::conj(e) * u00 - gt * u10);
    const Complex d11 = mi * (-std::conj(e) * u01 - gt * u11);
    ds = {d00.real(), d00.imag(), d01.real(), d01.imag(),
          d10.real(), d10.imag(), d11.real(), d11.imag()};
  };
  State s{1, 0, 0, 0, 0, 0, 1, 0};
  auto to_mat = [](const State& x) {
    Mat2 m;
    m << Complex(x[0], x[1]), Complex(x[2], x[3]), Complex(x[4], x[5]), Complex(x[6], x[7]);
    return m;
  };
  std::vector<double> grid;
  grid.reserve(times.size() + 1);
  grid.push_back(t_start);
  grid.insert(grid.end(), times.begin(), times.end());
  auto stepper = odeint::make_controlled(rtol * 1e-2, rtol, odeint::runge_kutta_dopri5<State>());
  std::size_t seen = 0;
  odeint::integrate_times(stepper, rhs, s, grid.begin(), grid.end(), 1e-3,
                          [&](const State& x, double) {
                            if (seen++ == 0) return;
                            out.push_back(to_mat(x));
                          });
  if (out.size() != times.size())
    throw Error(ErrorKind::NonFinite, "propagator integration did not reach all times");
  for (const auto& m : out)
    if (!m.allFinite()) throw Error(ErrorKind::NonFinite, "propagator overflow");
  return out;
}

}  // namespace swanson
