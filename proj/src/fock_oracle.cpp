#include "swanson/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "swanson/error.hpp"
#include "swanson/kernels.hpp"

namespace swanson {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
// RK4 stability interval on the imaginary axis is 2 sqrt 2; keep a margin.
constexpr double kRk4Stability = 2.5;

void require_dim(std::size_t dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidArgument, "Fock truncation needs dim >= 2");
}

void require_length(double b) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw Error(ErrorKind::InvalidArgument, "basis length must be positive");
}

double pair(std::size_t n) { return std::sqrt(double(n + 1) * double(n + 2)); }

void check_hermitian(const DenseMatrix& h) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::InvalidArgument, "matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorKind::NonHermitian, "expected a hermitian matrix");
}

}  // namespace

BandedOperator ladder_lower(const FockBasis& b) {
  require_dim(b.dim);
  BandedOperator a(b.dim, 1);
  for (std::size_t n = 0; n + 1 < b.dim; ++n) a.at(n, 1) = std::sqrt(double(n + 1));
  return a;
}

BandedOperator position(const FockBasis& b) {
  require_dim(b.dim);
  require_length(b.length);
  BandedOperator x(b.dim, 1);
  for (std::size_t n = 0; n + 1 < b.dim; ++n) {
    const double v = b.length * std::sqrt(double(n + 1)) / kSqrt2;
    x.at(n, 1) = v;
    x.at(n + 1, -1) = v;
  }
  return x;
}

BandedOperator momentum(const FockBasis& b) {
  require_dim(b.dim);
  require_length(b.length);
  BandedOperator p(b.dim, 1);
  for (std::size_t n = 0; n + 1 < b.dim; ++n) {
    const double v = std::sqrt(double(n + 1)) / (kSqrt2 * b.length);
    p.at(n, 1) = Complex(0.0, -v);
    p.at(n + 1, -1) = Complex(0.0, v);
  }
  return p;
}

BandedOperator position_sq(const FockBasis& b) {
  require_dim(b.dim);
  require_length(b.length);
  const double b2 = b.length * b.length;
  BandedOperator x2(b.dim, 2);
  for (std::size_t n = 0; n < b.dim; ++n) {
    x2.at(n, 0) = 0.5 * b2 * double(2 * n + 1);
    if (n + 2 < b.dim) {
      x2.at(n, 2) = 0.5 * b2 * pair(n);
      x2.at(n + 2, -2) = 0.5 * b2 * pair(n);
    }
  }
  return x2;
}

BandedOperator momentum_sq(const FockBasis& b) {
  require_dim(b.dim);
  require_length(b.length);
  const double ib2 = 1.0 / (b.length * b.length);
  BandedOperator p2(b.dim, 2);
  for (std::size_t n = 0; n < b.dim; ++n) {
    p2.at(n, 0) = 0.5 * ib2 * double(2 * n + 1);
    if (n + 2 < b.dim) {
      p2.at(n, 2) = -0.5 * ib2 * pair(n);
      p2.at(n + 2, -2) = -0.5 * ib2 * pair(n);
    }
  }
  return p2;
}

BandedOperator xp_plus_px(const FockBasis& b) {
  require_dim(b.dim);
  // xp + px = i (a^dag^2 - a^2)
  BandedOperator s(b.dim, 2);
  for (std::size_t n = 0; n + 2 < b.dim; ++n) {
    s.at(n, 2) = Complex(0.0, -pair(n));
    s.at(n + 2, -2) = Complex(0.0, pair(n));
  }
  return s;
}

BandedOperator oscillator(const FockBasis& b, double mass, double omega_sq) {
  if (mass == 0.0 || !std::isfinite(mass)) throw Error(ErrorKind::InvalidArgument, "mass must be nonzero");
  BandedOperator h = Complex(0.5 / mass) * momentum_sq(b);
  h += Complex(0.5 * mass * omega_sq) * position_sq(b);
  return h;
}

OperatorSet build_operators(std::size_t dim, const SwansonParams& p, UvConvention conv) {
  validate(p);
  const FockBasis b{dim, p.b0};
  OperatorSet s;
  s.a = ladder_lower(b);
  s.adag = s.a.adjoint();
  s.n = BandedOperator(dim, 0);
  for (std::size_t k = 0; k < dim; ++k) s.n.at(k, 0) = double(k);
  s.x = position(b);
  s.p = momentum(b);
  s.x2 = position_sq(b);
  s.p2 = momentum_sq(b);
  s.xp_px = xp_plus_px(b);
  s.h_sw = BandedOperator(dim, 2);
  s.h_c = BandedOperator(dim, 2);
  for (std::size_t k = 0; k < dim; ++k) {
    s.h_sw.at(k, 0) = s.h_c.at(k, 0) = p.omega * (double(k) + 0.5);
    if (k + 2 < dim) {
      s.h_sw.at(k, 2) = p.alpha * pair(k);
      s.h_sw.at(k + 2, -2) = p.gamma * pair(k);
      s.h_c.at(k, 2) = p.gamma * pair(k);
      s.h_c.at(k + 2, -2) = p.alpha * pair(k);
    }
  }
  const EffectiveOscillator eff = classify_region(p);
  s.h0 = oscillator(b, eff.mass, eff.omega_sq);
  if (eff.region == Region::II) {
    const double mw = eff.mass * eff.abs_omega;
    const double sc = std::sqrt(0.5 * mw);
    const double sgn = conv == UvConvention::PlusP ? 1.0 : -1.0;
    BandedOperator u = Complex(sc) * (s.x + Complex(sgn / mw) * s.p);
    BandedOperator v = Complex(sc) * (s.x + Complex(-sgn / mw) * s.p);
    s.uv_number = Complex(-0.5) * (u * v + v * u);
    s.u = std::move(u);
    s.v = std::move(v);
  }
  return s;
}

DensityMatrix thermal_state(const DenseMatrix& h0, double beta) {
  check_hermitian(h0);
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0);
  const Eigen::VectorXd& e = es.eigenvalues();
  Eigen::VectorXd w = (-beta * (e.array() - e(0))).exp();
  w /= w.sum();
  const Eigen::MatrixXcd& q = es.eigenvectors();
  DensityMatrix out;
  out.rho = q * w.cast<Complex>().asDiagonal() * q.adjoint();
  return out;
}

DensityMatrix thermal_state(const BandedOperator& h0, double beta) {
  return thermal_state(h0.dense(), beta);
}

PropagationStats propagate(const DensityMatrix& rho0, const HamiltonianFn& h,
                           std::span<const double> t_grid, double dt,
                           const StateObserver& observer) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (t_grid.empty()) return {};
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] >= t_grid[k - 1]))
      throw Error(ErrorKind::InvalidArgument, "time grid must be ascending");
  const Eigen::Index n = rho0.rho.rows();
  DenseMatrix rho = rho0.rho;
  DenseMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  BandedOperator H;
  const Complex minus_i(0.0, -1.0);
  const Complex tr0 = rho.trace();
  PropagationStats st;

  auto eval = [&](double t, double step, const DenseMatrix& in, DenseMatrix& out) {
    h(t, H);
    if (H.dim() != static_cast<std::size_t>(n))
      throw Error(ErrorKind::InvalidArgument, "Hamiltonian dimension mismatch");
    if (step * 2.0 * H.norm1() > kRk4Stability)
      throw Error(ErrorKind::StepTooLarge, "dt exceeds the RK4 stability bound at t=" + std::to_string(t));
    out.setZero();
    H.commutator_acc(minus_i, in, out);
  };
  auto record = [&](std::size_t idx, double t) {
    if (!rho.allFinite()) throw Error(ErrorKind::StepTooLarge, "state became non-finite");
    const double drift = std::abs(rho.trace() - tr0);
    st.max_trace_drift = std::max(st.max_trace_drift, drift);
    st.max_hermiticity_error =
        std::max(st.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    if (drift > 1e-9 * std::max(1.0, std::abs(tr0)))
      throw Error(ErrorKind::StepTooLarge, "trace drift exceeds 1e-9");
    if (observer) observer(idx, t, rho);
  };

  record(0, t_grid[0]);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double span = t_grid[k] - t_grid[k - 1];
    const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(span / dt - 1e-9)));
    const double hstep = steps ? span / double(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = t_grid[k - 1] + double(s) * hstep;
      eval(t, hstep, rho, k1);
      tmp.noalias() = rho + (0.5 * hstep) * k1;
      eval(t + 0.5 * hstep, hstep, tmp, k2);
      tmp.noalias() = rho + (0.5 * hstep) * k2;
      eval(t + 0.5 * hstep, hstep, tmp, k3);
      tmp.noalias() = rho + hstep * k3;
      eval(t + hstep, hstep, tmp, k4);
      rho += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++st.steps;
    }
    record(k, t_grid[k]);
  }
  return st;
}

Trajectory propagate(const DensityMatrix& rho0, const HamiltonianFn& h,
                     std::span<const double> t_grid, double dt) {
  Trajectory tr;
  tr.stats = propagate(rho0, h, t_grid, dt, [&](std::size_t, double t, const DenseMatrix& rho) {
    tr.times.push_back(t);
    tr.states.push_back({rho});
  });
  return tr;
}

Complex expectation(const DenseMatrix& rho, const BandedOperator& op) {
  // Tr(rho O) = sum_ij rho_ji O_ij
  const std::size_t n = op.dim();
  const long b = static_cast<long>(op.bandwidth());
  Complex s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (long o = -b; o <= b; ++o) {
      const long j = static_cast<long>(i) + o;
      if (j < 0 || j >= static_cast<long>(n)) continue;
      s += rho(j, static_cast<Eigen::Index>(i)) * op.get(i, static_cast<std::size_t>(j));
    }
  return s;
}

std::vector<SpectralLine> spectral_intensity(const DenseMatrix& A, const DenseMatrix& B,
                                             const DenseMatrix& h0, double beta,
                                             Ordering ordering, double merge_tol) {
  check_hermitian(h0);
  if (A.rows() != h0.rows() || B.rows() != h0.rows())
    throw Error(ErrorKind::InvalidArgument, "operator dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0);
  const Eigen::VectorXd& e = es.eigenvalues();
  const Eigen::MatrixXcd& q = es.eigenvectors();
  const Eigen::MatrixXcd a = q.adjoint() * A * q;
  const Eigen::MatrixXcd bm = q.adjoint() * B * q;
  Eigen::VectorXd p = (-beta * (e.array() - e(0))).exp();
  p /= p.sum();
  const Eigen::Index n = e.size();
  // products of two roundoff-level elements carry no information; drop them in
  // both orderings alike
  const double eps = std::numeric_limits<double>::epsilon();
  const double noise = eps * eps * a.cwiseAbs().maxCoeff() * bm.cwiseAbs().maxCoeff();
  std::vector<SpectralLine> raw;
  raw.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex ab = bm(i, j) * a(j, i);
      const Complex w = std::abs(ab) <= noise ? Complex(0.0)
                        : ordering == Ordering::AB ? p(i) * ab
                                                   : p(j) * ab;
      raw.push_back({e(i) - e(j), w});
    }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const SpectralLine& x, const SpectralLine& y) { return x.omega < y.omega; });
  std::vector<SpectralLine> lines;
  std::size_t k = 0;
  while (k < raw.size()) {
    std::size_t m = k + 1;
    double sum_w = raw[k].omega;
    Complex weight = raw[k].weight;
    while (m < raw.size() && raw[m].omega - raw[k].omega <= merge_tol) {
      sum_w += raw[m].omega;
      weight += raw[m].weight;
      ++m;
    }
    lines.push_back({sum_w / double(m - k), weight});
    k = m;
  }
  return lines;
}

double gauge_check(const SwansonParams& p, const std::optional<MathieuDrive>& drive, double t,
                   const GaugeCheckOptions& opt) {
  validate(p);
  if (opt.edge >= opt.dim) throw Error(ErrorKind::InvalidArgument, "edge exclusion too large");
  const std::size_t big = opt.dim + opt.guard;
  const OperatorSet ops = build_operators(big, p);
  const GaugeExponent g = gauge_exponent(p, t, drive);

  DenseMatrix h = ops.h_sw.dense();
  DenseMatrix expected = ops.h0.dense();
  DenseMatrix x2 = ops.x2.dense();
  Complex rate = 0.0;
  if (drive) {
    const DriveValue dv = drive_eval(*drive, t);
    h -= dv.v * ops.xp_px.dense();
    expected -= drive->V * std::cos(drive->W * t) * x2;
    rate = gauge_exponent_rate(p, t, *drive);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x2.real());
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd q = es.eigenvectors().cast<Complex>();
  Eigen::MatrixXcd hp = q.adjoint() * h * q;
  for (Eigen::Index i = 0; i < hp.rows(); ++i)
    for (Eigen::Index j = 0; j < hp.cols(); ++j) hp(i, j) *= std::exp(g.coefficient * (lam(i) - lam(j)));
  Eigen::MatrixXcd lhs = q * hp * q.adjoint();
  // -i Upsilon d(Upsilon^-1)/dt = i c'(t) x^2
  lhs += Complex(0.0, 1.0) * rate * x2;

  const Eigen::Index m = static_cast<Eigen::Index>(opt.dim - opt.edge);
  const double r = (lhs.topLeftCorner(m, m) - expected.topLeftCorner(m, m)).norm();
  if (!std::isfinite(r)) throw Error(ErrorKind::NonFinite, "gauge residual overflow");
  return r;
}

TracePair trace_check(const SwansonParams& p, double beta, const DenseMatrix& observable) {
  validate(p);
  check_hermitian(observable);
  const std::size_t dim = static_cast<std::size_t>(observable.rows());
  const EffectiveOscillator eff = classify_region(p);
  if (eff.region != Region::I) throw Error(ErrorKind::WrongRegion, "trace check needs region I");
  const OperatorSet ops = build_operators(dim, p);
  const DensityMatrix rho = thermal_state(ops.h0, beta);
  const Complex c = gauge_exponent(p, 0.0).coefficient;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.x2.dense().real());
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd q = es.eigenvectors().cast<Complex>();
  Eigen::MatrixXcd rt = q.adjoint() * rho.rho * q;
  Eigen::MatrixXcd ot = q.adjoint() * observable * q;
  // rho~ = Upsilon^-1 rho Upsilon, O = Upsilon^-1 o Upsilon, Upsilon diagonal here
  for (Eigen::Index i = 0; i < rt.rows(); ++i)
    for (Eigen::Index j = 0; j < rt.cols(); ++j) {
      const Complex f = std::exp(c * (lam(j) - lam(i)));
      rt(i, j) *= f;
      ot(i, j) *= f;
    }
  TracePair out;
  out.lhs = (rt.array() * ot.transpose().array()).sum();
  out.rhs = (rho.rho.array() * observable.transpose().array()).sum();
  return out;
}

ResonantSum resonant_partition_sum_detail(double abs_omega, double beta, std::size_t N,
                                          double delta) {
  if (!(abs_omega > 0.0) || !(beta > 0.0) || !(delta > 0.0) || N == 0)
    throw Error(ErrorKind::InvalidArgument, "resonant sum needs positive |Omega|, beta, delta, N");
  ResonantSum r;
  r.at_delta = kernels::phase_sum(Complex(delta, beta * abs_omega), 0.5, N);
  r.at_half_delta = kernels::phase_sum(Complex(0.5 * delta, beta * abs_omega), 0.5, 2 * N);
  r.extrapolated = 2.0 * r.at_half_delta - r.at_delta;
  return r;
}

Complex resonant_partition_sum(double abs_omega, double beta, std::size_t N, double delta) {
  return resonant_partition_sum_detail(abs_omega, beta, N, delta).extrapolated;
}

Complex resonant_double_sum(double abs_omega, double beta, std::size_t N, double delta) {
  const Complex res = resonant_partition_sum(abs_omega, beta, N, delta);
  const Complex e1 = kernels::phase_sum(Complex(delta, -beta * abs_omega), 0.5, N);
  const Complex e2 = kernels::phase_sum(Complex(0.5 * delta, -beta * abs_omega), 0.5, 2 * N);
  return res * (2.0 * e2 - e1);
}

namespace {

std::vector<ThermalMoments> oracle_moments(const std::function<double(double)>& g,
                                           const EffectiveOscillator& eff, double beta,
                                           double t_start, std::span<const double> times,
                                           const OracleOptions& opt) {
  if (eff.region != Region::I) throw Error(ErrorKind::WrongRegion, "oracle needs region I");
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] < t_start || (k && times[k] < times[k - 1]))
      throw Error(ErrorKind::InvalidArgument, "oracle times must be ascending and >= start");
  const FockBasis b{opt.dim, eff.length()};
  const BandedOperator x2 = position_sq(b);
  const BandedOperator p2 = momentum_sq(b);
  const double Om = eff.abs_omega;
  const DensityMatrix rho0 = thermal_state(oscillator(b, eff.mass, eff.omega_sq), beta);

  auto in_picture = [&](const BandedOperator& op, double t, Complex scale, BandedOperator& out) {
    if (out.dim() != op.dim() || out.bandwidth() != 2) out = BandedOperator(op.dim(), 2);
    const Complex ph = std::polar(1.0, -2.0 * Om * t);
    for (std::size_t n = 0; n < op.dim(); ++n) {
      out.at(n, 0) = scale * op.get(n, n);
      if (n + 2 < op.dim()) {
        out.at(n, 2) = scale * ph * op.get(n, n + 2);
        out.at(n + 2, -2) = scale * std::conj(ph) * op.get(n + 2, n);
      }
    }
  };
  auto hamiltonian = [&](double t, BandedOperator& h) { in_picture(x2, t, g(t), h); };

  std::vector<double> grid;
  grid.push_back(t_start);
  grid.insert(grid.end(), times.begin(), times.end());
  std::vector<ThermalMoments> out(times.size());
  BandedOperator ox, op;
  propagate(rho0, hamiltonian, grid, opt.dt, [&](std::size_t idx, double t, const DenseMatrix& rho) {
    if (idx == 0) return;
    in_picture(x2, t, 1.0, ox);
    in_picture(p2, t, 1.0, op);
    ThermalMoments& m = out[idx - 1];
    m.x2 = expectation(rho, ox);
    m.p2 = expectation(rho, op);
    m.t = t;
    m.beta = beta;
  });
  return out;
}

}  // namespace

std::vector<ThermalMoments> oracle_moments_ex1(const DriveParams& d,
                                               const EffectiveOscillator& eff, double beta,
                                               std::span<const double> times,
                                               const OracleOptions& opt) {
  auto g = [&](double t) { return -d.V * std::cos(d.W * t) * std::exp(d.epsilon * t); };
  return oracle_moments(g, eff, beta, opt.t_start, times, opt);
}

std::vector<ThermalMoments> oracle_moments_ex2(const DriveParams& d,
                                               const EffectiveOscillator& eff, double beta,
                                               std::span<const double> times,
                                               const OracleOptions& opt) {
  auto g = [&](double t) { return t < d.t0 ? 0.0 : -d.V * std::cos(d.W * t); };
  return oracle_moments(g, eff, beta, std::max(d.t0, opt.t_start), times, opt);
}

}  // namespace swanson
