#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "swanson/banded_operator.hpp"
#include "swanson/mathieu.hpp"
#include "swanson/model_space.hpp"
#include "swanson/response_types.hpp"

namespace swanson {

// Truncated number basis; `length` is the oscillator length of a, a^dag.
struct FockBasis {
  std::size_t dim = 80;
  double length = 1.0;
};

// Sign of p in u; the anticommutator {u, v} is the same for both.
enum class UvConvention { MinusP, PlusP };

struct OperatorSet {
  BandedOperator a, adag, n, x, p, x2, p2, xp_px;
  BandedOperator h_sw, h_c, h0;
  std::optional<BandedOperator> u, v, uv_number;  // region II only; uv_number = -1/2 {u, v}
};

// Exact truncations of the infinite-dimensional matrices.
BandedOperator ladder_lower(const FockBasis& b);
BandedOperator position(const FockBasis& b);
BandedOperator momentum(const FockBasis& b);
BandedOperator position_sq(const FockBasis& b);
BandedOperator momentum_sq(const FockBasis& b);
BandedOperator xp_plus_px(const FockBasis& b);
// p^2 / 2m + m omega_sq x^2 / 2
BandedOperator oscillator(const FockBasis& b, double mass, double omega_sq);

// Built in the basis of length b0.
OperatorSet build_operators(std::size_t dim, const SwansonParams& p,
                            UvConvention conv = UvConvention::PlusP);

struct DensityMatrix {
  DenseMatrix rho;
  Complex trace() const { return rho.trace(); }
};

DensityMatrix thermal_state(const DenseMatrix& h0, double beta);
DensityMatrix thermal_state(const BandedOperator& h0, double beta);

// Fills h with the Hamiltonian at time t (h keeps its dimension between calls).
using HamiltonianFn = std::function<void(double t, BandedOperator& h)>;
using StateObserver = std::function<void(std::size_t index, double t, const DenseMatrix& rho)>;

struct PropagationStats {
  std::size_t steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
};

// Classical RK4 on i d rho/dt = [H(t), rho]; each grid interval is split into
// equal steps no longer than dt. The observer sees the state at every grid time.
PropagationStats propagate(const DensityMatrix& rho0, const HamiltonianFn& h,
                           std::span<const double> t_grid, double dt,
                           const StateObserver& observer);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  PropagationStats stats;
};
Trajectory propagate(const DensityMatrix& rho0, const HamiltonianFn& h,
                     std::span<const double> t_grid, double dt);

Complex expectation(const DenseMatrix& rho, const BandedOperator& op);

enum class Ordering { AB, BA };

struct SpectralLine {
  double omega;
  Complex weight;
};

// Lines of the spectral intensity in the eigenbasis of h0 (hermitian). AB gives
// weight p_n B_nm A_mn at omega = E_n - E_m; BA gives p_m A_mn B_nm.
std::vector<SpectralLine> spectral_intensity(const DenseMatrix& A, const DenseMatrix& B,
                                             const DenseMatrix& h0, double beta,
                                             Ordering ordering = Ordering::AB,
                                             double merge_tol = 1e-9);

struct GaugeCheckOptions {
  std::size_t dim = 80;
  std::size_t edge = 8;
  std::size_t guard = 48;  // extra basis states so exp(c x^2) is not polluted by the cut
};

// Frobenius residual of Upsilon H Upsilon^-1 - i Upsilon dUpsilon^-1/dt against
// the expected self-adjoint Hamiltonian, on the leading (dim - edge) block.
double gauge_check(const SwansonParams& p, const std::optional<MathieuDrive>& drive, double t,
                   const GaugeCheckOptions& opt = {});

struct TracePair {
  Complex lhs;
  Complex rhs;
};

// Tr(rho~ O) against Tr(rho o) for the static gauge; `observable` is hermitian in
// the b0 basis of dimension dim.
TracePair trace_check(const SwansonParams& p, double beta, const DenseMatrix& observable);

struct ResonantSum {
  Complex at_delta;
  Complex at_half_delta;
  Complex extrapolated;
};

// sum_{n<N} exp(-(i beta + delta')|Omega|(n + 1/2)), delta' = delta/|Omega|;
// the half-delta partner uses 2N terms.
ResonantSum resonant_partition_sum_detail(double abs_omega, double beta, std::size_t N,
                                          double delta);
Complex resonant_partition_sum(double abs_omega, double beta, std::size_t N, double delta);
// product of the resonant and anti-resonant sums
Complex resonant_double_sum(double abs_omega, double beta, std::size_t N, double delta);

struct OracleOptions {
  std::size_t dim = 80;
  double dt = 0.01;
  double t_start = 0.0;  // example 1: where the drive is switched on numerically
};

// Fock-space propagation in the interaction picture of h0 = Omega (n + 1/2)
// (basis of length b~0) for v(t) x^2 drives; returns <x^2>, <p^2> at `times`.
std::vector<ThermalMoments> oracle_moments_ex1(const DriveParams& d,
                                               const EffectiveOscillator& eff, double beta,
                                               std::span<const double> times,
                                               const OracleOptions& opt);
std::vector<ThermalMoments> oracle_moments_ex2(const DriveParams& d,
                                               const EffectiveOscillator& eff, double beta,
                                               std::span<const double> times,
                                               const OracleOptions& opt);

}  // namespace swanson
