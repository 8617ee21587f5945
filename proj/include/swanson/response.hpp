#pragma once

#include <span>
#include <vector>

#include "swanson/model_space.hpp"
#include "swanson/response_types.hpp"
#include "swanson/su11.hpp"

namespace swanson {

// Tr exp(-beta h0) for h0 = Omega (n + 1/2)
double equilibrium_partition(const EffectiveOscillator& eff, double beta);
ThermalMoments equilibrium_moments(const EffectiveOscillator& eff, double beta);

double i1_integral(const DriveParams& d, const EffectiveOscillator& eff, double t);

struct I2Value {
  double value;
  bool resonance_fallback;  // |W - 2 Omega| < 1e-9, value from quadrature
};
I2Value i2_integral(const DriveParams& d, const EffectiveOscillator& eff, double t);

ThermalMoments moments_linear_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                  double beta, double t);
ThermalMoments moments_linear_ex2(const DriveParams& d, const EffectiveOscillator& eff,
                                  double beta, double t);

// Moments from the normal-ordered propagator data (Heisenberg transform of x^2, p^2).
ThermalMoments moments_from_evolution(const DisentangledEvolution& z,
                                      const EffectiveOscillator& eff, double beta, double t);

// Time-ordered exact solution for v(t) = -V cos(Wt) e^{eps t}.
ThermalMoments moments_exact_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                 double beta, double t);
std::vector<ThermalMoments> moments_exact_ex1(const DriveParams& d,
                                              const EffectiveOscillator& eff, double beta,
                                              std::span<const double> times);
// Same moments with zeta built from the closed-form (kappa, kappa0).
ThermalMoments moments_disentangled_ex1(const DriveParams& d, const EffectiveOscillator& eff,
                                        double beta, double t);

// Time-ordered exact solution for v(t) = -V cos(Wt) switched on at t0.
std::vector<ThermalMoments> moments_exact_ex2(const DriveParams& d,
                                              const EffectiveOscillator& eff, double beta,
                                              std::span<const double> times);

// Start time after which the switched-on drive is kept: the neglected part of
// integral |v| is below tol (in units of Omega).
double adiabatic_start(const DriveParams& d, const EffectiveOscillator& eff, double tol = 1e-12);

bool strong_drive(const DriveParams& d, const EffectiveOscillator& eff);

}  // namespace swanson
