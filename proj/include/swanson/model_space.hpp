#pragma once

#include <optional>

#include "swanson/mathieu.hpp"
#include "swanson/types.hpp"

namespace swanson {

// H_SW = omega (a^dag a + 1/2) + alpha a^2 + gamma a^dag^2, hbar = 1.
struct SwansonParams {
  double omega = 1.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double b0 = 1.0;
};

enum class Region { I, II, III, IV };

const char* to_string(Region r);

struct EffectiveOscillator {
  double mass = 0.0;
  double omega_sq = 0.0;
  double abs_omega = 0.0;
  std::optional<double> btilde;
  Region region = Region::I;

  // b~0, throwing WrongRegion when undefined
  double length() const;
};

struct XpCoefficients {
  double c_xx;
  double c_pp;
  double c_xp;  // H contains i c_xp (xp + px)
};

struct GaugeExponent {
  Complex coefficient;  // Upsilon = exp(coefficient * x^2)
  bool time_dependent = false;
};

void validate(const SwansonParams& p);

EffectiveOscillator classify_region(const SwansonParams& p);
XpCoefficients xp_coefficients(const SwansonParams& p);
GaugeExponent gauge_exponent(const SwansonParams& p, double t,
                             const std::optional<MathieuDrive>& drive = std::nullopt);

// d/dt of the time-dependent gauge coefficient (zero for the static gauge).
Complex gauge_exponent_rate(const SwansonParams& p, double t, const MathieuDrive& drive);

// Region-I oscillator with given mass and frequency, for presets that fix (m, Omega).
EffectiveOscillator region_one(double mass, double omega);

}  // namespace swanson
