#include "swanson/model_space.hpp"

#include <cmath>
#include <limits>

#include "swanson/error.hpp"

namespace swanson {

const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
  }
  return "?";
}

double EffectiveOscillator::length() const {
  if (!btilde) throw Error(ErrorKind::WrongRegion, "b~0 undefined for negative mass");
  return *btilde;
}

void validate(const SwansonParams& p) {
  if (!std::isfinite(p.omega) || !(p.omega > 0.0))
    throw Error(ErrorKind::InvalidArgument, "omega must be positive and finite");
  if (!std::isfinite(p.alpha) || !std::isfinite(p.gamma))
    throw Error(ErrorKind::InvalidArgument, "alpha and gamma must be finite");
  if (!std::isfinite(p.b0) || !(p.b0 > 0.0))
    throw Error(ErrorKind::InvalidArgument, "b0 must be positive and finite");
}

namespace {

double mass_denominator(const SwansonParams& p) {
  const double den = p.omega - p.alpha - p.gamma;
  const double scale = std::abs(p.omega) + std::abs(p.alpha) + std::abs(p.gamma);
  if (std::abs(den) <= 4.0 * std::numeric_limits<double>::epsilon() * scale)
    throw Error(ErrorKind::DegenerateMap, "omega - alpha - gamma = 0");
  return den;
}

}  // namespace

EffectiveOscillator classify_region(const SwansonParams& p) {
  validate(p);
  const double den = mass_denominator(p);
  EffectiveOscillator e;
  e.mass = 1.0 / (den * p.b0 * p.b0);
  e.omega_sq = p.omega * p.omega - 4.0 * p.alpha * p.gamma;
  const double scale = p.omega * p.omega + 4.0 * std::abs(p.alpha * p.gamma);
  if (std::abs(e.omega_sq) <= 8.0 * std::numeric_limits<double>::epsilon() * scale)
    throw Error(ErrorKind::BoundaryCase, "omega^2 - 4 alpha gamma = 0");
  e.abs_omega = std::sqrt(std::abs(e.omega_sq));
  if (e.mass > 0.0) {
    e.region = e.omega_sq > 0.0 ? Region::I : Region::II;
    e.btilde = std::sqrt(1.0 / (e.mass * e.abs_omega));
  } else {
    e.region = e.omega_sq > 0.0 ? Region::III : Region::IV;
  }
  return e;
}

EffectiveOscillator region_one(double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0) || !std::isfinite(mass) || !std::isfinite(omega))
    throw Error(ErrorKind::InvalidArgument, "region I needs positive mass and frequency");
  EffectiveOscillator e;
  e.mass = mass;
  e.omega_sq = omega * omega;
  e.abs_omega = omega;
  e.btilde = std::sqrt(1.0 / (mass * omega));
  e.region = Region::I;
  return e;
}

XpCoefficients xp_coefficients(const SwansonParams& p) {
  const double b2 = p.b0 * p.b0;
  return {0.5 * (p.omega + p.alpha + p.gamma) / b2, 0.5 * (p.omega - p.alpha - p.gamma) * b2,
          0.5 * (p.alpha - p.gamma)};
}

GaugeExponent gauge_exponent(const SwansonParams& p, double t,
                             const std::optional<MathieuDrive>& drive) {
  validate(p);
  const double den = mass_denominator(p);
  const double amg = p.alpha - p.gamma;
  const double b2 = p.b0 * p.b0;
  if (!drive) return {Complex(-amg / (2.0 * den * b2), 0.0), false};
  const Complex v = drive_v(*drive, t);
  return {-(amg - 2.0 * v) / (2.0 * den * b2), true};
}

Complex gauge_exponent_rate(const SwansonParams& p, double t, const MathieuDrive& drive) {
  validate(p);
  const double den = mass_denominator(p);
  return drive_eval(drive, t).dv / (den * p.b0 * p.b0);
}

}  // namespace swanson
