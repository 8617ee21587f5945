#pragma once

#include "swanson/types.hpp"

namespace swanson {

// Perturbation parameters shared by the three examples.
struct DriveParams {
  double V = 0.0;
  double W = 1.0;
  double epsilon = 0.05;
  double t0 = 0.0;
};

struct ThermalMoments {
  Complex x2;
  Complex p2;
  double t = 0.0;
  double beta = 1.0;
  bool strong_drive = false;  // V >= Omega^2 / 2
};

}  // namespace swanson
