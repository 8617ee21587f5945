#pragma once

#include "swanson/response_types.hpp"
#include "swanson/types.hpp"

namespace swanson {

// Reduced (resonant-state) thermodynamics of the inverted oscillator,
// hbar = k_B = 1. All functions take |Omega| directly.
struct PartitionReduced {
  Complex Z_r;
  double Z;
};

struct IhoThermo {
  Complex Z_r;
  Complex F_r;
  Complex S_r;
  double U_r;
  double C_r;
  double n_r;
  double T;
};

PartitionReduced partition_reduced(double abs_omega, double beta);
IhoThermo thermo_reduced(double abs_omega, double T);

struct KernelK {
  double K1;  // contains e^{+2|Omega| t}
  double K2;  // contains e^{-2|Omega| t}
};

// Drive V cos(Wt) x^2 switched on at t = 0.
KernelK kernel_K(const DriveParams& d, double abs_omega, double t);

struct SFunctions {
  Complex S_plus;
  Complex S_minus;
  Complex S_zero;
};

// y is complex; beta is the real inverse temperature used in the e^{-+i|Omega|beta} prefactors.
SFunctions s_functions(double abs_omega, Complex y, double beta);
Complex eta(double abs_omega, double beta);

struct SecondOrderKernel {
  double K1;
  double K2;
  SFunctions S;  // at y = beta + 2it
  Complex eta;
  Complex F;
};

SecondOrderKernel second_order_kernel(const DriveParams& d, double abs_omega, double t,
                                      double beta);
Complex kernel_F(const DriveParams& d, double abs_omega, double t, double beta);

struct DrivenOccupation {
  Complex n_bar;
  Complex U_bar;
};

DrivenOccupation occupation_driven(const DriveParams& d, double abs_omega, double t,
                                   double beta);

}  // namespace swanson
