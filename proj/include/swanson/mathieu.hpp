#pragma once

#include <array>
#include <vector>

#include "swanson/types.hpp"

namespace swanson {

enum class DriveVariant { Printed, Rescaled };

// Parameters of the Mathieu-type drive. a = 4(alpha-gamma)^2/W^2, q = 2V/W^2.
struct MathieuDrive {
  double a = 0.0;
  double q = 0.0;
  double W = 1.0;
  double V = 0.0;
  double alpha_minus_gamma = 0.0;
  DriveVariant variant = DriveVariant::Printed;

  static MathieuDrive from_model(double alpha_minus_gamma, double V, double W,
                                 DriveVariant variant = DriveVariant::Printed);
};

struct MathieuPoint {
  double y;
  double dy;
};

// Dense solution of y'' + (a - 2q cos 2z) y = 0 between 0 and z_end (either sign),
// stored at the adaptive step nodes and interpolated by quintic Hermite pieces.
class MathieuSolution {
 public:
  MathieuSolution(double a, double q, double z_end, double y0 = 1.0, double dy0 = 0.0,
                  double rtol = 1e-13);

  MathieuPoint operator()(double z) const;
  double second_derivative(double z) const;
  // y'' + (a - 2q cos 2z) y of the interpolant, scaled by max(1, |y|).
  double residual(double z) const;

  double a() const { return a_; }
  double q() const { return q_; }
  const std::vector<double>& nodes() const { return z_; }

 private:
  struct Piece {
    double z0, h;
    std::array<double, 6> c;
  };
  const Piece& locate(double z, double& s) const;

  double a_, q_;
  std::vector<double> z_;
  std::vector<Piece> pieces_;
};

double mathieu_c(double a, double q, double z);
MathieuPoint mathieu_c_point(double a, double q, double z);

// Even and odd solutions integrated jointly: (ce, ce', se, se') with
// ce(0)=1, ce'(0)=0, se(0)=0, se'(0)=1.
std::array<double, 4> mathieu_fundamental(double a, double q, double z, double rtol = 1e-13);

struct DriveValue {
  Complex v;
  Complex dv;   // dv/dt
  double g;     // M_C(a, q, Wt/2)
  double dg;    // dg/dt
};

DriveValue drive_eval(const MathieuDrive& d, double t);
Complex drive_v(const MathieuDrive& d, double t);

}  // namespace swanson
