#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swanson/model_space.hpp"
#include "swanson/response_types.hpp"
#include "swanson/types.hpp"

namespace swanson {

using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;

// a_plus K+ + a_minus K- + a_zero 2K0
struct Su11Element {
  Complex a_plus;
  Complex a_minus;
  Complex a_zero;
};

// exp(beta_plus K+) exp(ln_beta_zero 2K0) exp(beta_minus K-)
struct NormalForm {
  Complex beta_plus;
  Complex ln_beta_zero;
  Complex beta_minus;
};

struct DisentangledEvolution {
  Complex kappa;
  Complex kappa0;
  Complex d;
  Complex zeta_plus;
  Complex zeta_zero;
  Complex zeta_minus;
};

Mat2 matrix_rep(const Su11Element& e);
// exp(matrix_rep(e)) in closed form
Mat2 exp_rep(const Su11Element& e);
NormalForm disentangle(const Su11Element& e);
Mat2 recompose(const NormalForm& f);
// Normal form of a group element given in the faithful representation.
NormalForm normal_form(const Mat2& g);

// First-order (Magnus) closed forms for the switched-on cosine drive.
struct KappaPair {
  Complex kappa;
  Complex kappa0;
};
KappaPair kappa_coefficients(const EffectiveOscillator& eff, const DriveParams& d, double t);

DisentangledEvolution zeta_from_kappa(Complex kappa, Complex kappa0);
// zeta from a propagator in the faithful representation; kappa, kappa0, d are the
// exponent of the equivalent single exponential (NaN when sin d = 0).
DisentangledEvolution evolution_from_propagator(const Mat2& u);

// Rows: U^dag K+ U, U^dag K- U, U^dag 2K0 U in the (K+, K-, 2K0) basis.
Mat3 heisenberg_generators(const DisentangledEvolution& z, const EffectiveOscillator& eff,
                           double t);

// i dU/dt = g(t) (e^{2i Omega t} K+ + e^{-2i Omega t} K- + 2K0) U, U(t_start) = 1,
// returned in the faithful representation at each of `times` (ascending, >= t_start).
std::vector<Mat2> interaction_propagator(const std::function<double(double)>& g, double omega,
                                         double t_start, std::span<const double> times,
                                         double rtol = 1e-12);

}  // namespace swanson
