#include <arm_neon.h>

#include "kernels/kernels_impl.hpp"

namespace swanson::kernels::detail {

namespace {

// a * x for one complex in a float64x2_t, a given as {re, re} and {-im, im}
inline float64x2_t cmul(float64x2_t are, float64x2_t aim_signed, float64x2_t x) {
  const float64x2_t xs = vextq_f64(x, x, 1);
  return vfmaq_f64(vmulq_f64(aim_signed, xs), are, x);
}

void caxpy(double ar, double ai, const double* x, double* y, size_t n) {
  const float64x2_t are = vdupq_n_f64(ar);
  const double sgn[2] = {-ai, ai};
  const float64x2_t aim = vld1q_f64(sgn);
  for (size_t k = 0; k < n; ++k) {
    const float64x2_t xv = vld1q_f64(x + 2 * k);
    vst1q_f64(y + 2 * k, vaddq_f64(vld1q_f64(y + 2 * k), cmul(are, aim, xv)));
  }
}

void cmul_acc(const double* x, const double* d, double* y, size_t n) {
  for (size_t k = 0; k < n; ++k) {
    const float64x2_t are = vdupq_n_f64(d[2 * k]);
    const double sgn[2] = {-d[2 * k + 1], d[2 * k + 1]};
    const float64x2_t xv = vld1q_f64(x + 2 * k);
    vst1q_f64(y + 2 * k, vaddq_f64(vld1q_f64(y + 2 * k), cmul(are, vld1q_f64(sgn), xv)));
  }
}

void geometric_block(double rr, double ri, size_t n, double* out) {
  // two independent chains (even and odd powers), each advanced by r^2
  const double r2r = rr * rr - ri * ri, r2i = 2.0 * rr * ri;
  const float64x2_t sre = vdupq_n_f64(r2r);
  const double sgn[2] = {-r2i, r2i};
  const float64x2_t sim = vld1q_f64(sgn);
  const double one[2] = {1.0, 0.0};
  const double r1[2] = {rr, ri};
  float64x2_t p0 = vld1q_f64(one);
  float64x2_t p1 = vld1q_f64(r1);
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    a0 = vaddq_f64(a0, p0);
    a1 = vaddq_f64(a1, p1);
    p0 = cmul(sre, sim, p0);
    p1 = cmul(sre, sim, p1);
  }
  if (k < n) a0 = vaddq_f64(a0, p0);
  const float64x2_t s = vaddq_f64(a0, a1);
  out[0] = vgetq_lane_f64(s, 0);
  out[1] = vgetq_lane_f64(s, 1);
}

}  // namespace

const Table neon_table = {caxpy, cmul_acc, geometric_block};

}  // namespace swanson::kernels::detail
