#include "kernels/kernels_impl.hpp"

namespace swanson::kernels::detail {

namespace {

void caxpy(double ar, double ai, const double* x, double* y, size_t n) {
  for (size_t k = 0; k < n; ++k) {
    const double xr = x[2 * k], xi = x[2 * k + 1];
    y[2 * k] += ar * xr - ai * xi;
    y[2 * k + 1] += ar * xi + ai * xr;
  }
}

void cmul_acc(const double* x, const double* d, double* y, size_t n) {
  for (size_t k = 0; k < n; ++k) {
    const double xr = x[2 * k], xi = x[2 * k + 1];
    const double dr = d[2 * k], di = d[2 * k + 1];
    y[2 * k] += dr * xr - di * xi;
    y[2 * k + 1] += dr * xi + di * xr;
  }
}

void geometric_block(double rr, double ri, size_t n, double* out) {
  double pr = 1.0, pi = 0.0, sr = 0.0, si = 0.0;
  for (size_t k = 0; k < n; ++k) {
    sr += pr;
    si += pi;
    const double t = pr * rr - pi * ri;
    pi = pr * ri + pi * rr;
    pr = t;
  }
  out[0] = sr;
  out[1] = si;
}

}  // namespace

const Table scalar_table = {caxpy, cmul_acc, geometric_block};

}  // namespace swanson::kernels::detail
