#pragma once

// Variant entry points on interleaved (re, im) double arrays. Kept free of
// standard-library types so the NEON file only needs arm_neon.h.

#include <stddef.h>

namespace swanson::kernels::detail {

struct Table {
  void (*caxpy)(double ar, double ai, const double* x, double* y, size_t n);
  void (*cmul_acc)(const double* x, const double* d, double* y, size_t n);
  void (*geometric_block)(double rr, double ri, size_t n, double* out);
};

extern const Table scalar_table;
#if defined(SWANSON_HAVE_AVX2)
extern const Table avx2_table;
#endif
#if defined(SWANSON_HAVE_NEON)
extern const Table neon_table;
#endif

}  // namespace swanson::kernels::detail
