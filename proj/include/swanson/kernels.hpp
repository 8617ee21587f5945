#pragma once

#include <cstddef>
#include <span>

#include "swanson/types.hpp"

namespace swanson::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);
bool isa_available(Isa isa);
// Selected once from CPU features; SWANSON_DGF_SIMD=scalar|avx2|neon overrides.
Isa active_isa();
// Force a variant (tests, benchmarks). Throws if unavailable.
void select_isa(Isa isa);

// y += a * x
void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
// y += x * d, elementwise
void cmul_acc(std::span<const Complex> x, std::span<const Complex> d, std::span<Complex> y);
// sum_{k<n} r^k by lane recurrence (caller re-anchors long sums)
Complex geometric_block(Complex r, std::size_t n);
// sum_{k<n} exp(-z (k + offset)), re-anchored every 4096 terms
Complex phase_sum(Complex z, double offset, std::size_t n);

// Direct access to one variant, for equivalence tests.
void caxpy(Isa isa, Complex a, std::span<const Complex> x, std::span<Complex> y);
void cmul_acc(Isa isa, std::span<const Complex> x, std::span<const Complex> d,
              std::span<Complex> y);
Complex geometric_block(Isa isa, Complex r, std::size_t n);

}  // namespace swanson::kernels
