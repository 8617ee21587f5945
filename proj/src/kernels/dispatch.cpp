#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "kernels/kernels_impl.hpp"
#include "swanson/error.hpp"
#include "swanson/kernels.hpp"

namespace swanson::kernels {

namespace {

const detail::Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &detail::scalar_table;
    case Isa::Avx2:
#if defined(SWANSON_HAVE_AVX2)
      return &detail::avx2_table;
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(SWANSON_HAVE_NEON)
      return &detail::neon_table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Isa detect() {
  if (const char* env = std::getenv("SWANSON_DGF_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::Avx2)) return Isa::Avx2;
    if (std::strcmp(env, "neon") == 0 && isa_available(Isa::Neon)) return Isa::Neon;
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<const detail::Table*>& current() {
  static std::atomic<const detail::Table*> t{table_for(detect())};
  return t;
}

std::atomic<Isa>& current_isa() {
  static std::atomic<Isa> i{detect()};
  return i;
}

double* raw(std::span<Complex> s) { return reinterpret_cast<double*>(s.data()); }
const double* raw(std::span<const Complex> s) {
  return reinterpret_cast<const double*>(s.data());
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::InvalidArgument, "kernel operand sizes differ");
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) {
  if (!table_for(isa)) return false;
#if defined(SWANSON_HAVE_AVX2)
  if (isa == Isa::Avx2) return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
  return true;
}

Isa active_isa() {
  current();
  return current_isa().load();
}

void select_isa(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorKind::InvalidArgument, std::string("SIMD variant unavailable: ") + to_string(isa));
  current().store(table_for(isa));
  current_isa().store(isa);
}

void caxpy(Isa isa, Complex a, std::span<const Complex> x, std::span<Complex> y) {
  check_sizes(x.size(), y.size());
  if (!isa_available(isa)) throw Error(ErrorKind::InvalidArgument, "SIMD variant unavailable");
  table_for(isa)->caxpy(a.real(), a.imag(), raw(x), raw(y), x.size());
}

void cmul_acc(Isa isa, std::span<const Complex> x, std::span<const Complex> d,
              std::span<Complex> y) {
  check_sizes(x.size(), y.size());
  check_sizes(d.size(), y.size());
  if (!isa_available(isa)) throw Error(ErrorKind::InvalidArgument, "SIMD variant unavailable");
  table_for(isa)->cmul_acc(raw(x), raw(d), raw(y), x.size());
}

Complex geometric_block(Isa isa, Complex r, std::size_t n) {
  if (!isa_available(isa)) throw Error(ErrorKind::InvalidArgument, "SIMD variant unavailable");
  double out[2];
  table_for(isa)->geometric_block(r.real(), r.imag(), n, out);
  return {out[0], out[1]};
}

void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  check_sizes(x.size(), y.size());
  current().load(std::memory_order_relaxed)->caxpy(a.real(), a.imag(), raw(x), raw(y), x.size());
}

void cmul_acc(std::span<const Complex> x, std::span<const Complex> d, std::span<Complex> y) {
  check_sizes(x.size(), y.size());
  check_sizes(d.size(), y.size());
  current().load(std::memory_order_relaxed)->cmul_acc(raw(x), raw(d), raw(y), x.size());
}

Complex geometric_block(Complex r, std::size_t n) {
  double out[2];
  current().load(std::memory_order_relaxed)->geometric_block(r.real(), r.imag(), n, out);
  return {out[0], out[1]};
}

Complex phase_sum(Complex z, double offset, std::size_t n) {
  constexpr std::size_t kBlock = 4096;
  const Complex r = std::exp(-z);
  Complex total = 0.0;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t m = std::min(kBlock, n - start);
    const Complex anchor = std::exp(-z * (static_cast<double>(start) + offset));
    total += anchor * geometric_block(r, m);
  }
  return total;
}

}  // namespace swanson::kernels
