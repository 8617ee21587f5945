#include "swanson/banded_operator.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "swanson/error.hpp"
#include "swanson/kernels.hpp"

namespace swanson {

BandedOperator::BandedOperator(std::size_t dim, std::size_t bandwidth)
    : dim_(dim), bw_(bandwidth), diag_((2 * bandwidth + 1) * dim, Complex(0.0, 0.0)) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "operator dimension must be >= 1");
}

Complex& BandedOperator::at(std::size_t i, long offset) {
  const long j = static_cast<long>(i) + offset;
  if (i >= dim_ || j < 0 || j >= static_cast<long>(dim_) || std::abs(offset) > static_cast<long>(bw_))
    throw Error(ErrorKind::InvalidArgument, "banded index out of range");
  return diag_[index(i, offset)];
}

Complex BandedOperator::get(std::size_t i, std::size_t j) const {
  const long o = static_cast<long>(j) - static_cast<long>(i);
  if (i >= dim_ || j >= dim_ || std::abs(o) > static_cast<long>(bw_)) return {0.0, 0.0};
  return diag_[index(i, o)];
}

void BandedOperator::set_zero() { std::fill(diag_.begin(), diag_.end(), Complex(0.0, 0.0)); }

DenseMatrix BandedOperator::dense() const {
  DenseMatrix m = DenseMatrix::Zero(dim_, dim_);
  const long b = static_cast<long>(bw_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (long o = -b; o <= b; ++o) {
      const long j = static_cast<long>(i) + o;
      if (j >= 0 && j < static_cast<long>(dim_)) m(i, j) = diag_[index(i, o)];
    }
  return m;
}

BandedOperator BandedOperator::adjoint() const {
  BandedOperator r(dim_, bw_);
  const long b = static_cast<long>(bw_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (long o = -b; o <= b; ++o) {
      const long j = static_cast<long>(i) + o;
      if (j >= 0 && j < static_cast<long>(dim_))
        r.diag_[r.index(static_cast<std::size_t>(j), -o)] = std::conj(diag_[index(i, o)]);
    }
  return r;
}

BandedOperator BandedOperator::widened(std::size_t bandwidth) const {
  if (bandwidth < bw_) throw Error(ErrorKind::InvalidArgument, "cannot narrow a band");
  BandedOperator r(dim_, bandwidth);
  const long b = static_cast<long>(bw_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (long o = -b; o <= b; ++o) r.diag_[r.index(i, o)] = diag_[index(i, o)];
  return r;
}

double BandedOperator::norm1() const {
  std::vector<double> col(dim_, 0.0);
  const long b = static_cast<long>(bw_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (long o = -b; o <= b; ++o) {
      const long j = static_cast<long>(i) + o;
      if (j >= 0 && j < static_cast<long>(dim_)) col[j] += std::abs(diag_[index(i, o)]);
    }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

BandedOperator& BandedOperator::operator+=(const BandedOperator& o) {
  if (o.dim_ != dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (o.bw_ > bw_) *this = widened(o.bw_);
  const long b = static_cast<long>(o.bw_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (long off = -b; off <= b; ++off) diag_[index(i, off)] += o.diag_[o.index(i, off)];
  return *this;
}

BandedOperator& BandedOperator::operator*=(Complex s) {
  for (auto& v : diag_) v *= s;
  return *this;
}

BandedOperator operator*(const BandedOperator& a, const BandedOperator& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const std::size_t n = a.dim_;
  BandedOperator r(n, a.bw_ + b.bw_);
  const long ba = static_cast<long>(a.bw_), bb = static_cast<long>(b.bw_);
  for (std::size_t i = 0; i < n; ++i)
    for (long oa = -ba; oa <= ba; ++oa) {
      const long k = static_cast<long>(i) + oa;
      if (k < 0 || k >= static_cast<long>(n)) continue;
      const Complex av = a.diag_[a.index(i, oa)];
      for (long ob = -bb; ob <= bb; ++ob) {
        const long j = k + ob;
        if (j < 0 || j >= static_cast<long>(n)) continue;
        r.diag_[r.index(i, oa + ob)] += av * b.diag_[b.index(static_cast<std::size_t>(k), ob)];
      }
    }
  return r;
}

void BandedOperator::commutator_acc(Complex scale, const DenseMatrix& rho, DenseMatrix& out) const {
  const long n = static_cast<long>(dim_);
  const long b = static_cast<long>(bw_);
  if (rho.rows() != n || rho.cols() != n || out.rows() != n || out.cols() != n)
    throw Error(ErrorKind::InvalidArgument, "commutator operand dimension mismatch");
  // column-indexed diagonals for rho H: d_o[k] = -scale H(k - o, k)
  std::vector<Complex> scratch(static_cast<std::size_t>(2 * b + 1) * dim_, Complex(0.0, 0.0));
  for (long o = -b; o <= b; ++o) {
    Complex* d = scratch.data() + (o + b) * n;
    for (long k = std::max(0L, o); k < std::min(n, n + o); ++k)
      d[k] = -scale * diag_[index(static_cast<std::size_t>(k - o), o)];
  }
  for (long i = 0; i < n; ++i) {
    std::span<Complex> orow(out.data() + i * n, static_cast<std::size_t>(n));
    const Complex* rrow = rho.data() + i * n;
    for (long o = -b; o <= b; ++o) {
      const long j = i + o;
      if (j < 0 || j >= n) continue;
      const Complex h = diag_[index(static_cast<std::size_t>(i), o)];
      if (h != Complex(0.0, 0.0))
        kernels::caxpy(scale * h, std::span<const Complex>(rho.data() + j * n, n), orow);
    }
    for (long o = -b; o <= b; ++o) {
      const long k0 = std::max(0L, o), k1 = std::min(n, n + o);
      if (k1 <= k0) continue;
      const std::size_t len = static_cast<std::size_t>(k1 - k0);
      kernels::cmul_acc(std::span<const Complex>(rrow + (k0 - o), len),
                        std::span<const Complex>(scratch.data() + (o + b) * n + k0, len),
                        orow.subspan(static_cast<std::size_t>(k0), len));
    }
  }
}

}  // namespace swanson
