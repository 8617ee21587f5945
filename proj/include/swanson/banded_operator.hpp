#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "swanson/types.hpp"

namespace swanson {

using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Square operator with nonzero diagonals at offsets -bandwidth..bandwidth.
class BandedOperator {
 public:
  BandedOperator() = default;
  BandedOperator(std::size_t dim, std::size_t bandwidth);

  std::size_t dim() const { return dim_; }
  std::size_t bandwidth() const { return bw_; }

  // element (i, i + offset); offset must keep the column in range
  Complex& at(std::size_t i, long offset);
  Complex get(std::size_t i, std::size_t j) const;

  void set_zero();
  DenseMatrix dense() const;
  BandedOperator adjoint() const;
  BandedOperator widened(std::size_t bandwidth) const;
  // max absolute column sum
  double norm1() const;

  BandedOperator& operator+=(const BandedOperator& o);
  BandedOperator& operator*=(Complex s);

  // out += scale * (H rho - rho H)
  void commutator_acc(Complex scale, const DenseMatrix& rho, DenseMatrix& out) const;

  friend BandedOperator operator*(const BandedOperator& a, const BandedOperator& b);
  friend BandedOperator operator+(BandedOperator a, const BandedOperator& b) { return a += b; }
  friend BandedOperator operator*(Complex s, BandedOperator a) { return a *= s; }

 private:
  std::size_t index(std::size_t i, long offset) const {
    return static_cast<std::size_t>(offset + static_cast<long>(bw_)) * dim_ + i;
  }
  std::size_t dim_ = 0;
  std::size_t bw_ = 0;
  std::vector<Complex> diag_;
};

}  // namespace swanson
