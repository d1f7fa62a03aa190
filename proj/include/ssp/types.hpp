#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace ssp {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RowMatrixX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using RowMatrix = RowMatrixX<double>;
using CountMatrix = RowMatrixX<std::uint64_t>;

using StateIndex = std::size_t;
using ActionIndex = std::size_t;

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Index of the smallest entry of a row; ties go to the lowest index.
template <typename Derived>
Eigen::Index argmin_low(const Eigen::DenseBase<Derived>& row) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < row.size(); ++i) {
    if (row(i) < row(best)) best = i;
  }
  return best;
}

}  // namespace ssp
