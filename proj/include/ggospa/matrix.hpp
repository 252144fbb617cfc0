#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace ggospa {

/// Dense row-major matrix of doubles. Sizes in this library stay at desk
/// scale (a few hundred rows), so no expression templates or views.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const noexcept { return data_; }

  Matrix transposed() const;
  /// Sub-block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;

  bool is_symmetric() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Entrywise 1-norm: sum of absolute values of all entries.
double entrywise_l1(const Matrix& a);

/// Largest absolute entry of a - b; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace ggospa
