#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace swiptgame {

/// Dense row-major matrix of doubles, sized for small network instances.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// y = A x
  std::vector<double> multiply(const std::vector<double>& x) const;

  double max_abs_entry() const;
  double max_row_sum() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns nullopt when a pivot vanishes relative to the matrix scale
/// (singular to working precision).
std::optional<std::vector<double>> solve_linear(Matrix a, std::vector<double> b);

}  // namespace swiptgame
