#pragma once

#include <cstddef>
#include <vector>

#include "logitkit/errors.hpp"

namespace logitkit {

/// Small dense row-major matrix. Sized for fit problems (tens of columns).
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    static Matrix identity(std::size_t k);
    bool is_symmetric(double rel_tol = 1e-12) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

/// Pivot floor for the Cholesky factorization; a pivot at or below this
/// makes the matrix non-SPD for our purposes.
inline constexpr double kSpdPivotFloor = 1e-12;

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// Throws NumericError on a pivot <= kSpdPivotFloor.
Matrix cholesky_lower(const Matrix& a);

/// Solves A x = b for symmetric positive definite A via Cholesky.
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b);

/// Inverse of a symmetric positive definite matrix; result is symmetrized.
Matrix invert_spd(const Matrix& a);

}  // namespace logitkit
