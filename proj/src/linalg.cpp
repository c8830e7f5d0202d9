#include "logitkit/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace logitkit {

Matrix Matrix::identity(std::size_t k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_symmetric(double rel_tol) const {
    if (rows_ != cols_) return false;
    double scale = 0.0;
    for (double v : a_) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
    return true;
}

Matrix cholesky_lower(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("cholesky_lower: matrix must be square");
    if (!a.is_symmetric()) throw ValidationError("cholesky_lower: matrix must be symmetric");
    const std::size_t k = a.rows();
    Matrix l(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        double diag = a(j, j);
        for (std::size_t p = 0; p < j; ++p) diag -= l(j, p) * l(j, p);
        if (!(diag > kSpdPivotFloor))
            throw NumericError("matrix is not positive definite (pivot " +
                               std::to_string(diag) + " at column " + std::to_string(j) + ")");
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = a(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

namespace {

std::vector<double> forward_back(const Matrix& l, const std::vector<double>& b) {
    const std::size_t k = l.rows();
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * y[j];
        y[i] = s / l(i, i);
    }
    std::vector<double> x(k);
    for (std::size_t ii = k; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < k; ++j) s -= l(j, ii) * x[j];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

}  // namespace

std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b) {
    if (b.size() != a.rows()) throw ValidationError("solve_spd: size mismatch");
    return forward_back(cholesky_lower(a), b);
}

Matrix invert_spd(const Matrix& a) {
    const Matrix l = cholesky_lower(a);
    const std::size_t k = a.rows();
    Matrix inv(k, k);
    std::vector<double> e(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = forward_back(l, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < k; ++i) inv(i, j) = col[i];
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = v;
            inv(j, i) = v;
        }
    return inv;
}

}  // namespace logitkit
