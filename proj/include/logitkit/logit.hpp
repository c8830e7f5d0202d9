#pragma once

#include <span>
#include <string>
#include <vector>

#include "logitkit/dataset.hpp"
#include "logitkit/linalg.hpp"

namespace logitkit {

/// Probabilities are clamped into [kProbEps, 1 - kProbEps] wherever they feed
/// a log, a variance weight, or a denominator, so degenerate fits stay finite.
inline constexpr double kProbEps = 1e-12;

inline double clamp_probability(double p) {
    return p < kProbEps ? kProbEps : (p > 1.0 - kProbEps ? 1.0 - kProbEps : p);
}

struct CoefficientVector {
    double intercept = 0.0;
    std::vector<double> slopes;       // one per non-response variable
    std::vector<std::string> names;   // aligned with slopes
};

/// intercept + dot(slopes, x). x must match the slope count.
double linear_predictor(const CoefficientVector& c, std::span<const double> x);

/// e^z / (1 + e^z), evaluated on the non-overflowing branch. Not clamped, so
/// logit(inverse_logit(z)) round-trips through |z| = 30 and beyond.
double inverse_logit(double z);

/// ln(p / (1 - p)) for p in the open unit interval.
double logit(double p);

/// Row-major design matrix [1, x_1 .. x_p] plus the response, extracted once
/// per fit so the kernels can stream over contiguous rows.
class DesignMatrix {
  public:
    explicit DesignMatrix(const Dataset& ds);

    std::size_t n() const { return n_; }
    std::size_t n_params() const { return k_; }
    std::span<const double> row(std::size_t i) const { return {x_.data() + i * k_, k_}; }
    const std::vector<double>& response() const { return y_; }
    const std::vector<std::string>& predictor_names() const { return names_; }

  private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;            // 1 + number of predictors
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<std::string> names_;
};

// Kernels over a prebuilt design. beta holds [intercept, slopes...].
// Sums are chunked with partials combined in chunk order, so results are
// bitwise identical for any OpenMP thread count.
double log_likelihood(const DesignMatrix& d, std::span<const double> beta);
std::vector<double> score(const DesignMatrix& d, std::span<const double> beta);
/// X^T W X with W = diag(pi (1 - pi)), pi clamped so the matrix stays
/// positive definite even when a fit runs off toward separation.
Matrix information_matrix(const DesignMatrix& d, std::span<const double> beta);
/// Per-row inverse_logit of the linear predictor, clamped.
std::vector<double> fitted_probabilities(const DesignMatrix& d, std::span<const double> beta);

// Spec-level entry points; coefficient names are checked against the
// dataset's predictor order.
double log_likelihood(const CoefficientVector& c, const Dataset& ds);
std::vector<double> score(const CoefficientVector& c, const Dataset& ds);
Matrix information_matrix(const CoefficientVector& c, const Dataset& ds);

/// Bernoulli log-likelihood of the intercept-only model at its MLE.
double null_log_likelihood(std::size_t n_ones, std::size_t n_zeros);

/// [intercept, slopes...] flattening used by the kernels.
std::vector<double> pack(const CoefficientVector& c);
CoefficientVector unpack(std::span<const double> beta, const std::vector<std::string>& names);

}  // namespace logitkit
