#include "logitkit/logit.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "logitkit/errors.hpp"

namespace logitkit {

double linear_predictor(const CoefficientVector& c, std::span<const double> x) {
    if (x.size() != c.slopes.size())
        throw ValidationError("linear_predictor: covariate row has " + std::to_string(x.size()) +
                              " values but the model has " + std::to_string(c.slopes.size()) +
                              " slopes");
    double z = c.intercept;
    for (std::size_t j = 0; j < x.size(); ++j) z += c.slopes[j] * x[j];
    return z;
}

double inverse_logit(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("logit: p must lie in (0, 1)");
    return std::log(p / (1.0 - p));
}

DesignMatrix::DesignMatrix(const Dataset& ds)
    : n_(ds.n_rows()),
      k_(ds.n_vars()),
      names_(ds.predictor_names()) {
    x_.resize(n_ * k_);
    y_.resize(n_);
    const std::size_t resp = ds.response_index();
    for (std::size_t i = 0; i < n_; ++i) {
        double* out = x_.data() + i * k_;
        *out++ = 1.0;
        for (std::size_t j = 0; j < ds.n_vars(); ++j) {
            if (j == resp) continue;
            *out++ = ds.cell(i, j);
        }
        y_[i] = ds.cell(i, resp);
    }
}

namespace {

// Rows are summed in fixed chunks and the per-chunk partials are combined in
// chunk order, so every reduction below is bitwise reproducible for any
// OpenMP thread count.
constexpr std::size_t kChunk = 8192;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

void check_beta(const DesignMatrix& d, std::span<const double> beta) {
    if (beta.size() != d.n_params())
        throw ValidationError("kernel: beta has " + std::to_string(beta.size()) +
                              " entries but the design has " + std::to_string(d.n_params()) +
                              " parameters");
}

inline double dot_row(std::span<const double> row, std::span<const double> beta) {
    double z = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) z += row[j] * beta[j];
    return z;
}

inline double bernoulli_term(double y, double z) {
    return y * z - (std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))));
}

}  // namespace

double log_likelihood(const DesignMatrix& d, std::span<const double> beta) {
    check_beta(d, beta);
    const std::size_t n = d.n();
    const std::size_t nc = chunk_count(n);
    std::vector<double> partial(nc, 0.0);
#pragma omp parallel for schedule(static) if (nc > 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += bernoulli_term(d.response()[i], dot_row(d.row(i), beta));
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

std::vector<double> score(const DesignMatrix& d, std::span<const double> beta) {
    check_beta(d, beta);
    const std::size_t n = d.n();
    const std::size_t k = d.n_params();
    const std::size_t nc = chunk_count(n);
    std::vector<double> partial(nc * k, 0.0);
#pragma omp parallel for schedule(static) if (nc > 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double* s = partial.data() + static_cast<std::size_t>(c) * k;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto row = d.row(i);
            const double r = d.response()[i] - inverse_logit(dot_row(row, beta));
            for (std::size_t j = 0; j < k; ++j) s[j] += r * row[j];
        }
    }
    std::vector<double> g(k, 0.0);
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t j = 0; j < k; ++j) g[j] += partial[c * k + j];
    return g;
}

Matrix information_matrix(const DesignMatrix& d, std::span<const double> beta) {
    check_beta(d, beta);
    const std::size_t n = d.n();
    const std::size_t k = d.n_params();
    const std::size_t nc = chunk_count(n);
    std::vector<double> partial(nc * k * k, 0.0);
#pragma omp parallel for schedule(static) if (nc > 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double* m = partial.data() + static_cast<std::size_t>(c) * k * k;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto row = d.row(i);
            const double p = clamp_probability(inverse_logit(dot_row(row, beta)));
            const double w = p * (1.0 - p);
            for (std::size_t a = 0; a < k; ++a) {
                const double wa = w * row[a];
                for (std::size_t b = a; b < k; ++b) m[a * k + b] += wa * row[b];
            }
        }
    }
    Matrix info(k, k);
    for (std::size_t c = 0; c < nc; ++c) {
        const double* m = partial.data() + c * k * k;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) info(a, b) += m[a * k + b];
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < a; ++b) info(a, b) = info(b, a);
    return info;
}

std::vector<double> fitted_probabilities(const DesignMatrix& d, std::span<const double> beta) {
    check_beta(d, beta);
    const std::size_t n = d.n();
    std::vector<double> pi(n);
#pragma omp parallel for schedule(static) if (n > kChunk)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        pi[static_cast<std::size_t>(i)] =
            clamp_probability(inverse_logit(dot_row(d.row(static_cast<std::size_t>(i)), beta)));
    return pi;
}

namespace {

void check_names(const CoefficientVector& c, const DesignMatrix& d) {
    if (c.names != d.predictor_names())
        throw ValidationError("coefficient names do not match the dataset's predictors");
}

}  // namespace

double log_likelihood(const CoefficientVector& c, const Dataset& ds) {
    DesignMatrix d(ds);
    check_names(c, d);
    return log_likelihood(d, pack(c));
}

std::vector<double> score(const CoefficientVector& c, const Dataset& ds) {
    DesignMatrix d(ds);
    check_names(c, d);
    return score(d, pack(c));
}

Matrix information_matrix(const CoefficientVector& c, const Dataset& ds) {
    DesignMatrix d(ds);
    check_names(c, d);
    return information_matrix(d, pack(c));
}

double null_log_likelihood(std::size_t n_ones, std::size_t n_zeros) {
    const std::size_t n = n_ones + n_zeros;
    if (n == 0) throw ValidationError("null_log_likelihood: empty sample");
    double ll = 0.0;
    if (n_ones > 0)
        ll += static_cast<double>(n_ones) *
              std::log(static_cast<double>(n_ones) / static_cast<double>(n));
    if (n_zeros > 0)
        ll += static_cast<double>(n_zeros) *
              std::log(static_cast<double>(n_zeros) / static_cast<double>(n));
    return ll;
}

std::vector<double> pack(const CoefficientVector& c) {
    if (c.slopes.size() != c.names.size())
        throw ValidationError("CoefficientVector: slopes and names differ in length");
    std::vector<double> beta;
    beta.reserve(1 + c.slopes.size());
    beta.push_back(c.intercept);
    beta.insert(beta.end(), c.slopes.begin(), c.slopes.end());
    return beta;
}

CoefficientVector unpack(std::span<const double> beta, const std::vector<std::string>& names) {
    if (beta.size() != names.size() + 1)
        throw ValidationError("unpack: beta length must be one more than the name count");
    CoefficientVector c;
    c.intercept = beta[0];
    c.slopes.assign(beta.begin() + 1, beta.end());
    c.names = names;
    return c;
}

}  // namespace logitkit
