#include "logitkit/reference.hpp"

#include <cmath>
#include <cstddef>

namespace logitkit::reference {

double log_likelihood(const DesignMatrix& d, std::span<const double> beta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) {
        double z = 0.0;
        const auto row = d.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) z += row[j] * beta[j];
        const double p = clamp_probability(inverse_logit(z));
        ll += d.response()[i] == 1.0 ? std::log(p) : std::log(1.0 - p);
    }
    return ll;
}

std::vector<double> score(const DesignMatrix& d, std::span<const double> beta) {
    std::vector<double> g(d.n_params(), 0.0);
    for (std::size_t i = 0; i < d.n(); ++i) {
        const auto row = d.row(i);
        double z = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) z += row[j] * beta[j];
        const double r = d.response()[i] - inverse_logit(z);
        for (std::size_t j = 0; j < row.size(); ++j) g[j] += r * row[j];
    }
    return g;
}

Matrix information_matrix(const DesignMatrix& d, std::span<const double> beta) {
    const std::size_t k = d.n_params();
    Matrix info(k, k);
    for (std::size_t i = 0; i < d.n(); ++i) {
        const auto row = d.row(i);
        double z = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) z += row[j] * beta[j];
        const double p = clamp_probability(inverse_logit(z));
        const double w = p * (1.0 - p);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) info(a, b) += w * row[a] * row[b];
    }
    return info;
}

PairCounts count_pairs(std::span<const double> pi_ones, std::span<const double> pi_zeros) {
    PairCounts pc;
    for (double p1 : pi_ones)
        for (double p0 : pi_zeros) {
            if (p1 > p0)
                ++pc.concordant;
            else if (p1 < p0)
                ++pc.discordant;
            else
                ++pc.ties;
        }
    return pc;
}

}  // namespace logitkit::reference
