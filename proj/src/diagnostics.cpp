#include "logitkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "logitkit/errors.hpp"
#include "logitkit/special.hpp"

namespace logitkit {

std::string to_string(GofMethod m) {
    switch (m) {
        case GofMethod::Pearson: return "Pearson";
        case GofMethod::Deviance: return "Deviance";
        case GofMethod::HosmerLemeshow: return "Hosmer-Lemeshow";
    }
    throw ValidationError("unknown GOF method");
}

namespace {

int residual_df(const FitResult& fr, const Dataset& ds) {
    const std::size_t params = 1 + fr.coefficients.slopes.size();
    if (ds.n_rows() <= params)
        throw ValidationError("goodness of fit needs more observations than parameters");
    return static_cast<int>(ds.n_rows() - params);
}

void check_alignment(const FitResult& fr, const Dataset& ds) {
    if (fr.fitted.size() != ds.n_rows())
        throw ValidationError("fit and dataset disagree on the number of observations");
}

}  // namespace

GofResult pearson_gof(const FitResult& fr, const Dataset& ds) {
    check_alignment(fr, ds);
    const auto y = ds.column(ds.response_index());
    GofResult r;
    r.method = GofMethod::Pearson;
    r.df = residual_df(fr, ds);
    bool clamped = false;
    double stat = 0.0;
    for (std::size_t i = 0; i < fr.fitted.size(); ++i) {
        const double p = fr.fitted[i];
        if (p <= kProbEps || p >= 1.0 - kProbEps) clamped = true;
        const double res = y[i] - p;
        stat += res * res / (p * (1.0 - p));
    }
    r.statistic = stat;
    r.p = chi_square_sf(stat, r.df);
    if (clamped)
        r.warning = "fitted probabilities at the clamp boundary; statistic unreliable "
                    "under separation";
    return r;
}

GofResult deviance_gof(const FitResult& fr, const Dataset& ds) {
    check_alignment(fr, ds);
    GofResult r;
    r.method = GofMethod::Deviance;
    r.df = residual_df(fr, ds);
    r.statistic = -2.0 * fr.log_likelihood;
    r.p = chi_square_sf(r.statistic, r.df);
    return r;
}

GofResult hosmer_lemeshow(const FitResult& fr, const Dataset& ds, int groups) {
    check_alignment(fr, ds);
    if (groups < 3) throw ValidationError("hosmer_lemeshow: groups must be >= 3");
    const std::size_t n = ds.n_rows();
    if (n < static_cast<std::size_t>(groups))
        throw ValidationError("hosmer_lemeshow: fewer observations than groups");
    if (n / static_cast<std::size_t>(groups) < 2)
        throw ValidationError("hosmer_lemeshow: bins of fewer than 2 observations are "
                              "degenerate; reduce groups");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fr.fitted[a] < fr.fitted[b];
    });

    const auto y = ds.column(ds.response_index());
    const std::size_t g = static_cast<std::size_t>(groups);
    const std::size_t base = n / g;
    const std::size_t bigger = n % g;

    double stat = 0.0;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < g; ++b) {
        const std::size_t size = base + (b < bigger ? 1 : 0);
        double observed = 0.0;
        double expected = 0.0;
        for (std::size_t i = 0; i < size; ++i, ++pos) {
            observed += y[order[pos]];
            expected += fr.fitted[order[pos]];
        }
        const double ng = static_cast<double>(size);
        const double denom = expected * (1.0 - expected / ng);
        if (denom == 0.0)
            throw ValidationError("hosmer_lemeshow: bin " + std::to_string(b + 1) +
                                  " is degenerate (expected count " + std::to_string(expected) +
                                  " of " + std::to_string(size) + ")");
        const double diff = observed - expected;
        stat += diff * diff / denom;
    }

    GofResult r;
    r.method = GofMethod::HosmerLemeshow;
    r.statistic = stat;
    r.df = groups - 2;
    r.p = chi_square_sf(stat, r.df);
    return r;
}

PairCounts count_pairs_fast(std::span<const double> pi_ones_sorted,
                            std::span<const double> pi_zeros_sorted) {
    if (!std::is_sorted(pi_ones_sorted.begin(), pi_ones_sorted.end()) ||
        !std::is_sorted(pi_zeros_sorted.begin(), pi_zeros_sorted.end()))
        throw ValidationError("count_pairs_fast: inputs must be sorted ascending");

    const std::ptrdiff_t n1 = static_cast<std::ptrdiff_t>(pi_ones_sorted.size());
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
    std::uint64_t ties = 0;
#pragma omp parallel for schedule(static) reduction(+ : concordant, discordant, ties) \
    if (n1 > 512)
    for (std::ptrdiff_t i = 0; i < n1; ++i) {
        const double p1 = pi_ones_sorted[static_cast<std::size_t>(i)];
        const auto lo =
            std::lower_bound(pi_zeros_sorted.begin(), pi_zeros_sorted.end(), p1);
        const auto hi = std::upper_bound(lo, pi_zeros_sorted.end(), p1);
        concordant += static_cast<std::uint64_t>(lo - pi_zeros_sorted.begin());
        ties += static_cast<std::uint64_t>(hi - lo);
        discordant += static_cast<std::uint64_t>(pi_zeros_sorted.end() - hi);
    }
    return {concordant, discordant, ties};
}

AssociationResult association(const FitResult& fr, const Dataset& ds) {
    check_alignment(fr, ds);
    const auto y = ds.column(ds.response_index());
    std::vector<double> ones;
    std::vector<double> zeros;
    for (std::size_t i = 0; i < y.size(); ++i)
        (y[i] == 1.0 ? ones : zeros).push_back(fr.fitted[i]);
    if (ones.empty() || zeros.empty())
        throw ValidationError("association: the response has no (1, 0) pairs");

    std::sort(ones.begin(), ones.end());
    std::sort(zeros.begin(), zeros.end());
    const PairCounts pc = count_pairs_fast(ones, zeros);

    AssociationResult r;
    r.concordant = pc.concordant;
    r.discordant = pc.discordant;
    r.ties = pc.ties;
    r.total_pairs = static_cast<std::uint64_t>(ones.size()) * zeros.size();
    const double cd =
        static_cast<double>(pc.concordant) - static_cast<double>(pc.discordant);
    r.somers_d = cd / static_cast<double>(r.total_pairs);
    const double cpd = static_cast<double>(pc.concordant + pc.discordant);
    r.gamma = cpd == 0.0 ? 0.0 : cd / cpd;
    const double n = static_cast<double>(y.size());
    r.tau_a = cd / (n * (n - 1.0) / 2.0);
    return r;
}

}  // namespace logitkit
