#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "logitkit/dataset.hpp"
#include "logitkit/fit.hpp"

namespace logitkit {

enum class GofMethod { Pearson, Deviance, HosmerLemeshow };

std::string to_string(GofMethod m);

struct GofResult {
    GofMethod method = GofMethod::Pearson;
    double statistic = 0.0;
    int df = 0;
    double p = 1.0;
    std::string warning;  // empty when clean
};

/// Pearson chi-square on per-observation residuals, df = n - parameters.
/// Probabilities at the clamp boundary attach a reliability warning.
GofResult pearson_gof(const FitResult& fr, const Dataset& ds);

/// Deviance -2*log-likelihood (saturated likelihood is 0 for ungrouped
/// binary data), df = n - parameters.
GofResult deviance_gof(const FitResult& fr, const Dataset& ds);

/// Hosmer-Lemeshow on near-equal-count risk groups: observations stably
/// sorted by fitted probability, first n mod g bins one observation larger,
/// df = groups - 2. Every bin must hold at least two observations.
GofResult hosmer_lemeshow(const FitResult& fr, const Dataset& ds, int groups = 10);

struct PairCounts {
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
    std::uint64_t ties = 0;
};

/// Counts concordant/discordant/tied (one, zero) probability pairs by binary
/// search, O((n1+n0) log n0). Inputs must be sorted ascending. Counts are
/// exact and identical to the double loop.
PairCounts count_pairs_fast(std::span<const double> pi_ones_sorted,
                            std::span<const double> pi_zeros_sorted);

struct AssociationResult {
    std::uint64_t concordant = 0;
    std::uint64_t discordant = 0;
    std::uint64_t ties = 0;
    std::uint64_t total_pairs = 0;  // n1 * n0
    double somers_d = 0.0;          // (C-D)/total_pairs
    double gamma = 0.0;             // (C-D)/(C+D), 0 when all pairs tie
    double tau_a = 0.0;             // (C-D)/(n(n-1)/2)
};

/// Rank association between the response and fitted probabilities, with
/// ties compared at full float precision.
AssociationResult association(const FitResult& fr, const Dataset& ds);

}  // namespace logitkit
