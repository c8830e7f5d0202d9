#pragma once

#include <span>

#include "logitkit/diagnostics.hpp"
#include "logitkit/logit.hpp"

namespace logitkit::reference {

// Plain serial implementations of the hot kernels, kept as the comparison
// baseline for tests and benchmarks. The likelihood evaluates the Bernoulli
// product directly on clamped probabilities instead of the fused stable
// identity, so it is also an independent route for |z| below the clamp knee.

double log_likelihood(const DesignMatrix& d, std::span<const double> beta);
std::vector<double> score(const DesignMatrix& d, std::span<const double> beta);
Matrix information_matrix(const DesignMatrix& d, std::span<const double> beta);

/// O(n1*n0) double loop over all (one, zero) probability pairs.
PairCounts count_pairs(std::span<const double> pi_ones, std::span<const double> pi_zeros);

}  // namespace logitkit::reference
