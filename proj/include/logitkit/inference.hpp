#pragma once

#include <string>

namespace logitkit {

struct WaldRow {
    std::string variable;
    double coefficient = 0.0;
    double se = 0.0;
    double z = 0.0;
    double p_two_sided = 1.0;
    double odds_ratio = 1.0;
    bool significant = false;
};

/// z = coefficient/se, two-sided normal p, significance at |z| > z_{alpha/2}.
/// The variable name is left for the caller to fill in.
WaldRow wald_test(double coefficient, double se, double alpha = 0.05);

struct GTestResult {
    double g = 0.0;
    int df = 0;
    double p = 1.0;
    double ll_full = 0.0;
    double ll_null = 0.0;
};

/// Likelihood-ratio test of all slopes: G = 2(ll_full - ll_null) ~ chi2(df).
/// ll_full below ll_null (beyond 1e-9 slack) signals a broken fit and throws.
GTestResult g_test(double ll_full, double ll_null, int df);

/// exp(coefficient): multiplicative odds change per unit of the predictor.
double odds_ratio(double coefficient);

}  // namespace logitkit
