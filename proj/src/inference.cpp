#include "logitkit/inference.hpp"

#include <cmath>

#include "logitkit/errors.hpp"
#include "logitkit/special.hpp"

namespace logitkit {

WaldRow wald_test(double coefficient, double se, double alpha) {
    if (!(se > 0.0)) throw ValidationError("wald_test: se must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("wald_test: alpha must lie in (0, 1)");
    WaldRow row;
    row.coefficient = coefficient;
    row.se = se;
    row.z = coefficient / se;
    row.p_two_sided = 2.0 * (1.0 - normal_cdf(std::fabs(row.z)));
    row.odds_ratio = odds_ratio(coefficient);
    row.significant = std::fabs(row.z) > normal_quantile(1.0 - alpha / 2.0);
    return row;
}

GTestResult g_test(double ll_full, double ll_null, int df) {
    if (df < 1) throw ValidationError("g_test: df must be >= 1");
    if (ll_full < ll_null - 1e-9)
        throw ValidationError("g_test: full-model likelihood is below the null "
                              "likelihood; the fit is broken");
    GTestResult r;
    r.ll_full = ll_full;
    r.ll_null = ll_null;
    r.df = df;
    r.g = std::max(0.0, 2.0 * (ll_full - ll_null));
    r.p = chi_square_sf(r.g, df);
    return r;
}

double odds_ratio(double coefficient) {
    if (!std::isfinite(coefficient))
        throw ValidationError("odds_ratio: coefficient must be finite");
    return std::exp(coefficient);
}

}  // namespace logitkit
