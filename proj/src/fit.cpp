#include "logitkit/fit.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "logitkit/describe.hpp"
#include "logitkit/errors.hpp"

namespace logitkit {

void FitConfig::validate() const {
    if (max_iterations < 1) throw ValidationError("FitConfig: max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw ValidationError("FitConfig: tolerance must be positive");
    if (!(se_clip_warning > 0.0))
        throw ValidationError("FitConfig: se_clip_warning must be positive");
    if (ridge < 0.0) throw ValidationError("FitConfig: ridge must be nonnegative");
    if (!(step_scale > 0.0)) throw ValidationError("FitConfig: step_scale must be positive");
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Ridge acts on slopes only: the penalized objective is
// l(beta) - (ridge/2) * sum_j slope_j^2.
double objective(const DesignMatrix& d, const std::vector<double>& beta, double ridge) {
    double obj = log_likelihood(d, beta);
    if (ridge > 0.0)
        for (std::size_t j = 1; j < beta.size(); ++j) obj -= 0.5 * ridge * beta[j] * beta[j];
    return obj;
}

std::vector<double> penalized_score(const DesignMatrix& d, const std::vector<double>& beta,
                                    double ridge) {
    std::vector<double> g = score(d, beta);
    if (ridge > 0.0)
        for (std::size_t j = 1; j < beta.size(); ++j) g[j] -= ridge * beta[j];
    return g;
}

Matrix penalized_information(const DesignMatrix& d, const std::vector<double>& beta,
                             double ridge) {
    Matrix info = information_matrix(d, beta);
    if (ridge > 0.0)
        for (std::size_t j = 1; j < info.rows(); ++j) info(j, j) += ridge;
    return info;
}

void check_predictor_variation(const Dataset& ds) {
    const std::size_t resp = ds.response_index();
    for (std::size_t j = 0; j < ds.n_vars(); ++j) {
        if (j == resp) continue;
        const double first = ds.cell(0, j);
        bool constant = true;
        for (std::size_t i = 1; i < ds.n_rows(); ++i)
            if (ds.cell(i, j) != first) {
                constant = false;
                break;
            }
        if (constant)
            throw ValidationError("predictor '" + ds.specs()[j].name +
                                  "' is constant and aliased with the intercept");
    }
}

}  // namespace

SeparationDiagnosis detect_separation(const std::vector<IterationRecord>& trace,
                                      const FitResult& fr, const Dataset& ds,
                                      const FitConfig& cfg) {
    SeparationDiagnosis diag;
    std::ostringstream text;

    const auto& names = fr.coefficients.names;
    for (std::size_t j = 0; j < names.size(); ++j) {
        const auto st = describe(ds, names[j]);
        const double standardized = std::fabs(fr.coefficients.slopes[j]) * st.std_dev;
        if (standardized > 15.0) {
            diag.flagged = true;
            text << "slope of " << names[j] << " spans " << standardized
                 << " SD units of the predictor; ";
        }
    }

    for (std::size_t j = 0; j < fr.standard_errors.size(); ++j) {
        if (fr.standard_errors[j] > cfg.se_clip_warning) {
            diag.flagged = true;
            const std::string label = j == 0 ? std::string("intercept") : names[j - 1];
            text << "standard error of " << label << " is " << fr.standard_errors[j]
                 << " (threshold " << cfg.se_clip_warning << "); ";
        }
    }

    if (!trace.empty() && trace.back().iteration >= cfg.max_iterations) {
        const double last_gain =
            trace.size() >= 2 ? trace.back().log_likelihood - trace[trace.size() - 2].log_likelihood
                              : 0.0;
        if (last_gain > cfg.tolerance) {
            std::size_t pinned = 0;
            for (double p : fr.fitted)
                if (p <= 2.0 * kProbEps || p >= 1.0 - 2.0 * kProbEps) ++pinned;
            if (fr.fitted.size() > 0 &&
                static_cast<double>(pinned) >= 0.99 * static_cast<double>(fr.fitted.size())) {
                diag.flagged = true;
                text << pinned << " of " << fr.fitted.size()
                     << " fitted probabilities are pinned at the bounds with the likelihood "
                        "still improving at the iteration cap; ";
            }
        }
    }

    if (diag.flagged) {
        std::string s = text.str();
        if (s.size() >= 2) s.erase(s.size() - 2);
        diag.text = "quasi-complete separation suspected: " + s;
    }
    return diag;
}

FitResult fit(const Dataset& ds, const FitConfig& cfg) {
    cfg.validate();
    check_predictor_variation(ds);

    const DesignMatrix d(ds);
    const std::size_t k = d.n_params();
    const std::size_t n = d.n();

    FitResult fr;
    if (n <= k)
        fr.warnings.push_back("only " + std::to_string(n) + " observations for " +
                              std::to_string(k) + " parameters; estimates are unstable");

    std::size_t ones = 0;
    for (double y : d.response())
        if (y == 1.0) ++ones;
    const double pbar = clamp_probability(static_cast<double>(ones) / static_cast<double>(n));

    std::vector<double> beta(k, 0.0);
    beta[0] = logit(pbar);

    double obj = objective(d, beta, cfg.ridge);
    std::vector<double> g = penalized_score(d, beta, cfg.ridge);

    fr.trace.push_back({0, obj, max_abs(g), 0});

    bool numeric_converged = false;
    int iter = 0;
    while (iter < cfg.max_iterations) {
        ++iter;
        const Matrix info = penalized_information(d, beta, cfg.ridge);
        std::vector<double> step;
        try {
            step = solve_spd(info, g);
        } catch (const NumericError& e) {
            throw NumericError("information matrix is singular at iteration " +
                               std::to_string(iter) + ": " + e.what());
        }
        for (double& s : step) s *= cfg.step_scale;

        // Ascent is enforced only beyond the likelihood's own rounding noise;
        // near the optimum the double-precision surface is flat over a region
        // wider than the score tolerance, and the full Newton step must pass
        // through it.
        const double slack =
            8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(obj));
        double scale = 1.0;
        std::vector<double> cand(k);
        double cand_obj = 0.0;
        int halvings = 0;
        for (;;) {
            for (std::size_t j = 0; j < k; ++j) cand[j] = beta[j] + scale * step[j];
            cand_obj = objective(d, cand, cfg.ridge);
            if (cand_obj >= obj - slack || !cfg.step_halving) break;
            if (++halvings > 30)
                throw NumericError("step-halving failed to restore likelihood ascent at "
                                   "iteration " +
                                   std::to_string(iter));
            scale *= 0.5;
        }

        const double delta = cand_obj - obj;
        beta = cand;
        obj = cand_obj;
        g = penalized_score(d, beta, cfg.ridge);
        const double gmax = max_abs(g);
        fr.trace.push_back({iter, obj, gmax, halvings});

        if (gmax <= cfg.tolerance && std::fabs(delta) <= cfg.tolerance) {
            numeric_converged = true;
            break;
        }
    }

    fr.coefficients = unpack(beta, d.predictor_names());
    fr.log_likelihood = log_likelihood(d, beta);
    fr.iterations = iter;
    fr.fitted = fitted_probabilities(d, beta);
    fr.covariance = invert_spd(penalized_information(d, beta, cfg.ridge));
    fr.standard_errors = standard_errors(fr);

    const SeparationDiagnosis diag = detect_separation(fr.trace, fr, ds, cfg);
    fr.separation_detected = diag.flagged;
    fr.separation_diagnosis = diag.text;
    fr.converged = numeric_converged && !diag.flagged;
    if (diag.flagged) fr.warnings.push_back(diag.text);
    if (!numeric_converged)
        fr.warnings.push_back("did not meet the convergence tolerance within " +
                              std::to_string(cfg.max_iterations) + " iterations");
    return fr;
}

std::vector<double> standard_errors(const FitResult& fr) {
    const std::size_t k = fr.covariance.rows();
    if (k == 0) throw ValidationError("standard_errors: covariance is absent");
    std::vector<double> se(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double v = fr.covariance(j, j);
        if (v < 0.0)
            throw NumericError("covariance diagonal entry " + std::to_string(j) +
                               " is negative (" + std::to_string(v) + ")");
        se[j] = std::sqrt(v);
    }
    return se;
}

double predict(const FitResult& fr, std::span<const double> x) {
    return inverse_logit(linear_predictor(fr.coefficients, x));
}

}  // namespace logitkit
