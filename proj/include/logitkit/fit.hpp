#pragma once

#include <string>
#include <vector>

#include "logitkit/dataset.hpp"
#include "logitkit/linalg.hpp"
#include "logitkit/logit.hpp"

namespace logitkit {

struct FitConfig {
    int max_iterations = 50;
    double tolerance = 1e-8;        // on max|score| and on |delta log-likelihood|
    double se_clip_warning = 50.0;  // any SE above this flags separation
    double ridge = 0.0;             // optional slope penalty, off by default

    // Test hooks used by the validation battery's negative control.
    bool step_halving = true;
    double step_scale = 1.0;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double log_likelihood = 0.0;
    double max_abs_score = 0.0;
    int halvings = 0;
};

struct FitResult {
    CoefficientVector coefficients;
    Matrix covariance;                   // (X'WX)^-1 at the final iterate
    std::vector<double> standard_errors;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    bool separation_detected = false;
    std::string separation_diagnosis;
    std::vector<double> fitted;          // clamped probabilities per observation
    std::vector<IterationRecord> trace;  // accepted iterates only
    std::vector<std::string> warnings;
};

/// Maximum-likelihood fit by Newton/IRLS with step-halving, started from the
/// null model (logit of the response mean, zero slopes). The likelihood is
/// nondecreasing across accepted iterations. A fit that trips the separation
/// detector is reported with converged=false even if the numeric criteria
/// fired, since those criteria are meaningless on a divergent likelihood.
FitResult fit(const Dataset& ds, const FitConfig& cfg = {});

/// Element-wise sqrt of the covariance diagonal.
/// Throws NumericError on a negative diagonal entry.
std::vector<double> standard_errors(const FitResult& fr);

/// inverse_logit(linear_predictor(coefficients, x)).
double predict(const FitResult& fr, std::span<const double> x);

struct SeparationDiagnosis {
    bool flagged = false;
    std::string text;
};

/// Quasi-complete-separation heuristics: a slope spanning > 15 SD units of
/// its predictor, any SE above cfg.se_clip_warning, or nearly all fitted
/// probabilities pinned at the clamp bounds while the likelihood was still
/// improving when the iteration budget ran out.
SeparationDiagnosis detect_separation(const std::vector<IterationRecord>& trace,
                                      const FitResult& fr, const Dataset& ds,
                                      const FitConfig& cfg);

}  // namespace logitkit
