#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "logitkit/dataset.hpp"
#include "logitkit/logit.hpp"

namespace logitkit {

struct NormalGen {
    double mean = 0.0;
    double sd = 1.0;
};
struct UniformGen {
    double lo = 0.0;
    double hi = 1.0;
};
struct BernoulliGen {
    double p = 0.5;
};
struct CategoricalOrdinalGen {
    std::vector<double> levels;
    std::vector<double> probs;
};

struct CovariateGenerator {
    std::string name;
    std::variant<NormalGen, UniformGen, BernoulliGen, CategoricalOrdinalGen> kind;

    void validate() const;
    Role role() const;  // BernoulliGen columns are dummies, the rest continuous
};

/// Ground truth for synthetic datasets: covariate laws plus the logistic
/// response mechanism y_i ~ Bernoulli(inverse_logit(z_i)).
struct SynthSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string response_name = "Y";
    std::vector<CovariateGenerator> generators;
    CoefficientVector true_coefficients;  // names aligned with generators

    void validate() const;
};

/// JSON form: top-level n, seed, optional response, coefficients
/// (name -> value with "_intercept" reserved), generators (name -> {kind,...},
/// file order fixes the column order and the RNG stream per column).
SynthSpec synth_spec_from_json(std::istream& in);

/// Response-first variable schema implied by the spec.
std::vector<VariableSpec> schema_of(const SynthSpec& spec);

/// Deterministic for a given seed and independent of thread count.
Dataset generate(const SynthSpec& spec);

struct BruteForceResult {
    CoefficientVector coefficients;
    double log_likelihood = 0.0;
    long evaluations = 0;
    bool stabilized = false;
};

/// Derivative-free MLE oracle: restarted Nelder-Mead plus cyclic
/// golden-section polish over the serial reference likelihood.
/// Oracle scale only: at most 4 parameters and 200 observations.
BruteForceResult brute_force_mle(const Dataset& ds, long budget = 400000);

struct MonteCarloReport {
    std::size_t replicates = 0;
    double alpha = 0.05;
    std::vector<std::string> names;      // intercept first, then slopes
    std::vector<double> ci_coverage;     // per coefficient, non-separated replicates
    std::vector<double> mean_bias;       // per coefficient, non-separated replicates
    double separation_rate = 0.0;        // over all replicates
    std::size_t failed_replicates = 0;   // fits that threw
    bool usable = true;                  // false when separation_rate > 0.5
};

/// Wald CI coverage experiment. Replicate r reseeds with spec.seed XOR r,
/// r = 0..replicates-1; results are identical under any parallel schedule.
MonteCarloReport coverage_experiment(const SynthSpec& spec, std::size_t replicates,
                                     double alpha = 0.05);

}  // namespace logitkit
