#include "logitkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logitkit/errors.hpp"
#include "logitkit/fit.hpp"
#include "logitkit/reference.hpp"
#include "logitkit/rng.hpp"
#include "logitkit/special.hpp"

namespace logitkit {

namespace {

std::string describe_kind(const CovariateGenerator& g) {
    std::ostringstream out;
    if (const auto* n = std::get_if<NormalGen>(&g.kind)) {
        out << "Normal(mean " << n->mean << ", sd " << n->sd << ")";
    } else if (const auto* u = std::get_if<UniformGen>(&g.kind)) {
        out << "Uniform[" << u->lo << ", " << u->hi << ")";
    } else if (const auto* b = std::get_if<BernoulliGen>(&g.kind)) {
        out << "Bernoulli(p " << b->p << ")";
    } else {
        const auto& c = std::get<CategoricalOrdinalGen>(g.kind);
        out << "Ordinal(levels";
        for (double v : c.levels) out << " " << v;
        out << ")";
    }
    return out.str();
}

double draw_value(const CovariateGenerator& g, double u) {
    if (const auto* n = std::get_if<NormalGen>(&g.kind))
        return n->mean + n->sd * normal_quantile(u);
    if (const auto* un = std::get_if<UniformGen>(&g.kind))
        return un->lo + (un->hi - un->lo) * u;
    if (const auto* b = std::get_if<BernoulliGen>(&g.kind)) return u < b->p ? 1.0 : 0.0;
    const auto& c = std::get<CategoricalOrdinalGen>(g.kind);
    double cum = 0.0;
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        cum += c.probs[i];
        if (u < cum) return c.levels[i];
    }
    return c.levels.back();
}

}  // namespace

void CovariateGenerator::validate() const {
    if (name.empty()) throw ValidationError("generator: name must be nonempty");
    if (const auto* n = std::get_if<NormalGen>(&kind)) {
        if (!(n->sd > 0.0)) throw ValidationError("generator " + name + ": sd must be positive");
    } else if (const auto* u = std::get_if<UniformGen>(&kind)) {
        if (!(u->lo < u->hi)) throw ValidationError("generator " + name + ": lo must be < hi");
    } else if (const auto* b = std::get_if<BernoulliGen>(&kind)) {
        if (!(b->p >= 0.0 && b->p <= 1.0))
            throw ValidationError("generator " + name + ": p must lie in [0, 1]");
    } else {
        const auto& c = std::get<CategoricalOrdinalGen>(kind);
        if (c.levels.empty()) throw ValidationError("generator " + name + ": no levels");
        if (c.levels.size() != c.probs.size())
            throw ValidationError("generator " + name + ": levels and probs differ in length");
        double sum = 0.0;
        for (double p : c.probs) {
            if (p < 0.0) throw ValidationError("generator " + name + ": negative probability");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw ValidationError("generator " + name + ": probabilities sum to " +
                                  std::to_string(sum) + ", expected 1");
    }
}

Role CovariateGenerator::role() const {
    return std::holds_alternative<BernoulliGen>(kind) ? Role::Dummy : Role::Continuous;
}

void SynthSpec::validate() const {
    if (n < 1) throw ValidationError("SynthSpec: n must be >= 1");
    if (response_name.empty()) throw ValidationError("SynthSpec: response name must be nonempty");
    if (generators.empty()) throw ValidationError("SynthSpec: at least one generator required");
    std::vector<std::string> names;
    for (const auto& g : generators) {
        g.validate();
        if (g.name == response_name)
            throw ValidationError("SynthSpec: generator '" + g.name +
                                  "' collides with the response name");
        names.push_back(g.name);
    }
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("SynthSpec: duplicate generator names");
    if (true_coefficients.names != names)
        throw ValidationError("SynthSpec: coefficients do not align with the generators");
    if (true_coefficients.slopes.size() != names.size())
        throw ValidationError("SynthSpec: coefficient count does not match the generators");
}

SynthSpec synth_spec_from_json(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("SynthSpec rejected: ") + e.what());
    }

    SynthSpec spec;
    try {
        spec.n = doc.at("n").get<std::size_t>();
        spec.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("response")) spec.response_name = doc.at("response").get<std::string>();

        const auto& gens = doc.at("generators");
        if (!gens.is_object()) throw ValidationError("SynthSpec rejected: generators must map names to objects");
        for (const auto& [name, body] : gens.items()) {
            CovariateGenerator g;
            g.name = name;
            const std::string kind = body.at("kind").get<std::string>();
            if (kind == "normal") {
                g.kind = NormalGen{body.at("mean").get<double>(), body.at("sd").get<double>()};
            } else if (kind == "uniform") {
                g.kind = UniformGen{body.at("lo").get<double>(), body.at("hi").get<double>()};
            } else if (kind == "bernoulli") {
                g.kind = BernoulliGen{body.at("p").get<double>()};
            } else if (kind == "categorical_ordinal") {
                g.kind = CategoricalOrdinalGen{body.at("levels").get<std::vector<double>>(),
                                               body.at("probs").get<std::vector<double>>()};
            } else {
                throw ValidationError("SynthSpec rejected: unknown generator kind '" + kind +
                                      "' for " + name);
            }
            spec.generators.push_back(std::move(g));
        }

        const auto& coefs = doc.at("coefficients");
        if (!coefs.is_object())
            throw ValidationError("SynthSpec rejected: coefficients must map names to values");
        for (const auto& g : spec.generators) {
            if (!coefs.contains(g.name))
                throw ValidationError("SynthSpec rejected: no coefficient for generator '" +
                                      g.name + "'");
            spec.true_coefficients.names.push_back(g.name);
            spec.true_coefficients.slopes.push_back(coefs.at(g.name).get<double>());
        }
        if (coefs.contains("_intercept"))
            spec.true_coefficients.intercept = coefs.at("_intercept").get<double>();
        for (const auto& [name, value] : coefs.items()) {
            (void)value;
            if (name != "_intercept" &&
                !std::any_of(spec.generators.begin(), spec.generators.end(),
                             [&](const auto& g) { return g.name == name; }))
                throw ValidationError("SynthSpec rejected: coefficient '" + name +
                                      "' has no matching generator");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("SynthSpec rejected: ") + e.what());
    }

    spec.validate();
    return spec;
}

std::vector<VariableSpec> schema_of(const SynthSpec& spec) {
    std::vector<VariableSpec> vars;
    vars.push_back({spec.response_name, Role::Response, "simulated binary response"});
    for (const auto& g : spec.generators)
        vars.push_back({g.name, g.role(), describe_kind(g)});
    return vars;
}

Dataset generate(const SynthSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    const std::size_t p = spec.generators.size();

    std::vector<double> cells(n * (p + 1), 0.0);
    std::vector<std::uint64_t> col_keys(p);
    for (std::size_t j = 0; j < p; ++j) col_keys[j] = rng::derive_stream(spec.seed, j);
    const std::uint64_t resp_key = rng::derive_stream(spec.seed, p);

    for (std::size_t i = 0; i < n; ++i) {
        double* row = cells.data() + i * (p + 1);
        double z = spec.true_coefficients.intercept;
        for (std::size_t j = 0; j < p; ++j) {
            const double u = rng::u01(rng::at(col_keys[j], i));
            const double x = draw_value(spec.generators[j], u);
            row[1 + j] = x;
            z += spec.true_coefficients.slopes[j] * x;
        }
        const double u = rng::u01(rng::at(resp_key, i));
        row[0] = u < inverse_logit(z) ? 1.0 : 0.0;
    }

    return Dataset(schema_of(spec), std::move(cells));
}

namespace {

class Oracle {
  public:
    Oracle(const DesignMatrix& d, long budget) : d_(d), budget_(budget) {}

    double eval(const std::vector<double>& beta) {
        ++evals_;
        const double f = reference::log_likelihood(d_, beta);
        if (best_x_.empty() || f > best_f_) {
            best_f_ = f;
            best_x_ = beta;
        }
        return f;
    }
    long evals() const { return evals_; }
    bool exhausted() const { return evals_ >= budget_; }
    const std::vector<double>& best_x() const { return best_x_; }
    double best_f() const { return best_f_; }

  private:
    const DesignMatrix& d_;
    long budget_;
    long evals_ = 0;
    std::vector<double> best_x_;
    double best_f_ = 0.0;
};

struct Point {
    std::vector<double> x;
    double f = 0.0;
};

// Standard Nelder-Mead on -l (maximizing l), run until the simplex collapses
// or the shared budget runs out.
Point nelder_mead(Oracle& oracle, const std::vector<double>& start, double step) {
    const std::size_t k = start.size();
    std::vector<Point> simplex(k + 1);
    simplex[0] = {start, oracle.eval(start)};
    for (std::size_t j = 0; j < k; ++j) {
        auto x = start;
        x[j] += step * (1.0 + std::fabs(x[j]));
        simplex[j + 1] = {x, oracle.eval(x)};
    }

    const auto better = [](const Point& a, const Point& b) { return a.f > b.f; };
    std::sort(simplex.begin(), simplex.end(), better);

    while (!oracle.exhausted()) {
        const double spread = simplex.front().f - simplex.back().f;
        double diameter = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            diameter = std::max(diameter,
                                std::fabs(simplex.back().x[j] - simplex.front().x[j]));
        if (spread < 1e-13 && diameter < 1e-9) break;

        std::vector<double> centroid(k, 0.0);
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t j = 0; j < k; ++j) centroid[j] += simplex[v].x[j] / k;

        const auto at = [&](double t) {
            std::vector<double> x(k);
            for (std::size_t j = 0; j < k; ++j)
                x[j] = centroid[j] + t * (centroid[j] - simplex.back().x[j]);
            return x;
        };

        Point reflected{at(1.0), 0.0};
        reflected.f = oracle.eval(reflected.x);
        if (reflected.f > simplex.front().f) {
            Point expanded{at(2.0), 0.0};
            expanded.f = oracle.eval(expanded.x);
            simplex.back() = expanded.f > reflected.f ? expanded : reflected;
        } else if (reflected.f > simplex[k - 1].f) {
            simplex.back() = reflected;
        } else {
            Point contracted{at(reflected.f > simplex.back().f ? 0.5 : -0.5), 0.0};
            contracted.f = oracle.eval(contracted.x);
            if (contracted.f > std::max(reflected.f, simplex.back().f)) {
                simplex.back() = contracted;
            } else {
                for (std::size_t v = 1; v <= k; ++v) {
                    for (std::size_t j = 0; j < k; ++j)
                        simplex[v].x[j] = 0.5 * (simplex[v].x[j] + simplex[0].x[j]);
                    simplex[v].f = oracle.eval(simplex[v].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), better);
    }
    return simplex.front();
}

// Golden-section ascent along coordinate j over [x_j - h, x_j + h].
double golden_line(Oracle& oracle, std::vector<double>& x, std::size_t j, double h) {
    constexpr double phi = 0.6180339887498948482;
    double lo = x[j] - h;
    double hi = x[j] + h;
    double a = hi - phi * (hi - lo);
    double b = lo + phi * (hi - lo);
    x[j] = a;
    double fa = oracle.eval(x);
    x[j] = b;
    double fb = oracle.eval(x);
    while (hi - lo > 1e-11 && !oracle.exhausted()) {
        if (fa > fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            x[j] = a;
            fa = oracle.eval(x);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            x[j] = b;
            fb = oracle.eval(x);
        }
    }
    x[j] = 0.5 * (lo + hi);
    return oracle.eval(x);
}

}  // namespace

BruteForceResult brute_force_mle(const Dataset& ds, long budget) {
    const DesignMatrix d(ds);
    if (d.n_params() > 4)
        throw ValidationError("brute_force_mle: oracle handles at most 4 parameters");
    if (d.n() > 200) throw ValidationError("brute_force_mle: oracle handles at most 200 rows");
    if (budget < 1000) throw ValidationError("brute_force_mle: budget too small");

    Oracle oracle(d, budget);
    const std::size_t k = d.n_params();

    std::size_t ones = 0;
    for (double y : d.response())
        if (y == 1.0) ++ones;
    std::vector<double> start(k, 0.0);
    start[0] = logit(clamp_probability(static_cast<double>(ones) / d.n()));

    Point best = nelder_mead(oracle, start, 0.5);
    Rng restarts(0x0C0FFEEULL);
    for (int r = 0; r < 10 && !oracle.exhausted(); ++r) {
        std::vector<double> x(k);
        for (std::size_t j = 0; j < k; ++j) x[j] = restarts.next_range(-4.0, 4.0);
        const Point candidate = nelder_mead(oracle, x, 0.5);
        if (candidate.f > best.f) best = candidate;
    }

    double shift = 0.0;
    for (double h = 0.25; h > 1e-10 && !oracle.exhausted(); h *= 0.3) {
        const auto before = best.x;
        for (std::size_t j = 0; j < k; ++j) best.f = golden_line(oracle, best.x, j, h);
        shift = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            shift = std::max(shift, std::fabs(best.x[j] - before[j]));
    }

    BruteForceResult result;
    result.coefficients = unpack(oracle.best_x(), d.predictor_names());
    result.log_likelihood = oracle.best_f();
    result.evaluations = oracle.evals();
    result.stabilized = !oracle.exhausted() && shift < 1e-6;
    return result;
}

MonteCarloReport coverage_experiment(const SynthSpec& spec, std::size_t replicates,
                                     double alpha) {
    spec.validate();
    if (replicates < 100)
        throw ValidationError("coverage_experiment: at least 100 replicates required");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("coverage_experiment: alpha must lie in (0, 1)");

    const std::size_t k = 1 + spec.generators.size();
    std::vector<double> truth = pack(spec.true_coefficients);
    const double zcrit = normal_quantile(1.0 - alpha / 2.0);

    enum class Outcome : unsigned char { Clean, Separated, Failed };
    std::vector<Outcome> outcome(replicates, Outcome::Failed);
    std::vector<unsigned char> hits(replicates * k, 0);
    std::vector<double> errors(replicates * k, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(replicates); ++r) {
        SynthSpec rep = spec;
        rep.seed = spec.seed ^ static_cast<std::uint64_t>(r);
        try {
            const Dataset ds = generate(rep);
            const FitResult fr = fit(ds);
            if (fr.separation_detected) {
                outcome[static_cast<std::size_t>(r)] = Outcome::Separated;
                continue;
            }
            const std::vector<double> beta = pack(fr.coefficients);
            for (std::size_t j = 0; j < k; ++j) {
                const double lo = beta[j] - zcrit * fr.standard_errors[j];
                const double hi = beta[j] + zcrit * fr.standard_errors[j];
                hits[static_cast<std::size_t>(r) * k + j] =
                    truth[j] >= lo && truth[j] <= hi ? 1 : 0;
                errors[static_cast<std::size_t>(r) * k + j] = beta[j] - truth[j];
            }
            outcome[static_cast<std::size_t>(r)] = Outcome::Clean;
        } catch (const std::exception&) {
            outcome[static_cast<std::size_t>(r)] = Outcome::Failed;
        }
    }

    MonteCarloReport report;
    report.replicates = replicates;
    report.alpha = alpha;
    report.names.push_back("_intercept");
    for (const auto& g : spec.generators) report.names.push_back(g.name);
    report.ci_coverage.assign(k, 0.0);
    report.mean_bias.assign(k, 0.0);

    std::size_t clean = 0;
    std::size_t separated = 0;
    for (std::size_t r = 0; r < replicates; ++r) {
        switch (outcome[r]) {
            case Outcome::Clean:
                ++clean;
                for (std::size_t j = 0; j < k; ++j) {
                    report.ci_coverage[j] += hits[r * k + j];
                    report.mean_bias[j] += errors[r * k + j];
                }
                break;
            case Outcome::Separated: ++separated; break;
            case Outcome::Failed: ++report.failed_replicates; break;
        }
    }
    if (clean > 0)
        for (std::size_t j = 0; j < k; ++j) {
            report.ci_coverage[j] /= static_cast<double>(clean);
            report.mean_bias[j] /= static_cast<double>(clean);
        }
    report.separation_rate = static_cast<double>(separated) / static_cast<double>(replicates);
    report.usable = clean > 0 && report.separation_rate <= 0.5;
    return report;
}

}  // namespace logitkit
