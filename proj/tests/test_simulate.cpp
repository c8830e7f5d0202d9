#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <omp.h>
#include <sstream>

#include "logitkit/fit.hpp"
#include "logitkit/reference.hpp"
#include "logitkit/simulate.hpp"

using namespace logitkit;

namespace {

SynthSpec two_normal_spec(std::size_t n, std::uint64_t seed) {
    SynthSpec spec;
    spec.n = n;
    spec.seed = seed;
    spec.generators.push_back({"X1", NormalGen{0.0, 1.0}});
    spec.generators.push_back({"X2", NormalGen{0.0, 1.0}});
    spec.true_coefficients.intercept = 0.0;
    spec.true_coefficients.names = {"X1", "X2"};
    spec.true_coefficients.slopes = {0.5, -0.5};
    return spec;
}

Dataset response_only(std::size_t ones, std::size_t zeros) {
    std::vector<double> cells;
    for (std::size_t i = 0; i < ones; ++i) cells.push_back(1.0);
    for (std::size_t i = 0; i < zeros; ++i) cells.push_back(0.0);
    return Dataset({{"Y", Role::Response, ""}}, std::move(cells));
}

}  // namespace

TEST_CASE("generator validation rejects degenerate laws") {
    CHECK_THROWS_AS(CovariateGenerator({"X", NormalGen{0.0, 0.0}}).validate(),
                    ValidationError);
    CHECK_THROWS_AS(CovariateGenerator({"X", UniformGen{1.0, 1.0}}).validate(),
                    ValidationError);
    CHECK_THROWS_AS(CovariateGenerator({"X", BernoulliGen{1.5}}).validate(), ValidationError);
    CHECK_THROWS_AS(CovariateGenerator({"", NormalGen{}}).validate(), ValidationError);
    CHECK_THROWS_AS(
        CovariateGenerator({"X", CategoricalOrdinalGen{{}, {}}}).validate(),
        ValidationError);
    CHECK_THROWS_AS(
        CovariateGenerator({"X", CategoricalOrdinalGen{{1, 2}, {0.5}}}).validate(),
        ValidationError);
    CHECK_THROWS_AS(
        CovariateGenerator({"X", CategoricalOrdinalGen{{1, 2}, {0.7, 0.7}}}).validate(),
        ValidationError);
    CHECK_THROWS_AS(
        CovariateGenerator({"X", CategoricalOrdinalGen{{1, 2}, {-0.2, 1.2}}}).validate(),
        ValidationError);
    CHECK_NOTHROW(
        CovariateGenerator({"X", CategoricalOrdinalGen{{1, 2, 3}, {0.2, 0.5, 0.3}}})
            .validate());
}

TEST_CASE("generator roles follow the kind") {
    CHECK(CovariateGenerator({"X", BernoulliGen{0.3}}).role() == Role::Dummy);
    CHECK(CovariateGenerator({"X", NormalGen{}}).role() == Role::Continuous);
    CHECK(CovariateGenerator({"X", UniformGen{}}).role() == Role::Continuous);
    CHECK(CovariateGenerator({"X", CategoricalOrdinalGen{{1}, {1.0}}}).role() ==
          Role::Continuous);
}

TEST_CASE("SynthSpec validation") {
    SynthSpec spec = two_normal_spec(10, 1);
    CHECK_NOTHROW(spec.validate());

    spec.n = 0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = two_normal_spec(10, 1);
    spec.generators.clear();
    spec.true_coefficients = {};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = two_normal_spec(10, 1);
    spec.response_name = "X1";
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = two_normal_spec(10, 1);
    spec.generators[1].name = "X1";
    spec.true_coefficients.names = {"X1", "X1"};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = two_normal_spec(10, 1);
    spec.true_coefficients.names = {"X2", "X1"};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("synth_spec_from_json parses every generator kind in file order") {
    std::istringstream in(R"({
        "n": 12,
        "seed": 99,
        "response": "PART",
        "coefficients": {"_intercept": -0.5, "A": 1.0, "B": -2.0, "C": 0.25, "D": 0.0},
        "generators": {
            "A": {"kind": "normal", "mean": 3.0, "sd": 2.0},
            "B": {"kind": "uniform", "lo": -1.0, "hi": 1.0},
            "C": {"kind": "bernoulli", "p": 0.3},
            "D": {"kind": "categorical_ordinal", "levels": [1, 2, 3], "probs": [0.2, 0.5, 0.3]}
        }
    })");
    const SynthSpec spec = synth_spec_from_json(in);
    CHECK(spec.n == 12);
    CHECK(spec.seed == 99);
    CHECK(spec.response_name == "PART");
    CHECK(spec.true_coefficients.intercept == -0.5);
    CHECK(spec.true_coefficients.names == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(spec.true_coefficients.slopes == std::vector<double>{1.0, -2.0, 0.25, 0.0});
    REQUIRE(spec.generators.size() == 4);
    CHECK(std::get<NormalGen>(spec.generators[0].kind).mean == 3.0);
    CHECK(std::get<UniformGen>(spec.generators[1].kind).hi == 1.0);
    CHECK(std::get<BernoulliGen>(spec.generators[2].kind).p == 0.3);
    CHECK(std::get<CategoricalOrdinalGen>(spec.generators[3].kind).levels.size() == 3);
}

TEST_CASE("synth_spec_from_json rejects malformed documents") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return synth_spec_from_json(in);
    };
    CHECK_THROWS_AS(parse("not json"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"seed": 1})"), ValidationError);
    CHECK_THROWS_AS(
        parse(R"({"n": 5, "seed": 1, "coefficients": {}, "generators": {}})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse(R"({"n": 5, "seed": 1, "coefficients": {"A": 1},
                  "generators": {"A": {"kind": "cauchy"}}})"),
        ValidationError);
    // generator without a coefficient
    CHECK_THROWS_AS(
        parse(R"({"n": 5, "seed": 1, "coefficients": {},
                  "generators": {"A": {"kind": "normal", "mean": 0, "sd": 1}}})"),
        ValidationError);
    // coefficient without a generator
    CHECK_THROWS_AS(
        parse(R"({"n": 5, "seed": 1, "coefficients": {"A": 1, "GHOST": 2},
                  "generators": {"A": {"kind": "normal", "mean": 0, "sd": 1}}})"),
        ValidationError);
    // missing distribution parameters
    CHECK_THROWS_AS(
        parse(R"({"n": 5, "seed": 1, "coefficients": {"A": 1},
                  "generators": {"A": {"kind": "normal", "mean": 0}}})"),
        ValidationError);
}

TEST_CASE("schema_of puts the response first with generator roles") {
    SynthSpec spec = two_normal_spec(10, 1);
    spec.generators.push_back({"D1", BernoulliGen{0.4}});
    spec.true_coefficients.names.push_back("D1");
    spec.true_coefficients.slopes.push_back(0.0);
    const auto schema = schema_of(spec);
    REQUIRE(schema.size() == 4);
    CHECK(schema[0].name == "Y");
    CHECK(schema[0].role == Role::Response);
    CHECK(schema[1].role == Role::Continuous);
    CHECK(schema[3].name == "D1");
    CHECK(schema[3].role == Role::Dummy);
    CHECK_FALSE(schema[1].description.empty());
}

TEST_CASE("generate is deterministic and seed-sensitive") {
    const SynthSpec spec = two_normal_spec(64, 2718);
    const Dataset a = generate(spec);
    const Dataset b = generate(spec);
    REQUIRE(a.n_rows() == 64);
    REQUIRE(a.n_vars() == 3);
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = 0; j < a.n_vars(); ++j) CHECK(a.cell(i, j) == b.cell(i, j));

    SynthSpec other = spec;
    other.seed = 2719;
    const Dataset c = generate(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.n_rows() && !any_diff; ++i)
        if (a.cell(i, 1) != c.cell(i, 1)) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("each column owns its RNG stream, so appending one changes nothing") {
    const SynthSpec base = two_normal_spec(50, 77);
    SynthSpec wider = base;
    wider.generators.push_back({"X3", UniformGen{0.0, 1.0}});
    wider.true_coefficients.names.push_back("X3");
    wider.true_coefficients.slopes.push_back(0.0);

    const Dataset a = generate(base);
    const Dataset b = generate(wider);
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        CHECK(a.cell(i, a.index_of("X1")) == b.cell(i, b.index_of("X1")));
        CHECK(a.cell(i, a.index_of("X2")) == b.cell(i, b.index_of("X2")));
    }
}

TEST_CASE("generated columns track their nominal moments") {
    SynthSpec spec;
    spec.n = 100000;
    spec.seed = 5150;
    spec.generators.push_back({"N", NormalGen{2.0, 3.0}});
    spec.generators.push_back({"U", UniformGen{-1.0, 3.0}});
    spec.generators.push_back({"B", BernoulliGen{0.25}});
    spec.generators.push_back({"C", CategoricalOrdinalGen{{1, 2, 3}, {0.5, 0.3, 0.2}}});
    spec.true_coefficients.intercept = 0.4;
    spec.true_coefficients.names = {"N", "U", "B", "C"};
    spec.true_coefficients.slopes = {0.0, 0.0, 0.0, 0.0};
    const Dataset ds = generate(spec);

    const auto mean_of = [&](const std::string& name) {
        double s = 0.0;
        for (double v : ds.column(name)) s += v;
        return s / static_cast<double>(ds.n_rows());
    };
    CHECK(mean_of("N") == doctest::Approx(2.0).epsilon(0.02));
    CHECK(mean_of("U") == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean_of("B") == doctest::Approx(0.25).epsilon(0.05));

    double sd = 0.0;
    const double nm = mean_of("N");
    for (double v : ds.column("N")) sd += (v - nm) * (v - nm);
    sd = std::sqrt(sd / static_cast<double>(ds.n_rows() - 1));
    CHECK(sd == doctest::Approx(3.0).epsilon(0.02));

    std::map<double, std::size_t> freq;
    for (double v : ds.column("C")) ++freq[v];
    CHECK(static_cast<double>(freq[1]) / 100000.0 == doctest::Approx(0.5).epsilon(0.03));
    CHECK(static_cast<double>(freq[2]) / 100000.0 == doctest::Approx(0.3).epsilon(0.03));
    CHECK(static_cast<double>(freq[3]) / 100000.0 == doctest::Approx(0.2).epsilon(0.03));
    for (double v : ds.column("U")) {
        CHECK(v >= -1.0);
        CHECK(v < 3.0);
    }

    // with zero slopes the response rate follows the intercept alone
    double rate = 0.0;
    for (double y : ds.response()) rate += y;
    rate /= static_cast<double>(ds.n_rows());
    CHECK(rate == doctest::Approx(inverse_logit(0.4)).epsilon(0.02));
}

TEST_CASE("brute_force_mle recovers the closed-form intercept-only optimum") {
    const Dataset ds = response_only(61, 55);
    const BruteForceResult r = brute_force_mle(ds);
    CHECK(r.stabilized);
    CHECK(r.coefficients.intercept == doctest::Approx(std::log(61.0 / 55.0)).epsilon(1e-6));
    CHECK(r.log_likelihood ==
          doctest::Approx(-80.24983126598041224).epsilon(1e-9));
    CHECK(r.evaluations > 0);
}

TEST_CASE("brute_force_mle agrees with the Newton fit on a small instance") {
    SynthSpec spec;
    spec.n = 25;
    spec.seed = 4242;
    spec.generators.push_back({"X1", NormalGen{0.0, 1.0}});
    spec.true_coefficients.intercept = 0.3;
    spec.true_coefficients.names = {"X1"};
    spec.true_coefficients.slopes = {-0.8};
    const Dataset ds = generate(spec);

    const FitResult fr = fit(ds);
    REQUIRE(fr.converged);
    const BruteForceResult oracle = brute_force_mle(ds);
    CHECK(oracle.coefficients.intercept ==
          doctest::Approx(fr.coefficients.intercept).scale(1.0).epsilon(1e-4));
    CHECK(oracle.coefficients.slopes[0] ==
          doctest::Approx(fr.coefficients.slopes[0]).scale(1.0).epsilon(1e-4));
    const DesignMatrix d(ds);
    CHECK(oracle.log_likelihood ==
          doctest::Approx(reference::log_likelihood(d, pack(fr.coefficients)))
              .scale(1.0)
              .epsilon(1e-6));
}

TEST_CASE("brute_force_mle stays within its oracle envelope") {
    const Dataset small = response_only(3, 2);
    CHECK_THROWS_AS(brute_force_mle(small, 10), ValidationError);
    CHECK_THROWS_AS(brute_force_mle(response_only(150, 100)), ValidationError);

    SynthSpec wide = two_normal_spec(20, 9);
    wide.generators.push_back({"X3", NormalGen{0.0, 1.0}});
    wide.generators.push_back({"X4", NormalGen{0.0, 1.0}});
    wide.true_coefficients.names = {"X1", "X2", "X3", "X4"};
    wide.true_coefficients.slopes = {0.1, 0.1, 0.1, 0.1};
    CHECK_THROWS_AS(brute_force_mle(generate(wide)), ValidationError);
}

TEST_CASE("coverage_experiment validates its arguments") {
    const SynthSpec spec = two_normal_spec(50, 1);
    CHECK_THROWS_AS(coverage_experiment(spec, 99), ValidationError);
    CHECK_THROWS_AS(coverage_experiment(spec, 100, 0.0), ValidationError);
    CHECK_THROWS_AS(coverage_experiment(spec, 100, 1.0), ValidationError);
}

TEST_CASE("coverage_experiment reports sane calibration on a tame design") {
    const SynthSpec spec = two_normal_spec(200, 31337);
    const MonteCarloReport report = coverage_experiment(spec, 150, 0.05);
    CHECK(report.replicates == 150);
    CHECK(report.names ==
          std::vector<std::string>{"_intercept", "X1", "X2"});
    REQUIRE(report.ci_coverage.size() == 3);
    CHECK(report.usable);
    CHECK(report.failed_replicates == 0);
    CHECK(report.separation_rate < 0.05);
    for (double c : report.ci_coverage) {
        CHECK(c >= 0.85);
        CHECK(c <= 1.0);
    }
    for (double b : report.mean_bias) CHECK(std::fabs(b) < 0.15);
}

TEST_CASE("coverage_experiment is deterministic for any thread count") {
    const SynthSpec spec = two_normal_spec(120, 808);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const MonteCarloReport a = coverage_experiment(spec, 100, 0.05);
    omp_set_num_threads(4);
    const MonteCarloReport b = coverage_experiment(spec, 100, 0.05);
    omp_set_num_threads(saved);
    CHECK(a.ci_coverage == b.ci_coverage);
    CHECK(a.mean_bias == b.mean_bias);
    CHECK(a.separation_rate == b.separation_rate);
    CHECK(a.failed_replicates == b.failed_replicates);
}
