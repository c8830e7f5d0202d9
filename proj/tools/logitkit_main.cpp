#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logitkit/dataset.hpp"
#include "logitkit/describe.hpp"
#include "logitkit/diagnostics.hpp"
#include "logitkit/errors.hpp"
#include "logitkit/fit.hpp"
#include "logitkit/reference.hpp"
#include "logitkit/report.hpp"
#include "logitkit/rng.hpp"
#include "logitkit/simulate.hpp"

namespace {

using namespace logitkit;

Dataset load_inputs(const std::string& csv_path, const std::string& schema_path) {
    std::ifstream schema_file(schema_path);
    if (!schema_file) throw ValidationError("cannot open schema file " + schema_path);
    const auto schema = load_schema(schema_file);
    std::ifstream csv_file(csv_path);
    if (!csv_file) throw ValidationError("cannot open data file " + csv_path);
    return load_csv(csv_file, schema);
}

std::vector<DescriptiveRow> descriptive_rows(const Dataset& ds) {
    std::vector<DescriptiveRow> rows;
    for (const auto& spec : ds.specs())
        rows.push_back({spec.name, spec.description, describe(ds, spec.name)});
    return rows;
}

int cmd_describe(const std::string& csv, const std::string& schema, bool json) {
    const Dataset ds = load_inputs(csv, schema);
    const auto rows = descriptive_rows(ds);
    std::cout << (json ? render_descriptives_json(rows) : render_descriptives_text(rows));
    return 0;
}

int cmd_tabulate(const std::string& csv, const std::string& schema,
                 const std::string& variable, const std::vector<double>& edges, bool json) {
    const Dataset ds = load_inputs(csv, schema);
    const FrequencyTable table = tabulate(ds, variable, edges);
    std::cout << (json ? render_frequency_json(table)
                       : render_frequency_text(table, ds.n_rows()));
    return 0;
}

int cmd_fit(const std::string& csv, const std::string& schema, const ReportOptions& opt,
            bool json) {
    const Dataset ds = load_inputs(csv, schema);
    const ReportDocument doc = build_report(ds, opt);
    std::cout << (json ? render_json(doc) : render_text(doc));
    return doc.separation_detected ? 2 : 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& out_path,
                 const std::uint64_t* seed_override) {
    std::ifstream spec_file(spec_path);
    if (!spec_file) throw ValidationError("cannot open spec file " + spec_path);
    SynthSpec spec = synth_spec_from_json(spec_file);
    if (seed_override) spec.seed = *seed_override;

    const Dataset ds = generate(spec);

    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write " + out_path);
    write_csv(out, ds);

    const std::string schema_path = out_path + ".schema.json";
    std::ofstream schema_out(schema_path);
    if (!schema_out) throw ValidationError("cannot write " + schema_path);
    write_schema(schema_out, ds.specs());

    std::size_t ones = 0;
    for (double y : ds.response())
        if (y == 1.0) ++ones;
    std::cout << "seed = " << spec.seed << "\n"
              << "rows = " << ds.n_rows() << " -> " << out_path << " (schema " << schema_path
              << ")\n"
              << "response rate = " << format_double(static_cast<double>(ones) / ds.n_rows())
              << " (" << ones << " of " << ds.n_rows() << ")\n";
    return 0;
}

SynthSpec small_instance(std::uint64_t seed, int idx) {
    SynthSpec spec;
    spec.n = 16 + static_cast<std::size_t>(idx % 15);
    spec.seed = seed + static_cast<std::uint64_t>(idx) * 1000003ULL;
    const int p = 1 + idx % 3;
    Rng r(spec.seed, 77);
    spec.true_coefficients.intercept = r.next_range(-0.5, 0.5);
    for (int j = 0; j < p; ++j) {
        const std::string name = "X" + std::to_string(j + 1);
        spec.generators.push_back({name, NormalGen{0.0, 1.0}});
        spec.true_coefficients.names.push_back(name);
        spec.true_coefficients.slopes.push_back(r.next_range(-1.0, 1.0));
    }
    return spec;
}

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

CheckOutcome check_oracle_agreement(std::uint64_t seed, bool inject_fault) {
    FitConfig cfg;
    if (inject_fault) {
        cfg.step_halving = false;
        cfg.step_scale = 3.0;
    }
    int used = 0;
    double worst_coef = 0.0;
    double worst_ll = 0.0;
    for (int idx = 0; used < 20 && idx < 200; ++idx) {
        const Dataset ds = generate(small_instance(seed, idx));
        FitResult fr;
        try {
            fr = fit(ds, cfg);
        } catch (const std::exception&) {
            worst_coef = std::numeric_limits<double>::infinity();
            ++used;
            continue;
        }
        if (fr.separation_detected) continue;
        ++used;
        const BruteForceResult oracle = brute_force_mle(ds);
        const auto a = pack(fr.coefficients);
        const auto b = pack(oracle.coefficients);
        for (std::size_t j = 0; j < a.size(); ++j)
            worst_coef = std::max(worst_coef, std::fabs(a[j] - b[j]));
        const DesignMatrix d(ds);
        worst_ll = std::max(worst_ll,
                            std::fabs(reference::log_likelihood(d, a) - oracle.log_likelihood));
    }
    CheckOutcome out;
    out.name = "oracle agreement";
    out.pass = used == 20 && worst_coef <= 1e-4 && worst_ll <= 1e-6;
    std::ostringstream detail;
    detail << used << " instances, max |coef diff| = " << worst_coef
           << ", max |ll diff| = " << worst_ll;
    out.detail = detail.str();
    return out;
}

CheckOutcome check_pair_counting(std::uint64_t seed) {
    bool all_equal = true;
    std::uint64_t pairs_checked = 0;
    for (int t = 0; t < 50; ++t) {
        Rng r(seed, 900 + static_cast<std::uint64_t>(t));
        std::vector<double> ones(1 + r.next_u64() % 300);
        std::vector<double> zeros(1 + r.next_u64() % 300);
        for (auto& v : ones) v = std::floor(r.next_u01() * 40.0) / 40.0;
        for (auto& v : zeros) v = std::floor(r.next_u01() * 40.0) / 40.0;
        std::sort(ones.begin(), ones.end());
        std::sort(zeros.begin(), zeros.end());
        const PairCounts fast = count_pairs_fast(ones, zeros);
        const PairCounts slow = reference::count_pairs(ones, zeros);
        pairs_checked += static_cast<std::uint64_t>(ones.size()) * zeros.size();
        if (fast.concordant != slow.concordant || fast.discordant != slow.discordant ||
            fast.ties != slow.ties)
            all_equal = false;
    }
    CheckOutcome out;
    out.name = "pair counting differential";
    out.pass = all_equal;
    out.detail = "50 instances, " + std::to_string(pairs_checked) + " pairs, " +
                 (all_equal ? "all counts equal" : "counts diverged");
    return out;
}

CheckOutcome check_coverage(std::uint64_t seed, std::size_t replicates) {
    SynthSpec spec;
    spec.n = 400;
    spec.seed = seed;
    spec.generators.push_back({"X1", NormalGen{0.0, 1.0}});
    spec.generators.push_back({"X2", NormalGen{0.0, 1.0}});
    spec.true_coefficients.intercept = 0.0;
    spec.true_coefficients.names = {"X1", "X2"};
    spec.true_coefficients.slopes = {0.5, -0.5};
    const MonteCarloReport report = coverage_experiment(spec, replicates, 0.05);

    double lo = 1.0;
    double hi = 0.0;
    for (double c : report.ci_coverage) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CheckOutcome out;
    out.name = "Wald CI coverage";
    out.pass = report.usable && lo >= 0.90 && hi <= 0.99 && report.separation_rate < 0.05 &&
               report.failed_replicates == 0;
    std::ostringstream detail;
    detail << replicates << " replicates, coverage in [" << lo << ", " << hi
           << "], separation rate " << report.separation_rate;
    out.detail = detail.str();
    return out;
}

int cmd_validate(std::uint64_t seed, std::size_t replicates, bool inject_fault) {
    std::vector<CheckOutcome> checks;
    checks.push_back(check_oracle_agreement(seed, inject_fault));
    checks.push_back(check_pair_counting(seed));
    checks.push_back(check_coverage(seed, replicates));

    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
        all_pass = all_pass && c.pass;
    }
    std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logitkit: binary logistic regression toolkit"};
    app.require_subcommand(1);

    std::string csv_path;
    std::string schema_path;
    bool json = false;

    auto* describe_cmd = app.add_subcommand("describe", "Per-variable mean, SD and CV");
    describe_cmd->add_option("csv", csv_path, "data file")->required();
    describe_cmd->add_option("schema", schema_path, "schema sidecar")->required();
    describe_cmd->add_flag("--json", json, "JSON output");

    std::string variable;
    std::vector<double> edges;
    auto* tab_cmd = app.add_subcommand("tabulate", "Frequency table of one variable");
    tab_cmd->add_option("csv", csv_path, "data file")->required();
    tab_cmd->add_option("schema", schema_path, "schema sidecar")->required();
    tab_cmd->add_option("--variable", variable, "variable to tabulate")->required();
    tab_cmd->add_option("--edges", edges, "bin edges for a continuous variable");
    tab_cmd->add_flag("--json", json, "JSON output");

    ReportOptions opt;
    auto* fit_cmd = app.add_subcommand("fit", "Screen, fit and test a logit model");
    fit_cmd->add_option("csv", csv_path, "data file")->required();
    fit_cmd->add_option("schema", schema_path, "schema sidecar")->required();
    fit_cmd->add_option("--cv-threshold", opt.cv_threshold,
                        "CV screen threshold in percent, 0 disables");
    fit_cmd->add_option("--hl-groups", opt.hl_groups, "Hosmer-Lemeshow group count");
    fit_cmd->add_option("--alpha", opt.alpha, "significance level");
    fit_cmd->add_option("--max-iter", opt.max_iterations, "iteration cap");
    fit_cmd->add_option("--tol", opt.tolerance, "convergence tolerance");
    fit_cmd->add_option("--ridge", opt.ridge, "optional ridge penalty on slopes");
    fit_cmd->add_flag("--json", json, "JSON output");

    std::string spec_path;
    std::string out_path;
    std::uint64_t seed = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic dataset");
    sim_cmd->add_option("spec", spec_path, "generator spec (JSON)")->required();
    sim_cmd->add_option("out", out_path, "output CSV path")->required();
    auto* seed_opt = sim_cmd->add_option("--seed", seed, "override the spec's seed");

    std::uint64_t validate_seed = 12345;
    std::size_t replicates = 200;
    bool inject_fault = false;
    auto* val_cmd = app.add_subcommand("validate", "Run the internal validation battery");
    val_cmd->add_option("--seed", validate_seed, "seed for all validation draws");
    val_cmd->add_option("--replicates", replicates, "Monte Carlo replicates (>= 100)");
    val_cmd->add_flag("--inject-fault", inject_fault,
                      "negative control: cripple the optimizer and expect a failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (describe_cmd->parsed()) return cmd_describe(csv_path, schema_path, json);
        if (tab_cmd->parsed()) return cmd_tabulate(csv_path, schema_path, variable, edges, json);
        if (fit_cmd->parsed()) {
            opt.hl_groups_explicit = fit_cmd->count("--hl-groups") > 0;
            return cmd_fit(csv_path, schema_path, opt, json);
        }
        if (sim_cmd->parsed())
            return cmd_simulate(spec_path, out_path, seed_opt->count() ? &seed : nullptr);
        if (val_cmd->parsed()) return cmd_validate(validate_seed, replicates, inject_fault);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
