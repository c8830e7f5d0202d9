#include "logitkit/report.hpp"

#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logitkit/errors.hpp"
#include "logitkit/logit.hpp"

namespace logitkit {

namespace {

std::string fmt_sig(double x, int significant = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    return buf;
}

std::string fmt_fix(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

enum class Align { Left, Right };

std::string render_table(const std::vector<std::vector<std::string>>& rows,
                         const std::vector<Align>& aligns) {
    std::vector<std::size_t> width(aligns.size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << "  ";
            if (aligns[c] == Align::Left) {
                out << row[c];
                if (c + 1 < row.size())
                    out << std::string(width[c] - row[c].size(), ' ');
            } else {
                out << std::string(width[c] - row[c].size(), ' ') << row[c];
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string fmt_odds(double x) { return x < 1e4 ? fmt_fix(x, 2) : fmt_sig(x, 3); }

std::string join(const std::vector<std::string>& names) {
    if (names.empty()) return "none";
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) s += ", ";
        s += names[i];
    }
    return s;
}

}  // namespace

ReportDocument build_report(const Dataset& ds, const ReportOptions& opt) {
    ReportDocument doc;

    for (const auto& spec : ds.specs())
        doc.descriptives.push_back({spec.name, spec.description, describe(ds, spec.name)});

    if (opt.cv_threshold > 0.0) {
        doc.screen = screen_by_cv(ds, opt.cv_threshold);
    } else {
        doc.screen.retained = ds.predictor_names();
    }

    const Dataset model_ds =
        doc.screen.excluded.empty() ? ds : ds.select(doc.screen.retained);

    FitConfig cfg;
    cfg.max_iterations = opt.max_iterations;
    cfg.tolerance = opt.tolerance;
    cfg.ridge = opt.ridge;
    const FitResult fr = fit(model_ds, cfg);

    WaldRow constant = wald_test(fr.coefficients.intercept, fr.standard_errors[0], opt.alpha);
    constant.variable = "Constant";
    doc.coefficient_rows.push_back(constant);
    for (std::size_t j = 0; j < fr.coefficients.slopes.size(); ++j) {
        WaldRow row = wald_test(fr.coefficients.slopes[j], fr.standard_errors[j + 1], opt.alpha);
        row.variable = fr.coefficients.names[j];
        doc.coefficient_rows.push_back(row);
    }

    doc.log_likelihood = fr.log_likelihood;

    const std::size_t df = fr.coefficients.slopes.size();
    if (df == 0) {
        doc.slopes_test_skipped = "the model has no slopes to test";
    } else {
        std::size_t ones = 0;
        const auto y = model_ds.response();
        for (double v : y)
            if (v == 1.0) ++ones;
        const double ll_null = null_log_likelihood(ones, y.size() - ones);
        doc.slopes_test = g_test(fr.log_likelihood, ll_null, static_cast<int>(df));
    }

    doc.gof.push_back(pearson_gof(fr, model_ds));
    doc.gof.push_back(deviance_gof(fr, model_ds));
    try {
        doc.gof.push_back(hosmer_lemeshow(fr, model_ds, opt.hl_groups));
    } catch (const ValidationError& e) {
        if (opt.hl_groups_explicit) throw;
        doc.warnings.push_back(std::string("Hosmer-Lemeshow skipped: ") + e.what());
    }

    try {
        doc.association = association(fr, model_ds);
    } catch (const ValidationError& e) {
        doc.association_skipped = e.what();
    }

    doc.converged = fr.converged;
    doc.iterations = fr.iterations;
    doc.separation_detected = fr.separation_detected;
    doc.separation_diagnosis = fr.separation_diagnosis;
    for (const auto& w : fr.warnings) doc.warnings.push_back(w);
    return doc;
}

std::string render_descriptives_text(const std::vector<DescriptiveRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Variable", "Definition", "Stand.Dev", "Average", "CV(%)"});
    for (const auto& r : rows) {
        table.push_back({r.name, r.description, fmt_fix(r.stats.std_dev, 2),
                         fmt_fix(r.stats.mean, 2),
                         r.stats.cv_percent ? fmt_fix(*r.stats.cv_percent, 2) : "NA"});
    }
    return render_table(table, {Align::Left, Align::Left, Align::Right, Align::Right,
                                Align::Right});
}

std::string render_descriptives_json(const std::vector<DescriptiveRow>& rows) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["variable"] = r.name;
        row["definition"] = r.description;
        row["std_dev"] = r.stats.std_dev;
        row["mean"] = r.stats.mean;
        if (r.stats.cv_percent)
            row["cv_percent"] = *r.stats.cv_percent;
        else
            row["cv_percent"] = nullptr;
        doc.push_back(row);
    }
    return doc.dump(2) + "\n";
}

std::string render_frequency_text(const FrequencyTable& table, std::size_t n) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({table.variable, "Count", "Percent"});
    for (const auto& bin : table.bins)
        rows.push_back({bin.label, std::to_string(bin.count), fmt_fix(bin.percent, 2)});
    rows.push_back({"Total", std::to_string(n), fmt_fix(100.0, 2)});
    return render_table(rows, {Align::Left, Align::Right, Align::Right});
}

std::string render_frequency_json(const FrequencyTable& table) {
    nlohmann::ordered_json doc;
    doc["variable"] = table.variable;
    doc["bins"] = nlohmann::ordered_json::array();
    for (const auto& bin : table.bins) {
        nlohmann::ordered_json row;
        row["label"] = bin.label;
        row["count"] = bin.count;
        row["percent"] = bin.percent;
        doc["bins"].push_back(row);
    }
    return doc.dump(2) + "\n";
}

std::string render_text(const ReportDocument& doc) {
    std::ostringstream out;

    out << "Descriptive statistics\n";
    out << render_descriptives_text(doc.descriptives) << '\n';

    out << "CV screen: retained " << join(doc.screen.retained);
    if (!doc.screen.excluded.empty()) out << "; excluded " << join(doc.screen.excluded);
    out << "\n\n";

    out << "Logit regression\n";
    std::vector<std::vector<std::string>> coef;
    coef.push_back({"Predictor", "Coefficient", "Stand.Dev", "Z", "P", "Odds ratio", "Sig"});
    for (std::size_t i = 0; i < doc.coefficient_rows.size(); ++i) {
        const auto& r = doc.coefficient_rows[i];
        coef.push_back({r.variable, fmt_sig(r.coefficient), fmt_sig(r.se), fmt_fix(r.z, 2),
                        fmt_fix(r.p_two_sided, 3), i == 0 ? "NA" : fmt_odds(r.odds_ratio),
                        r.significant ? "*" : ""});
    }
    out << render_table(coef, {Align::Left, Align::Right, Align::Right, Align::Right,
                               Align::Right, Align::Right, Align::Left});

    out << "\nLog-Likelihood = " << fmt_fix(doc.log_likelihood, 3) << '\n';
    if (doc.slopes_test) {
        out << "Test that all slopes are zero: G = " << fmt_fix(doc.slopes_test->g, 3)
            << ", DF = " << doc.slopes_test->df << ", P-Value = "
            << fmt_fix(doc.slopes_test->p, 3) << '\n';
    } else {
        out << "Test that all slopes are zero: skipped (" << doc.slopes_test_skipped << ")\n";
    }

    out << "\nGoodness-of-Fit Tests\n";
    std::vector<std::vector<std::string>> gof;
    gof.push_back({"Method", "Chi-Square", "DF", "P"});
    for (const auto& g : doc.gof)
        gof.push_back({to_string(g.method), fmt_fix(g.statistic, 3), std::to_string(g.df),
                       fmt_fix(g.p, 3)});
    out << render_table(gof, {Align::Left, Align::Right, Align::Right, Align::Right});

    out << "\nMeasures of Association\n";
    if (doc.association) {
        const auto& a = *doc.association;
        const double total = static_cast<double>(a.total_pairs);
        std::vector<std::vector<std::string>> pairs;
        pairs.push_back({"Pairs", "Number", "Percent"});
        pairs.push_back({"Concordant", std::to_string(a.concordant),
                         fmt_fix(100.0 * static_cast<double>(a.concordant) / total, 1)});
        pairs.push_back({"Discordant", std::to_string(a.discordant),
                         fmt_fix(100.0 * static_cast<double>(a.discordant) / total, 1)});
        pairs.push_back({"Ties", std::to_string(a.ties),
                         fmt_fix(100.0 * static_cast<double>(a.ties) / total, 1)});
        pairs.push_back({"Total", std::to_string(a.total_pairs), fmt_fix(100.0, 1)});
        out << render_table(pairs, {Align::Left, Align::Right, Align::Right});
        out << "Somers' D = " << fmt_fix(a.somers_d, 2)
            << ", Goodman-Kruskal Gamma = " << fmt_fix(a.gamma, 2)
            << ", Kendall's Tau-a = " << fmt_fix(a.tau_a, 2) << '\n';
    } else {
        out << "skipped (" << doc.association_skipped << ")\n";
    }

    out << "\nConvergence: " << (doc.converged ? "yes" : "no") << " after " << doc.iterations
        << " iterations\n";
    if (doc.separation_detected)
        out << "WARNING: " << doc.separation_diagnosis << '\n';
    for (const auto& w : doc.warnings)
        if (w != doc.separation_diagnosis) out << "note: " << w << '\n';
    return out.str();
}

std::string render_json(const ReportDocument& doc) {
    nlohmann::ordered_json j;

    j["descriptives"] = nlohmann::ordered_json::parse(render_descriptives_json(doc.descriptives));
    j["screen"]["retained"] = doc.screen.retained;
    j["screen"]["excluded"] = doc.screen.excluded;

    j["coefficients"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < doc.coefficient_rows.size(); ++i) {
        const auto& r = doc.coefficient_rows[i];
        nlohmann::ordered_json row;
        row["variable"] = r.variable;
        row["coefficient"] = r.coefficient;
        row["std_error"] = r.se;
        row["z"] = r.z;
        row["p"] = r.p_two_sided;
        if (i == 0)
            row["odds_ratio"] = nullptr;
        else
            row["odds_ratio"] = r.odds_ratio;
        row["significant"] = r.significant;
        j["coefficients"].push_back(row);
    }

    j["log_likelihood"] = doc.log_likelihood;
    if (doc.slopes_test) {
        j["slopes_test"]["g"] = doc.slopes_test->g;
        j["slopes_test"]["df"] = doc.slopes_test->df;
        j["slopes_test"]["p"] = doc.slopes_test->p;
        j["slopes_test"]["ll_full"] = doc.slopes_test->ll_full;
        j["slopes_test"]["ll_null"] = doc.slopes_test->ll_null;
    } else {
        j["slopes_test"] = nullptr;
        j["slopes_test_skipped"] = doc.slopes_test_skipped;
    }

    j["goodness_of_fit"] = nlohmann::ordered_json::array();
    for (const auto& g : doc.gof) {
        nlohmann::ordered_json row;
        row["method"] = to_string(g.method);
        row["statistic"] = g.statistic;
        row["df"] = g.df;
        row["p"] = g.p;
        if (!g.warning.empty()) row["warning"] = g.warning;
        j["goodness_of_fit"].push_back(row);
    }

    if (doc.association) {
        const auto& a = *doc.association;
        j["association"]["concordant"] = a.concordant;
        j["association"]["discordant"] = a.discordant;
        j["association"]["ties"] = a.ties;
        j["association"]["total_pairs"] = a.total_pairs;
        j["association"]["somers_d"] = a.somers_d;
        j["association"]["gamma"] = a.gamma;
        j["association"]["tau_a"] = a.tau_a;
    } else {
        j["association"] = nullptr;
        j["association_skipped"] = doc.association_skipped;
    }

    j["converged"] = doc.converged;
    j["iterations"] = doc.iterations;
    j["separation_detected"] = doc.separation_detected;
    if (doc.separation_detected) j["separation_diagnosis"] = doc.separation_diagnosis;
    j["warnings"] = doc.warnings;
    return j.dump(2) + "\n";
}

}  // namespace logitkit
