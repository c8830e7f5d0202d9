#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logitkit/dataset.hpp"
#include "logitkit/describe.hpp"
#include "logitkit/diagnostics.hpp"
#include "logitkit/fit.hpp"
#include "logitkit/inference.hpp"

namespace logitkit {

struct ReportOptions {
    double cv_threshold = 10.0;  // 0 disables the screen
    int hl_groups = 10;
    // With the default group count an infeasible Hosmer-Lemeshow partition is
    // skipped with a warning; a group count the caller set explicitly errors.
    bool hl_groups_explicit = false;
    double alpha = 0.05;
    int max_iterations = 50;
    double tolerance = 1e-8;
    double ridge = 0.0;
};

struct DescriptiveRow {
    std::string name;
    std::string description;
    DescriptiveStats stats;
};

/// Everything the fit report renders, text and JSON alike. A section that
/// cannot be computed is absent with its skip reason recorded.
struct ReportDocument {
    std::vector<DescriptiveRow> descriptives;
    ScreenResult screen;

    std::vector<WaldRow> coefficient_rows;  // intercept first
    double log_likelihood = 0.0;
    std::optional<GTestResult> slopes_test;
    std::string slopes_test_skipped;

    std::vector<GofResult> gof;

    std::optional<AssociationResult> association;
    std::string association_skipped;

    bool converged = false;
    int iterations = 0;
    bool separation_detected = false;
    std::string separation_diagnosis;
    std::vector<std::string> warnings;
};

/// screen -> fit -> tests -> diagnostics over one dataset.
ReportDocument build_report(const Dataset& ds, const ReportOptions& opt);

/// Table-style text: coefficient block (6 significant digits, z at 2
/// decimals), likelihood-ratio line, goodness-of-fit block and association
/// block (statistics at 3 decimals, p-values at 3 decimals).
std::string render_text(const ReportDocument& doc);

/// Same content as JSON at full precision.
std::string render_json(const ReportDocument& doc);

std::string render_descriptives_text(const std::vector<DescriptiveRow>& rows);
std::string render_descriptives_json(const std::vector<DescriptiveRow>& rows);
std::string render_frequency_text(const FrequencyTable& table, std::size_t n);
std::string render_frequency_json(const FrequencyTable& table);

}  // namespace logitkit
