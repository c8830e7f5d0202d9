#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logitkit/dataset.hpp"

namespace logitkit {

struct DescriptiveStats {
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation, n-1 denominator
    std::optional<double> cv_percent;  // 100*std_dev/mean; empty when mean == 0
};

/// Mean, sample SD and coefficient of variation of one column.
DescriptiveStats describe(const Dataset& ds, const std::string& variable);

struct ScreenResult {
    std::vector<std::string> retained;
    std::vector<std::string> excluded;
};

/// Drops predictors whose CV is below the threshold (percent). The response
/// is never screened. A predictor with undefined CV (zero mean) is an error.
ScreenResult screen_by_cv(const Dataset& ds, double threshold_percent = 10.0);

struct FrequencyBin {
    std::string label;
    std::size_t count = 0;
    double percent = 0.0;
};

struct FrequencyTable {
    std::string variable;
    std::vector<FrequencyBin> bins;
};

/// Frequency profile of one column. Response/dummy columns tabulate {0,1};
/// continuous columns need strictly increasing bin edges, bins are [lo, hi).
FrequencyTable tabulate(const Dataset& ds, const std::string& variable,
                        const std::vector<double>& bin_edges = {});

}  // namespace logitkit
