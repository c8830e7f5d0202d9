#include "logitkit/describe.hpp"

#include <algorithm>
#include <cmath>

namespace logitkit {

DescriptiveStats describe(const Dataset& ds, const std::string& variable) {
    const std::vector<double> x = ds.column(variable);
    const std::size_t n = x.size();
    if (n < 2)
        throw ValidationError("sample standard deviation of '" + variable +
                              "' needs at least 2 observations");

    double sum = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / static_cast<double>(n);

    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    DescriptiveStats out;
    out.mean = mean;
    out.std_dev = sd;
    if (mean != 0.0) out.cv_percent = 100.0 * sd / mean;
    return out;
}

ScreenResult screen_by_cv(const Dataset& ds, double threshold_percent) {
    ScreenResult out;
    for (const auto& spec : ds.specs()) {
        if (spec.role == Role::Response) continue;
        const DescriptiveStats st = describe(ds, spec.name);
        if (!st.cv_percent)
            throw ValidationError("CV of '" + spec.name +
                                  "' is undefined (zero mean); screen it manually");
        if (*st.cv_percent < threshold_percent)
            out.excluded.push_back(spec.name);
        else
            out.retained.push_back(spec.name);
    }
    return out;
}

namespace {

FrequencyTable binary_table(const std::string& variable, const std::vector<double>& x) {
    std::size_t ones = 0;
    for (double v : x) ones += (v == 1.0);
    const double n = static_cast<double>(x.size());
    FrequencyTable out;
    out.variable = variable;
    out.bins.push_back({"0", x.size() - ones, 100.0 * static_cast<double>(x.size() - ones) / n});
    out.bins.push_back({"1", ones, 100.0 * static_cast<double>(ones) / n});
    return out;
}

}  // namespace

FrequencyTable tabulate(const Dataset& ds, const std::string& variable,
                        const std::vector<double>& bin_edges) {
    const std::size_t j = ds.index_of(variable);
    const std::vector<double> x = ds.column(j);

    if (ds.spec(j).role != Role::Continuous) return binary_table(variable, x);

    if (bin_edges.size() < 2)
        throw ValidationError("continuous variable '" + variable +
                              "' needs at least two bin edges");
    for (std::size_t k = 1; k < bin_edges.size(); ++k)
        if (!(bin_edges[k - 1] < bin_edges[k]))
            throw ValidationError("bin edges must be strictly increasing");

    const std::size_t bins = bin_edges.size() - 1;
    std::vector<std::size_t> counts(bins, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        // half-open bins [e_k, e_{k+1})
        const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), x[i]);
        if (it == bin_edges.begin() || it == bin_edges.end())
            throw ValidationError("value " + format_double(x[i]) + " of '" + variable +
                                  "' (row " + std::to_string(i + 1) + ") is outside all bins");
        ++counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1];
    }

    FrequencyTable out;
    out.variable = variable;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < bins; ++k) {
        const std::string label =
            "[" + format_double(bin_edges[k]) + ", " + format_double(bin_edges[k + 1]) + ")";
        out.bins.push_back({label, counts[k], 100.0 * static_cast<double>(counts[k]) / n});
    }
    return out;
}

}  // namespace logitkit
