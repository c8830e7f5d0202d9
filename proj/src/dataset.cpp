#include "logitkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace logitkit {

std::string to_string(Role role) {
    switch (role) {
        case Role::Response: return "response";
        case Role::Continuous: return "continuous";
        case Role::Dummy: return "dummy";
    }
    return "unknown";
}

Role role_from_string(const std::string& s) {
    if (s == "response") return Role::Response;
    if (s == "continuous") return Role::Continuous;
    if (s == "dummy") return Role::Dummy;
    throw ValidationError("unknown variable role '" + s + "'");
}

Dataset::Dataset(std::vector<VariableSpec> specs, std::vector<double> cells)
    : specs_(std::move(specs)), cells_(std::move(cells)) {
    const std::size_t m = specs_.size();
    if (m == 0) throw ValidationError("dataset needs at least one variable");
    if (cells_.empty() || cells_.size() % m != 0)
        throw ValidationError("cell count is not a positive multiple of the variable count");
    n_ = cells_.size() / m;

    std::unordered_set<std::string> seen;
    std::size_t responses = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (specs_[j].name.empty()) throw ValidationError("variable name must not be empty");
        if (!seen.insert(specs_[j].name).second)
            throw ValidationError("duplicate variable name '" + specs_[j].name + "'");
        if (specs_[j].role == Role::Response) {
            response_ = j;
            ++responses;
        }
    }
    if (responses != 1)
        throw ValidationError("dataset must have exactly one response variable, found " +
                              std::to_string(responses));

    for (std::size_t j = 0; j < m; ++j) {
        if (specs_[j].role == Role::Continuous) continue;
        for (std::size_t i = 0; i < n_; ++i) {
            const double v = cell(i, j);
            if (v != 0.0 && v != 1.0)
                throw ValidationError("variable '" + specs_[j].name + "' must be 0 or 1, row " +
                                      std::to_string(i + 1) + " holds " + format_double(v));
        }
    }
}

bool Dataset::has_variable(const std::string& name) const {
    return std::any_of(specs_.begin(), specs_.end(),
                       [&](const VariableSpec& s) { return s.name == name; });
}

std::size_t Dataset::index_of(const std::string& name) const {
    for (std::size_t j = 0; j < specs_.size(); ++j)
        if (specs_[j].name == name) return j;
    throw ValidationError("unknown variable '" + name + "'");
}

std::vector<double> Dataset::column(std::size_t j) const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = cell(i, j);
    return out;
}

std::vector<double> Dataset::column(const std::string& name) const {
    return column(index_of(name));
}

std::vector<std::string> Dataset::predictor_names() const {
    std::vector<std::string> out;
    out.reserve(specs_.size() - 1);
    for (std::size_t j = 0; j < specs_.size(); ++j)
        if (j != response_) out.push_back(specs_[j].name);
    return out;
}

Dataset Dataset::select(const std::vector<std::string>& predictors) const {
    std::vector<std::size_t> idx;
    idx.push_back(response_);
    for (const auto& name : predictors) {
        const std::size_t j = index_of(name);
        if (j == response_)
            throw ValidationError("the response '" + name + "' cannot be selected as a predictor");
        idx.push_back(j);
    }
    std::vector<VariableSpec> specs;
    specs.reserve(idx.size());
    for (std::size_t j : idx) specs.push_back(specs_[j]);
    std::vector<double> cells;
    cells.reserve(n_ * idx.size());
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j : idx) cells.push_back(cell(i, j));
    return Dataset(std::move(specs), std::move(cells));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw NumericError("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

double parse_cell(const std::string& token, std::size_t row, std::size_t col) {
    const std::string where =
        " at row " + std::to_string(row) + ", column " + std::to_string(col);
    if (token.empty()) throw ValidationError("missing value" + where);
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ValidationError("non-numeric cell '" + token + "'" + where);
    return v;
}

}  // namespace

Dataset load_csv(std::istream& in, const std::vector<VariableSpec>& schema) {
    if (schema.empty()) throw ValidationError("empty schema");

    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV, header row required");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_line(line);
    if (header.size() != schema.size())
        throw ValidationError("header has " + std::to_string(header.size()) +
                              " columns, schema expects " + std::to_string(schema.size()));

    // Header may come in any order; cells are mapped back to schema order.
    std::unordered_map<std::string, std::size_t> schema_pos;
    for (std::size_t j = 0; j < schema.size(); ++j) schema_pos.emplace(schema[j].name, j);
    std::vector<std::size_t> to_schema(header.size());
    std::unordered_set<std::string> seen;
    for (std::size_t h = 0; h < header.size(); ++h) {
        const auto it = schema_pos.find(header[h]);
        if (it == schema_pos.end())
            throw ValidationError("CSV column '" + header[h] + "' is not in the schema");
        if (!seen.insert(header[h]).second)
            throw ValidationError("duplicate CSV column '" + header[h] + "'");
        to_schema[h] = it->second;
    }

    std::vector<double> cells;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        ++row;
        const std::vector<std::string> tokens = split_line(line);
        if (tokens.size() != schema.size())
            throw ValidationError("row " + std::to_string(row) + " has " +
                                  std::to_string(tokens.size()) + " cells, expected " +
                                  std::to_string(schema.size()));
        std::vector<double> in_schema_order(schema.size());
        for (std::size_t h = 0; h < tokens.size(); ++h)
            in_schema_order[to_schema[h]] = parse_cell(tokens[h], row, h + 1);
        cells.insert(cells.end(), in_schema_order.begin(), in_schema_order.end());
    }
    if (cells.empty()) throw ValidationError("CSV has a header but no data rows");

    try {
        return Dataset(std::vector<VariableSpec>(schema), std::move(cells));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("CSV rejected: ") + e.what());
    }
}

void write_csv(std::ostream& out, const Dataset& ds) {
    const auto& specs = ds.specs();
    for (std::size_t j = 0; j < specs.size(); ++j) {
        if (j) out << ',';
        out << specs[j].name;
    }
    out << '\n';
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        for (std::size_t j = 0; j < specs.size(); ++j) {
            if (j) out << ',';
            out << format_double(ds.cell(i, j));
        }
        out << '\n';
    }
}

std::vector<VariableSpec> load_schema(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("schema JSON parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("variables") || !doc["variables"].is_array())
        throw ValidationError("schema JSON must be an object with a 'variables' array");
    std::vector<VariableSpec> out;
    for (const auto& v : doc["variables"]) {
        if (!v.is_object() || !v.contains("name") || !v.contains("role"))
            throw ValidationError("each schema variable needs 'name' and 'role'");
        VariableSpec spec;
        spec.name = v["name"].get<std::string>();
        spec.role = role_from_string(v["role"].get<std::string>());
        spec.description = v.value("description", std::string{});
        out.push_back(std::move(spec));
    }
    if (out.empty()) throw ValidationError("schema lists no variables");
    return out;
}

void write_schema(std::ostream& out, const std::vector<VariableSpec>& specs) {
    nlohmann::ordered_json doc;
    doc["variables"] = nlohmann::ordered_json::array();
    for (const auto& s : specs) {
        doc["variables"].push_back({{"name", s.name},
                                    {"role", to_string(s.role)},
                                    {"description", s.description}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace logitkit
