#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "logitkit/errors.hpp"

namespace logitkit {

enum class Role { Response, Continuous, Dummy };

std::string to_string(Role role);
Role role_from_string(const std::string& s);

struct VariableSpec {
    std::string name;
    Role role = Role::Continuous;
    std::string description;
};

/// Immutable numeric survey table: exactly one response column, unique
/// variable names, 0/1-valued response and dummy columns, no missing cells.
/// Safe to share across concurrent readers.
class Dataset {
  public:
    Dataset(std::vector<VariableSpec> specs, std::vector<double> cells);

    std::size_t n_rows() const { return n_; }
    std::size_t n_vars() const { return specs_.size(); }
    const std::vector<VariableSpec>& specs() const { return specs_; }
    const VariableSpec& spec(std::size_t j) const { return specs_[j]; }
    std::size_t response_index() const { return response_; }

    bool has_variable(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;

    double cell(std::size_t i, std::size_t j) const { return cells_[i * specs_.size() + j]; }
    std::span<const double> row(std::size_t i) const {
        return {cells_.data() + i * specs_.size(), specs_.size()};
    }
    std::vector<double> column(std::size_t j) const;
    std::vector<double> column(const std::string& name) const;
    std::vector<double> response() const { return column(response_); }

    std::vector<std::string> predictor_names() const;

    /// New dataset with the response plus the given predictors, in the given order.
    Dataset select(const std::vector<std::string>& predictors) const;

  private:
    std::vector<VariableSpec> specs_;
    std::vector<double> cells_;  // row-major n x m
    std::size_t n_ = 0;
    std::size_t response_ = 0;
};

/// Strict CSV ingestion: header row must name exactly the schema's variables
/// (any order); cells are plain decimal numbers, comma separated, no quoting.
/// Columns are reordered to schema order. Errors carry row/column positions.
Dataset load_csv(std::istream& in, const std::vector<VariableSpec>& schema);

/// Canonical CSV: schema-ordered header, shortest round-trip decimals,
/// '\n' line ends. load_csv(write_csv(ds)) reproduces ds bit for bit.
void write_csv(std::ostream& out, const Dataset& ds);

/// Shortest decimal that round-trips to exactly v.
std::string format_double(double v);

/// JSON sidecar schema: {"variables":[{"name","role","description"},...]}.
std::vector<VariableSpec> load_schema(std::istream& in);
void write_schema(std::ostream& out, const std::vector<VariableSpec>& specs);

}  // namespace logitkit
