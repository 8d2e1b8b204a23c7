// SPDX-License-Identifier: Apache-2.0
//
// Tabulated curves and their CSV form:
//
//   # <metadata line>            (zero or more)
//   # label=<label> provenance=<analytic|simulated|fitted>
//   <x name>,<column name>,...
//   <x>,<value>,...
//
// Numbers use %.12g. Row order is the grid order.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ofdmim {

enum class Provenance { analytic, simulated, fitted };

const char* to_string(Provenance p);

struct CurveTable {
    std::string label;
    Provenance provenance = Provenance::analytic;
    std::string x_name = "x_db";
    std::vector<double> x;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    /// Adds a named column; its length must match x.
    void add_column(std::string name, std::vector<double> values);
    const std::vector<double>& column(const std::string& name) const;
    std::size_t rows() const { return x.size(); }

    /// Throws std::invalid_argument on unequal lengths or non-finite values.
    void validate() const;

    void write_csv(std::ostream& os, const std::vector<std::string>& metadata = {}) const;
};

/// Parses the CSV layout written by write_csv (comment lines are skipped).
CurveTable read_csv(std::istream& is);

} // namespace ofdmim
