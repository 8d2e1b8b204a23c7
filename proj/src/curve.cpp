// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/curve.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>


namespace ofdmim {

const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::analytic:
        return "analytic";
    case Provenance::simulated:
        return "simulated";
    case Provenance::fitted:
        return "fitted";
    }
    return "unknown";
}

void CurveTable::add_column(std::string name, std::vector<double> values)
{
    if (values.size() != x.size()) {
        throw std::invalid_argument("CurveTable: column '" + name + "' length differs from x");
    }
    columns.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& CurveTable::column(const std::string& name) const
{
    for (const auto& [n, v] : columns) {
        if (n == name) {
            return v;
        }
    }
    throw std::out_of_range("CurveTable: no column '" + name + "'");
}

void CurveTable::validate() const
{
    auto check = [](const std::vector<double>& v, const std::string& what) {
        for (double d : v) {
            if (!std::isfinite(d)) {
                throw std::invalid_argument("CurveTable: non-finite value in " + what);
            }
        }
    };
    check(x, x_name);
    for (const auto& [name, v] : columns) {
        if (v.size() != x.size()) {
            throw std::invalid_argument("CurveTable: column '" + name + "' length differs from x");
        }
        check(v, name);
    }
}

namespace {

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

void CurveTable::write_csv(std::ostream& os, const std::vector<std::string>& metadata) const
{
    validate();
    for (const auto& line : metadata) {
        os << "# " << line << '\n';
    }
    os << "# label=" << label << " provenance=" << to_string(provenance) << '\n';
    os << x_name;
    for (const auto& [name, v] : columns) {
        os << ',' << name;
    }
    os << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << format_number(x[i]);
        for (const auto& [name, v] : columns) {
            os << ',' << format_number(v[i]);
        }
        os << '\n';
    }
}

CurveTable read_csv(std::istream& is)
{
    CurveTable table;
    std::string line;
    bool have_header = false;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto pos = line.find("label=");
            if (pos != std::string::npos) {
                std::istringstream meta(line.substr(pos));
                std::string token;
                while (meta >> token) {
                    if (token.rfind("label=", 0) == 0) {
                        table.label = token.substr(6);
                    } else if (token == "provenance=simulated") {
                        table.provenance = Provenance::simulated;
                    } else if (token == "provenance=fitted") {
                        table.provenance = Provenance::fitted;
                    }
                }
            }
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            cells.push_back(cell);
        }
        if (!have_header) {
            names = cells;
            values.resize(names.size());
            have_header = true;
            continue;
        }
        if (cells.size() != names.size()) {
            throw std::invalid_argument("read_csv: ragged row");
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            values[i].push_back(std::stod(cells[i]));
        }
    }
    if (!have_header || names.empty()) {
        throw std::invalid_argument("read_csv: missing header");
    }
    table.x_name = names[0];
    table.x = values[0];
    for (std::size_t i = 1; i < names.size(); ++i) {
        table.add_column(names[i], values[i]);
    }
    return table;
}

} // namespace ofdmim
