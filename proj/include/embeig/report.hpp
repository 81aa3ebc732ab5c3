#pragma once

// CSV / JSON emission: '.' decimal, 17 significant digits, '\n' endings, a
// leading comment line carrying the resolved configuration, and
// schema_version 1 on every JSON document.

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace embeig {

inline std::string fmt_g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string config;  // "key=value ..." resolved run configuration
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

inline void write_csv(std::ostream& os, const Table& t)
{
    os << "# " << t.config << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::holds_alternative<double>(row[i])) os << fmt_g17(std::get<double>(row[i]));
            else if (std::holds_alternative<long long>(row[i]))
                os << std::get<long long>(row[i]);
            else os << std::get<std::string>(row[i]);
            os << (i + 1 < row.size() ? "," : "");
        }
        os << "\n";
    }
}

inline void write_json(std::ostream& os, const Table& t)
{
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["config"] = t.config;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::holds_alternative<double>(row[i])) r[t.columns[i]] = std::get<double>(row[i]);
            else if (std::holds_alternative<long long>(row[i]))
                r[t.columns[i]] = std::get<long long>(row[i]);
            else r[t.columns[i]] = std::get<std::string>(row[i]);
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

}  // namespace embeig
