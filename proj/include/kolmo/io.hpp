#pragma once

// Tabular output. CSV: leading "# key=value" metadata lines, one header
// row, RFC 4180 quoting. JSON: {"schema_version": 1, "meta": {...}, "rows": [...]}.
// Doubles are printed with 17 significant digits so they round-trip;
// rationals travel as "num/den" strings.

#include <kolmo/rational.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kolmo::io {

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

struct Fraction {
    Rational value;
};

using Cell = std::variant<long long, double, bool, std::string, Fraction>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
};

std::string format_double(double v);
std::string csv_field(const std::string& text);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, Format f);

}  // namespace kolmo::io
