#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qbox::cli {

/// Empty cell, number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Header row, comma separated, empty field for an empty cell.
std::string to_csv(const Table& table);

/// Array of row objects keyed by column name; empty cells become null.
std::string to_json(const Table& table);

std::string render(const Table& table, Format format);

/// Explicit format wins; otherwise ".json" selects JSON and anything else CSV.
Format resolve_format(const std::optional<std::filesystem::path>& path, std::optional<Format> requested);

}  // namespace qbox::cli
