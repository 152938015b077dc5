#include "table.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "json.hpp"

namespace qbox::cli {

std::string format_double(double value) {
    if (value == 0.0) {
        return std::signbit(value) ? "-0" : "0";
    }
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* d = std::get_if<double>(&row[i])) {
                out += format_double(*d);
            } else if (const auto* s = std::get_if<std::string>(&row[i])) {
                out += *s;
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json object = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const auto& key = table.columns[i];
            if (const auto* d = std::get_if<double>(&row[i])) {
                object[key] = *d;
            } else if (const auto* s = std::get_if<std::string>(&row[i])) {
                object[key] = *s;
            } else {
                object[key] = nullptr;
            }
        }
        rows.push_back(std::move(object));
    }
    return rows.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
    return format == Format::Json ? to_json(table) : to_csv(table);
}

Format resolve_format(const std::optional<std::filesystem::path>& path, std::optional<Format> requested) {
    if (requested) return *requested;
    if (path && path->extension() == ".json") return Format::Json;
    return Format::Csv;
}

}  // namespace qbox::cli
