#include "csv.hpp"

#include "miyazawa/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <sstream>

namespace miyazawa::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

void strip(std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        s.clear();
        return;
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
}

}  // namespace

Table read(std::istream& in, const std::string& source) {
    Table table;
    std::string line;
    std::size_t number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        strip(line);
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        for (auto& c : cells) {
            strip(c);
        }
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
        } else {
            table.rows.push_back(Row{number, std::move(cells)});
        }
    }
    if (!have_header) {
        throw SchemaError(fmt::format("{}: empty file", source));
    }
    return table;
}

double parse_number(const std::string& cell, const std::string& source, std::size_t line,
                    const std::string& column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = cell.data() + cell.size();
    if (!cell.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (cell.empty() || ec != std::errc() || ptr != end) {
        throw SchemaError(fmt::format("{}:{}: column '{}': '{}' is not a number", source, line, column, cell));
    }
    return value;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingFile(fmt::format("cannot open '{}'", path.string()));
    }
    return in;
}

}  // namespace miyazawa::csv
