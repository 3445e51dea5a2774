#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

namespace miyazawa::csv {

// Minimal reader for the engine's fixed schemas: comma separated, no quoting,
// '.' decimal separator. Blank lines are skipped.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> cells;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

Table read(std::istream& in, const std::string& source);

// Strict number parse; the whole cell must be consumed.
double parse_number(const std::string& cell, const std::string& source, std::size_t line,
                    const std::string& column);

std::ifstream open(const std::filesystem::path& path);

}  // namespace miyazawa::csv
