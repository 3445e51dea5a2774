#include "miyazawa/accounts.hpp"

#include "csv.hpp"
#include "miyazawa/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace miyazawa {

namespace {

double relative_gap(double lhs, double rhs) {
    const double scale = std::abs(rhs) > 0.0 ? std::abs(rhs) : 1.0;
    return std::abs(lhs - rhs) / scale;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double read_finite(const csv::Row& row, std::size_t col, const std::vector<std::string>& header,
                   const std::string& source) {
    const double value = csv::parse_number(row.cells[col], source, row.line, header[col]);
    if (!std::isfinite(value)) {
        throw NonFiniteError(fmt::format("{}:{}: column '{}' is not finite", source, row.line, header[col]));
    }
    return value;
}

void check_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite()) {
        throw NonFiniteError(what + " contains non-finite entries");
    }
}

// Maps a header slice onto the canonical sector ordering; returns column
// positions indexed by sector.
std::vector<std::size_t> align_columns(const std::vector<std::string>& header, std::size_t first,
                                       const std::vector<std::string>& sector_ids, const std::string& source) {
    std::vector<std::size_t> position(sector_ids.size());
    std::vector<bool> seen(sector_ids.size(), false);
    for (std::size_t k = 0; k < sector_ids.size(); ++k) {
        const auto& name = header[first + k];
        const auto it = std::find(sector_ids.begin(), sector_ids.end(), name);
        if (it == sector_ids.end()) {
            throw SchemaError(fmt::format("{}: header names unknown sector '{}'", source, name));
        }
        const auto s = static_cast<std::size_t>(it - sector_ids.begin());
        if (seen[s]) {
            throw SchemaError(fmt::format("{}: sector '{}' appears twice in header", source, name));
        }
        seen[s] = true;
        position[s] = first + k;
    }
    return position;
}

}  // namespace

std::string to_string(Region region) {
    return region == Region::Urban ? "urban" : "rural";
}

Region parse_region(const std::string& text) {
    const auto t = lower(text);
    if (t == "urban") {
        return Region::Urban;
    }
    if (t == "rural") {
        return Region::Rural;
    }
    throw SchemaError(fmt::format("unknown region '{}' (expected urban or rural)", text));
}

std::size_t canonical_index(const HouseholdGroup& group) {
    return (group.region == Region::Urban ? 0 : kDeciles) + static_cast<std::size_t>(group.decile - 1);
}

void validate(const SectorAccounts& a) {
    const auto n = a.size();
    if (n == 0) {
        throw SchemaError("sector accounts need at least one sector");
    }
    if (a.Z.rows() != static_cast<Eigen::Index>(n) || a.Z.cols() != static_cast<Eigen::Index>(n) ||
        a.f.size() != static_cast<Eigen::Index>(n) || a.x.size() != static_cast<Eigen::Index>(n) ||
        a.va.size() != static_cast<Eigen::Index>(n)) {
        throw DimensionError(fmt::format("sector accounts are not consistently sized for n={}", n));
    }
    check_finite(a.Z, "inter-industry flows");
    check_finite(a.f, "final demand");
    check_finite(a.x, "total output");
    check_finite(a.va, "value added");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (a.Z(i, j) < 0.0) {
                throw SchemaError(fmt::format("negative flow Z[{},{}] = {} ({} -> {})", i + 1, j + 1, a.Z(i, j),
                                              a.sector_ids[i], a.sector_ids[j]));
            }
        }
        if (a.x(i) < 0.0) {
            throw SchemaError(fmt::format("negative total output for sector '{}'", a.sector_ids[i]));
        }
    }

    // Worst offender across rows and columns.
    double worst = 0.0;
    std::string where;
    for (std::size_t i = 0; i < n; ++i) {
        const double row_total = a.Z.row(i).sum() + a.f(i);
        const double gap = relative_gap(row_total, a.x(i));
        if (gap > worst) {
            worst = gap;
            where = fmt::format("row {} (sector '{}'): intermediate sales + final demand = {} but total output = {}",
                                i + 1, a.sector_ids[i], row_total, a.x(i));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double col_total = a.Z.col(j).sum() + a.va(j);
        const double gap = relative_gap(col_total, a.x(j));
        if (gap > worst) {
            worst = gap;
            where = fmt::format("column {} (sector '{}'): intermediate inputs + value added = {} but total output = {}",
                                j + 1, a.sector_ids[j], col_total, a.x(j));
        }
    }
    if (worst > kBalanceTolerance) {
        throw BalanceError(fmt::format("{} (relative gap {:.4g} exceeds {})", where, worst, kBalanceTolerance));
    }
}

void validate(const HouseholdAccounts& h, std::size_t sector_count) {
    const auto n = static_cast<Eigen::Index>(sector_count);
    const auto r = static_cast<Eigen::Index>(h.size());
    if (h.W.rows() != r || h.W.cols() != n || h.H.rows() != n || h.H.cols() != r || h.y0.size() != r) {
        throw DimensionError(fmt::format("household accounts do not match {} sectors x {} groups", n, r));
    }
    std::array<bool, kGroupCount> seen{};
    for (const auto& g : h.groups) {
        if (g.decile < 1 || g.decile > kDeciles) {
            throw GroupSetError(fmt::format("group '{}' has decile {} outside 1..10", g.group_id, g.decile));
        }
        const auto k = canonical_index(g);
        if (seen[k]) {
            throw GroupSetError(fmt::format("duplicate group ({}, {})", to_string(g.region), g.decile));
        }
        seen[k] = true;
    }
    for (std::size_t k = 0; k < kGroupCount; ++k) {
        if (!seen[k]) {
            throw GroupSetError(fmt::format("missing group ({}, {})", k < kDeciles ? "urban" : "rural",
                                            k % kDeciles + 1));
        }
    }
    check_finite(h.W, "household income");
    check_finite(h.H, "household consumption");
    check_finite(h.y0, "baseline income");
    if ((h.W.array() < 0.0).any()) {
        throw SchemaError("negative household income payment");
    }
    if ((h.H.array() < 0.0).any()) {
        throw SchemaError("negative household consumption");
    }
    for (Eigen::Index g = 0; g < r; ++g) {
        const auto& id = h.groups[static_cast<std::size_t>(g)].group_id;
        if (relative_gap(h.W.row(g).sum(), h.y0(g)) > kBalanceTolerance) {
            throw BalanceError(fmt::format("group '{}': income row sums to {} but total is {}", id, h.W.row(g).sum(),
                                           h.y0(g)));
        }
        const double spent = h.H.col(g).sum();
        if (h.y0(g) <= 0.0) {
            if (spent > 0.0) {
                throw ZeroIncomeError(fmt::format("group '{}' consumes {} with zero income", id, spent));
            }
        } else if (spent / h.y0(g) > 1.0 + 1e-12) {
            throw ConsumptionShareError(
                fmt::format("group '{}' consumes {:.6g} of its income (must not exceed 1)", id, spent / h.y0(g)));
        }
    }
}

SectorAccounts parse_sector_accounts(std::istream& in, const std::string& source) {
    const auto table = csv::read(in, source);
    const auto& header = table.header;
    if (header.size() < 5 || header.front() != "sector_id" || header[header.size() - 3] != "final_demand" ||
        header[header.size() - 2] != "value_added" || header.back() != "total_output") {
        throw SchemaError(fmt::format(
            "{}: header must be sector_id,<sector ids...>,final_demand,value_added,total_output", source));
    }
    const std::size_t n = header.size() - 4;
    SectorAccounts a;
    a.sector_ids.assign(header.begin() + 1, header.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    {
        auto sorted = a.sector_ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw SchemaError(fmt::format("{}: duplicate sector id in header", source));
        }
    }
    a.Z = Matrix::Zero(n, n);
    a.f = Vector::Zero(n);
    a.x = Vector::Zero(n);
    a.va = Vector::Zero(n);

    std::vector<bool> seen(n, false);
    for (const auto& row : table.rows) {
        if (row.cells.size() != header.size()) {
            throw SchemaError(fmt::format("{}:{}: expected {} columns, found {}", source, row.line, header.size(),
                                          row.cells.size()));
        }
        const auto it = std::find(a.sector_ids.begin(), a.sector_ids.end(), row.cells[0]);
        if (it == a.sector_ids.end()) {
            throw SchemaError(fmt::format("{}:{}: row for unknown sector '{}'", source, row.line, row.cells[0]));
        }
        const auto i = static_cast<std::size_t>(it - a.sector_ids.begin());
        if (seen[i]) {
            throw SchemaError(fmt::format("{}:{}: duplicate row for sector '{}'", source, row.line, row.cells[0]));
        }
        seen[i] = true;
        for (std::size_t j = 0; j < n; ++j) {
            a.Z(i, j) = read_finite(row, 1 + j, header, source);
        }
        a.f(i) = read_finite(row, n + 1, header, source);
        a.va(i) = read_finite(row, n + 2, header, source);
        a.x(i) = read_finite(row, n + 3, header, source);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw SchemaError(fmt::format("{}: no row for sector '{}'", source, a.sector_ids[i]));
        }
    }
    validate(a);
    return a;
}

SectorAccounts load_sector_accounts(const std::filesystem::path& path) {
    auto in = csv::open(path);
    return parse_sector_accounts(in, path.string());
}

HouseholdAccounts parse_household_accounts(std::istream& in, const std::vector<std::string>& sector_ids,
                                           const std::string& source) {
    const auto table = csv::read(in, source);
    const auto& header = table.header;
    const std::array<std::string, 4> fixed{"group_id", "region", "decile", "kind"};
    if (header.size() < fixed.size() + 1 || !std::equal(fixed.begin(), fixed.end(), header.begin()) ||
        header.back() != "total") {
        throw SchemaError(
            fmt::format("{}: header must be group_id,region,decile,kind,<sector ids...>,total", source));
    }
    const std::size_t columns = header.size() - fixed.size() - 1;
    if (columns != sector_ids.size()) {
        throw DimensionError(fmt::format("{}: {} sector columns but the sector table has {}", source, columns,
                                         sector_ids.size()));
    }
    const auto position = align_columns(header, fixed.size(), sector_ids, source);
    const std::size_t n = sector_ids.size();

    HouseholdAccounts h;
    h.groups.resize(kGroupCount);
    h.W = Matrix::Zero(kGroupCount, n);
    h.H = Matrix::Zero(n, kGroupCount);
    h.y0 = Vector::Zero(kGroupCount);
    std::array<bool, kGroupCount> has_income{};
    std::array<bool, kGroupCount> has_consumption{};
    std::array<std::optional<double>, kGroupCount> stated_total{};
    std::array<std::string, kGroupCount> consumption_id{};

    for (const auto& row : table.rows) {
        if (row.cells.size() != header.size()) {
            throw SchemaError(fmt::format("{}:{}: expected {} columns, found {}", source, row.line, header.size(),
                                          row.cells.size()));
        }
        HouseholdGroup group;
        group.group_id = row.cells[0];
        if (group.group_id.empty()) {
            throw SchemaError(fmt::format("{}:{}: empty group_id", source, row.line));
        }
        try {
            group.region = parse_region(row.cells[1]);
        } catch (const SchemaError& e) {
            throw SchemaError(fmt::format("{}:{}: {}", source, row.line, e.what()));
        }
        const auto& d = row.cells[2];
        const auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), group.decile);
        if (d.empty() || ec != std::errc() || ptr != d.data() + d.size()) {
            throw SchemaError(fmt::format("{}:{}: decile '{}' is not an integer", source, row.line, d));
        }
        if (group.decile < 1 || group.decile > kDeciles) {
            throw GroupSetError(fmt::format("{}:{}: decile {} outside 1..10", source, row.line, group.decile));
        }
        const auto kind = lower(row.cells[3]);
        const auto g = canonical_index(group);
        std::optional<double> total;
        if (!row.cells.back().empty()) {
            total = read_finite(row, header.size() - 1, header, source);
        }
        if (kind == "income") {
            if (has_income[g]) {
                throw GroupSetError(fmt::format("{}:{}: duplicate income row for ({}, {})", source, row.line,
                                                to_string(group.region), group.decile));
            }
            has_income[g] = true;
            h.groups[g] = group;
            for (std::size_t s = 0; s < n; ++s) {
                h.W(g, s) = read_finite(row, position[s], header, source);
            }
            stated_total[g] = total;
        } else if (kind == "consumption") {
            if (has_consumption[g]) {
                throw GroupSetError(fmt::format("{}:{}: duplicate consumption row for ({}, {})", source, row.line,
                                                to_string(group.region), group.decile));
            }
            has_consumption[g] = true;
            consumption_id[g] = group.group_id;
            for (std::size_t s = 0; s < n; ++s) {
                h.H(s, g) = read_finite(row, position[s], header, source);
            }
            if (total && relative_gap(h.H.col(g).sum(), *total) > kBalanceTolerance) {
                throw BalanceError(fmt::format("{}:{}: consumption row sums to {} but total is {}", source, row.line,
                                               h.H.col(g).sum(), *total));
            }
        } else {
            throw SchemaError(fmt::format("{}:{}: kind '{}' must be income or consumption", source, row.line,
                                          row.cells[3]));
        }
    }
    for (std::size_t g = 0; g < kGroupCount; ++g) {
        const char* region = g < kDeciles ? "urban" : "rural";
        const auto decile = g % kDeciles + 1;
        if (!has_income[g]) {
            throw GroupSetError(fmt::format("{}: missing group ({}, {})", source, region, decile));
        }
        if (has_consumption[g] && consumption_id[g] != h.groups[g].group_id) {
            throw SchemaError(fmt::format("{}: group ({}, {}) has income id '{}' but consumption id '{}'", source,
                                          region, decile, h.groups[g].group_id, consumption_id[g]));
        }
        h.y0(static_cast<Eigen::Index>(g)) = stated_total[g].value_or(h.W.row(static_cast<Eigen::Index>(g)).sum());
    }
    validate(h, n);
    return h;
}

HouseholdAccounts load_household_accounts(const std::filesystem::path& path,
                                          const std::vector<std::string>& sector_ids) {
    auto in = csv::open(path);
    return parse_household_accounts(in, sector_ids, path.string());
}

EmissionProfile parse_emissions(std::istream& in, const std::vector<std::string>& sector_ids,
                                const std::string& source) {
    const auto table = csv::read(in, source);
    if (table.header != std::vector<std::string>{"sector_id", "kg_co2e_per_million_rp"}) {
        throw SchemaError(fmt::format("{}: header must be sector_id,kg_co2e_per_million_rp", source));
    }
    EmissionProfile profile;
    profile.e = Vector::Zero(static_cast<Eigen::Index>(sector_ids.size()));
    std::vector<bool> seen(sector_ids.size(), false);
    for (const auto& row : table.rows) {
        if (row.cells.size() != 2) {
            throw SchemaError(fmt::format("{}:{}: expected 2 columns, found {}", source, row.line, row.cells.size()));
        }
        const auto it = std::find(sector_ids.begin(), sector_ids.end(), row.cells[0]);
        if (it == sector_ids.end()) {
            throw UnknownSector(fmt::format("{}:{}: sector '{}' is not in the sector table", source, row.line,
                                            row.cells[0]));
        }
        const auto s = static_cast<std::size_t>(it - sector_ids.begin());
        if (seen[s]) {
            throw SchemaError(fmt::format("{}:{}: sector '{}' listed twice", source, row.line, row.cells[0]));
        }
        seen[s] = true;
        const double value = read_finite(row, 1, table.header, source);
        if (value < 0.0) {
            throw NegativeIntensity(fmt::format("{}:{}: sector '{}' has intensity {}", source, row.line,
                                                row.cells[0], value));
        }
        profile.e(static_cast<Eigen::Index>(s)) = value;
    }
    for (std::size_t s = 0; s < sector_ids.size(); ++s) {
        if (!seen[s]) {
            throw MissingSector(fmt::format("{}: no intensity for sector '{}'", source, sector_ids[s]));
        }
    }
    return profile;
}

EmissionProfile load_emissions(const std::filesystem::path& path, const std::vector<std::string>& sector_ids) {
    auto in = csv::open(path);
    return parse_emissions(in, sector_ids, path.string());
}

}  // namespace miyazawa
