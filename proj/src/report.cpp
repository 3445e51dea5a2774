#include "miyazawa/report.hpp"

#include "csv.hpp"
#include "json.hpp"
#include "miyazawa/errors.hpp"
#include "miyazawa/log.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

namespace miyazawa {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kWeightTolerance = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string percent(double fraction, int decimals) {
    if (std::isnan(fraction)) {
        return "NA";
    }
    return fmt::format("{:.{}f}%", fraction * 100.0 + 0.0, decimals);
}

bool in_scope(const HouseholdGroup& g, RegionScope scope) {
    return scope == RegionScope::All || (scope == RegionScope::Urban && g.region == Region::Urban) ||
           (scope == RegionScope::Rural && g.region == Region::Rural);
}

ordered_json knots_json(const LorenzCurve& curve) {
    auto arr = ordered_json::array();
    for (const auto& k : curve.knots) {
        arr.push_back(ordered_json::array({k.p, k.L}));
    }
    return arr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    }
    out << content;
    if (!out) {
        throw IoError(fmt::format("failed writing '{}'", path.string()));
    }
}

}  // namespace

PopulationWeights parse_population_weights(const std::string& text) {
    PopulationWeights w;
    bool have_urban = false;
    bool have_rural = false;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw SchemaError(fmt::format("population weight '{}' is not region=fraction", item));
        }
        const auto key = item.substr(0, eq);
        const double value = csv::parse_number(item.substr(eq + 1), "--population-weights", 0, key);
        if (!(value > 0.0 && value <= 1.0)) {
            throw SchemaError(fmt::format("population weight for '{}' must lie in (0, 1]", key));
        }
        if (key == "urban" && !have_urban) {
            w.urban = value;
            have_urban = true;
        } else if (key == "rural" && !have_rural) {
            w.rural = value;
            have_rural = true;
        } else {
            throw SchemaError(fmt::format("unexpected or repeated population weight key '{}'", key));
        }
    }
    if (!have_urban || !have_rural) {
        throw SchemaError("population weights need both urban and rural");
    }
    if (std::abs(w.urban + w.rural - 1.0) > kWeightTolerance) {
        throw SchemaError(fmt::format("population weights sum to {:.17g}, not 1", w.urban + w.rural));
    }
    return w;
}

void validate(const RunConfig& c) {
    if (c.sectors_file.empty() || c.households_file.empty() || c.scenario_file.empty() || c.output_dir.empty()) {
        throw SchemaError("sectors, households, scenario and output paths must all be set");
    }
    if (c.population_weights) {
        const auto& w = *c.population_weights;
        if (!(w.urban > 0.0) || !(w.rural > 0.0) || std::abs(w.urban + w.rural - 1.0) > kWeightTolerance) {
            throw SchemaError("population weights must be positive and sum to 1");
        }
    }
}

std::vector<ClassRow> impact_rows(const ImpactResult& result, RegionScope scope) {
    std::vector<ClassRow> rows(kDeciles);
    for (int d = 0; d < kDeciles; ++d) {
        rows[static_cast<std::size_t>(d)].label = std::to_string(d + 1);
    }
    ClassRow total{"Total"};
    for (std::size_t g = 0; g < result.groups.size(); ++g) {
        const auto& group = result.groups[g];
        if (!in_scope(group, scope)) {
            continue;
        }
        auto& row = rows[static_cast<std::size_t>(group.decile - 1)];
        const auto i = static_cast<Eigen::Index>(g);
        row.y1 += result.y1(i);
        row.dy += result.dy(i);
        row.y2 += result.y2(i);
    }
    for (const auto& row : rows) {
        total.y1 += row.y1;
        total.dy += row.dy;
        total.y2 += row.y2;
    }
    rows.push_back(total);
    for (auto& row : rows) {
        row.pct_dy = row.y1 != 0.0 ? row.dy / row.y1 : (row.dy == 0.0 ? 0.0 : kNaN);
        row.pct_cy = total.dy != 0.0 ? row.dy / total.dy : kNaN;
    }
    return rows;
}

std::string emit_impact_table(const ImpactResult& result, RegionScope scope, const TablePrecision& precision) {
    std::string out = "class,y1,dy,y2,pct_dy,pct_cy\n";
    for (const auto& row : impact_rows(result, scope)) {
        out += fmt::format("{},{:.0f},{:.{}f},{:.0f},{},{}\n", row.label, row.y1 + 0.0, row.dy + 0.0,
                           precision.dy_decimals, row.y2 + 0.0, percent(row.pct_dy, precision.pct_dy_decimals),
                           percent(row.pct_cy, precision.pct_cy_decimals));
    }
    return out;
}

std::vector<ClassRow> parse_impact_table(const std::string& csv_text) {
    std::istringstream in(csv_text);
    const auto table = csv::read(in, "impact table");
    if (table.header != std::vector<std::string>{"class", "y1", "dy", "y2", "pct_dy", "pct_cy"}) {
        throw SchemaError("impact table header must be class,y1,dy,y2,pct_dy,pct_cy");
    }
    auto pct = [](const std::string& cell, std::size_t line, const char* column) {
        if (cell == "NA") {
            return kNaN;
        }
        if (cell.empty() || cell.back() != '%') {
            throw SchemaError(fmt::format("impact table line {}: '{}' is not a percentage", line, cell));
        }
        return csv::parse_number(cell.substr(0, cell.size() - 1), "impact table", line, column) / 100.0;
    };
    std::vector<ClassRow> rows;
    for (const auto& r : table.rows) {
        if (r.cells.size() != 6) {
            throw SchemaError(fmt::format("impact table line {}: expected 6 columns", r.line));
        }
        ClassRow row;
        row.label = r.cells[0];
        row.y1 = csv::parse_number(r.cells[1], "impact table", r.line, "y1");
        row.dy = csv::parse_number(r.cells[2], "impact table", r.line, "dy");
        row.y2 = csv::parse_number(r.cells[3], "impact table", r.line, "y2");
        row.pct_dy = pct(r.cells[4], r.line, "pct_dy");
        row.pct_cy = pct(r.cells[5], r.line, "pct_cy");
        rows.push_back(row);
    }
    return rows;
}

std::string emit_contribution_shares(const ImpactResult& result) {
    auto rows = impact_rows(result, RegionScope::All);
    rows.pop_back();
    std::string out = "class,pct_cy\n";
    if (std::isnan(rows.front().pct_cy)) {
        spdlog::warn("ZeroImpactWarning: no income decline, contribution shares are NA");
        for (const auto& row : rows) {
            out += fmt::format("{},NA\n", row.label);
        }
        return out;
    }
    // Largest-remainder rounding to hundredths of a percent so the column
    // totals exactly 100.00%.
    constexpr long long kUnits = 10000;
    std::vector<long long> units(rows.size());
    std::vector<double> remainder(rows.size());
    long long assigned = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double exact = rows[i].pct_cy * static_cast<double>(kUnits);
        units[i] = static_cast<long long>(std::floor(exact));
        remainder[i] = exact - static_cast<double>(units[i]);
        assigned += units[i];
    }
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < kUnits && k < order.size(); ++k, ++assigned) {
        ++units[order[k]];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += fmt::format("{},{}.{:02d}%\n", rows[i].label, units[i] / 100, units[i] % 100);
    }
    return out;
}

ScopedDistribution income_distribution(const ImpactResult& result, RegionScope scope, IncomeStage stage,
                                       const std::optional<PopulationWeights>& weights) {
    const Vector& income = stage == IncomeStage::Before ? result.y1 : result.y2;
    auto region_incomes = [&](Region region) {
        std::vector<double> v(kDeciles, 0.0);
        for (std::size_t g = 0; g < result.groups.size(); ++g) {
            if (result.groups[g].region == region) {
                v[static_cast<std::size_t>(result.groups[g].decile - 1)] += income(static_cast<Eigen::Index>(g));
            }
        }
        return v;
    };
    switch (scope) {
        case RegionScope::Urban:
            return {equal_share_distribution(region_incomes(Region::Urban), RegionScope::Urban),
                    "grouped-trapezoid:regional-deciles"};
        case RegionScope::Rural:
            return {equal_share_distribution(region_incomes(Region::Rural), RegionScope::Rural),
                    "grouped-trapezoid:regional-deciles"};
        case RegionScope::All:
            break;
    }
    const auto urban = region_incomes(Region::Urban);
    const auto rural = region_incomes(Region::Rural);
    if (weights) {
        return {merge_regions(equal_share_distribution(urban, RegionScope::Urban),
                              equal_share_distribution(rural, RegionScope::Rural), weights->urban, weights->rural),
                "grouped-trapezoid:region-weighted-groups"};
    }
    std::vector<double> national(kDeciles);
    for (std::size_t d = 0; d < national.size(); ++d) {
        national[d] = urban[d] + rural[d];
    }
    return {equal_share_distribution(national, RegionScope::All), "grouped-trapezoid:national-classes"};
}

std::string emit_lorenz_gini(const GroupedDistribution& before, const GroupedDistribution& after, RegionScope scope,
                             const std::string& estimator) {
    const auto delta = gini_delta(before, after);
    ordered_json doc;
    doc["scope"] = to_string(scope);
    doc["gini_before"] = delta.g_before;
    doc["gini_after"] = delta.g_after;
    doc["delta"] = delta.delta;
    doc["knots_before"] = knots_json(lorenz(before));
    doc["knots_after"] = knots_json(lorenz(after));
    doc["estimator"] = estimator;
    return doc.dump(2) + "\n";
}

std::string emit_diagnostics(const ImpactResult& result, const TaxScenario& scenario) {
    ordered_json doc;
    doc["label"] = result.label;
    doc["rate_rp_per_kg"] = scenario.rate;
    doc["pass_through"] = scenario.pass_through;
    doc["closure"] = result.closure == Closure::Closed ? "closed" : "open";
    doc["leontief"] = {
        {"spectral_radius_bound", result.diagnostics.leontief.spectral_radius_bound},
        {"hawkins_simon_ok", result.diagnostics.leontief.hawkins_simon_ok},
        {"residual_norm", result.diagnostics.leontief.residual_norm},
    };
    doc["miyazawa"] = {
        {"m_spectral_bound", result.diagnostics.miyazawa.m_spectral_bound},
        {"residual_norm", result.diagnostics.miyazawa.residual_norm},
    };
    doc["tax_revenue_million_rp"] = result.tax_revenue;
    doc["total_decline_million_rp"] = result.dy.sum();

    std::vector<double> by_class;
    const auto rows = impact_rows(result, RegionScope::All);
    for (std::size_t d = 0; d < kDeciles; ++d) {
        by_class.push_back(rows[d].pct_dy);
    }
    const auto reg = regressivity(by_class);
    doc["regressivity"] = {{"kendall_tau", reg.kendall_tau}, {"verdict", to_string(reg.verdict)}};
    doc["warnings"] = result.diagnostics.warnings;
    return doc.dump(2) + "\n";
}

void run_pipeline(const RunConfig& config) {
    validate(config);
    const auto accounts = load_sector_accounts(config.sectors_file);
    const auto households = load_household_accounts(config.households_file, accounts.sector_ids);
    const auto scenario = load_scenario(config.scenario_file, accounts.sector_ids);
    RunOptions options;
    options.closure = config.open_model ? Closure::Open : Closure::Closed;
    auto result = run_scenario(accounts, households, scenario, options);

    if (config.scope == RegionScope::All && !config.population_weights) {
        const std::string note =
            "PopulationWeightsWarning: no --population-weights; all-scope Gini uses the ten national classes";
        spdlog::warn("{}", note);
        result.diagnostics.warnings.push_back(note);
    }
    const auto before = income_distribution(result, config.scope, IncomeStage::Before, config.population_weights);
    const auto after = income_distribution(result, config.scope, IncomeStage::After, config.population_weights);

    // Render everything before touching the output directory.
    const auto impact_all = emit_impact_table(result, RegionScope::All, config.precision);
    const auto impact_urban = emit_impact_table(result, RegionScope::Urban, config.precision);
    const auto impact_rural = emit_impact_table(result, RegionScope::Rural, config.precision);
    const auto contribution = emit_contribution_shares(result);
    const auto lorenz_json =
        emit_lorenz_gini(before.distribution, after.distribution, config.scope, before.estimator);
    const auto diagnostics = emit_diagnostics(result, scenario);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create '{}': {}", config.output_dir.string(), ec.message()));
    }
    const auto& dir = config.output_dir;
    write_file(dir / "impact_all.csv", impact_all);
    write_file(dir / "impact_urban.csv", impact_urban);
    write_file(dir / "impact_rural.csv", impact_rural);
    write_file(dir / "contribution.csv", contribution);
    write_file(dir / fmt::format("lorenz_{}.json", to_string(config.scope)), lorenz_json);
    write_file(dir / "diagnostics.json", diagnostics);
}

int cli_main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"Miyazawa input-output carbon-tax incidence engine", "miyazawa"};
    app.require_subcommand(1);

    RunConfig config;
    std::string weights_text;
    std::string scope_text = "all";
    auto* run = app.add_subcommand("run", "Run a tax scenario and write impact tables");
    run->add_option("--sectors", config.sectors_file, "Inter-industry table (sectors.csv)")->required();
    run->add_option("--households", config.households_file, "Household accounts (households.csv)")->required();
    run->add_option("--scenario", config.scenario_file, "Scenario definition (scenario.json)")->required();
    run->add_option("--out", config.output_dir, "Output directory")->required();
    run->add_option("--population-weights", weights_text, "Region population weights, e.g. urban=0.56,rural=0.44");
    run->add_flag("--open-model", config.open_model, "Report direct and indirect income only (no induced income)");
    run->add_option("--scope", scope_text, "Scope of the Lorenz/Gini output")
        ->check(CLI::IsMember({"all", "urban", "rural"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << (run->parsed() ? run->help() : app.help());
        return static_cast<int>(ErrorCategory::Validation);
    }

    try {
        config.scope = parse_scope(scope_text);
        if (!weights_text.empty()) {
            config.population_weights = parse_population_weights(weights_text);
        }
        run_pipeline(config);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return static_cast<int>(ErrorCategory::Numerical);
    }
    return 0;
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<std::string> storage{"miyazawa"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) {
        argv.push_back(s.data());
    }
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace miyazawa
