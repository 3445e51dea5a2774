#pragma once

#include "miyazawa/fiscal.hpp"
#include "miyazawa/inequality.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace miyazawa {

struct TablePrecision {
    int dy_decimals = 2;
    int pct_dy_decimals = 7;  // percent, e.g. 0.0010068%
    int pct_cy_decimals = 2;
};

struct PopulationWeights {
    double urban = 0.0;
    double rural = 0.0;
};

// "urban=0.56,rural=0.44"; both keys required, weights must sum to 1.
PopulationWeights parse_population_weights(const std::string& text);

struct RunConfig {
    std::filesystem::path sectors_file;
    std::filesystem::path households_file;
    std::filesystem::path scenario_file;
    std::filesystem::path output_dir;
    std::optional<PopulationWeights> population_weights;
    bool open_model = false;
    RegionScope scope = RegionScope::All;
    TablePrecision precision;
};

void validate(const RunConfig& config);

// One row of a Table-1-style summary, before any rounding.
struct ClassRow {
    std::string label;  // "1".."10" or "Total"
    double y1 = 0.0;
    double dy = 0.0;
    double y2 = 0.0;
    double pct_dy = 0.0;
    double pct_cy = 0.0;  // NaN when the scope has no decline
};

// Ten class rows then the Total row. All-scope rows sum urban and rural.
std::vector<ClassRow> impact_rows(const ImpactResult& result, RegionScope scope);

std::string emit_impact_table(const ImpactResult& result, RegionScope scope, const TablePrecision& precision = {});

// Reads an emitted impact table back; NA cells become NaN, percentages are
// returned as fractions.
std::vector<ClassRow> parse_impact_table(const std::string& csv_text);

std::string emit_contribution_shares(const ImpactResult& result);

enum class IncomeStage { Before, After };

struct ScopedDistribution {
    GroupedDistribution distribution;
    std::string estimator;
};

// Urban and Rural use that region's ten deciles. All merges the 20 groups
// with population weights when given; without weights it falls back to the
// ten national classes (urban + rural income per class, 10% population each).
ScopedDistribution income_distribution(const ImpactResult& result, RegionScope scope, IncomeStage stage,
                                       const std::optional<PopulationWeights>& weights);

std::string emit_lorenz_gini(const GroupedDistribution& before, const GroupedDistribution& after,
                             RegionScope scope, const std::string& estimator = "grouped-trapezoid");

std::string emit_diagnostics(const ImpactResult& result, const TaxScenario& scenario);

// Runs the whole pipeline for a config and writes the six output files.
void run_pipeline(const RunConfig& config);

// Command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args);

}  // namespace miyazawa
