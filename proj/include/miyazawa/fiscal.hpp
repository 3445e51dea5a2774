#pragma once

#include "miyazawa/accounts.hpp"
#include "miyazawa/leontief.hpp"
#include "miyazawa/miyazawa.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace miyazawa {

inline constexpr double kDefaultRateRpPerKg = 30.0;

struct TaxScenario {
    std::string label;
    double rate = kDefaultRateRpPerKg;  // Rp per kg CO2e
    double pass_through = 1.0;          // share of the cost shifted into prices
    EmissionProfile emissions;
};

void validate(const TaxScenario& scenario);

struct ScenarioFile {
    std::string label;
    double rate = kDefaultRateRpPerKg;
    double pass_through = 1.0;
    std::filesystem::path emissions_file;  // resolved against the scenario's directory
};

// Strict parse of scenario.json; unknown keys are a SchemaError.
ScenarioFile parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
ScenarioFile load_scenario_file(const std::filesystem::path& path);
TaxScenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& sector_ids);

struct ImpactDiagnostics {
    LeontiefDiagnostics leontief;
    MiyazawaDiagnostics miyazawa;
    std::vector<std::size_t> degenerate_sectors;
    std::vector<std::string> warnings;
};

// Per-group outcome of one scenario. Declines are stored as positive
// magnitudes (dy = DY); monetary values are million Rp.
struct ImpactResult {
    std::string label;
    std::vector<HouseholdGroup> groups;
    Vector dv;      // unit-cost shock, share of output value
    Vector dp;      // price change, share
    Vector df;      // final-demand change
    Vector y1;      // baseline income
    Vector dy;      // income decline DY
    Vector y2;      // y1 - DY
    Vector pct_dy;  // DY / y1
    Vector pct_cy;  // DY / sum(DY); NaN when there is no decline at all
    double tax_revenue = 0.0;
    bool zero_impact = false;
    Closure closure = Closure::Closed;
    ImpactDiagnostics diagnostics;
};

// dv[j] = rate * e[j] / 1e6: e is kg per million Rp, so rate * e is Rp of tax
// per million Rp of output.
Vector tax_cost_vector(const TaxScenario& scenario);

// Nominal budgets are fixed, so real demand falls in proportion to prices.
Vector demand_shock(const Vector& dp, const Vector& f, double pass_through);

struct RunOptions {
    Closure closure = Closure::Closed;
};

ImpactResult run_scenario(const SectorAccounts& accounts, const HouseholdAccounts& households,
                          const TaxScenario& scenario, const RunOptions& options = {});

// Fills y2, pct_dy, pct_cy and zero_impact from y1 and dy.
void finalize_shares(ImpactResult& result);

}  // namespace miyazawa
