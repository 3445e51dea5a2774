#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace miyazawa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Published IO tables carry rounding, so balances are checked relatively.
inline constexpr double kBalanceTolerance = 0.005;

// Inter-industry table. All monetary values are million Rp.
struct SectorAccounts {
    std::vector<std::string> sector_ids;
    Matrix Z;   // n x n flows, row i sells to column j
    Vector f;   // final demand
    Vector x;   // total output
    Vector va;  // value added

    std::size_t size() const { return sector_ids.size(); }
};

enum class Region { Urban, Rural };

std::string to_string(Region region);
Region parse_region(const std::string& text);

struct HouseholdGroup {
    Region region = Region::Urban;
    int decile = 1;  // 1 = poorest ("Class - 1"), 10 = richest
    std::string group_id;

    friend bool operator==(const HouseholdGroup&, const HouseholdGroup&) = default;
};

inline constexpr int kDeciles = 10;
inline constexpr std::size_t kGroupCount = 20;

// Household satellite accounts for the 20 (region, decile) groups. Groups are
// stored in canonical order: urban deciles 1..10, then rural deciles 1..10.
struct HouseholdAccounts {
    std::vector<HouseholdGroup> groups;
    Matrix W;   // r x n income payments by sector
    Matrix H;   // n x r consumption by sector
    Vector y0;  // baseline income per group

    std::size_t size() const { return groups.size(); }
};

// Emission intensity in kg CO2e per million Rp of output, aligned to sectors.
struct EmissionProfile {
    Vector e;
};

SectorAccounts parse_sector_accounts(std::istream& in, const std::string& source = "<stream>");
SectorAccounts load_sector_accounts(const std::filesystem::path& path);

HouseholdAccounts parse_household_accounts(std::istream& in, const std::vector<std::string>& sector_ids,
                                           const std::string& source = "<stream>");
HouseholdAccounts load_household_accounts(const std::filesystem::path& path,
                                          const std::vector<std::string>& sector_ids);

EmissionProfile parse_emissions(std::istream& in, const std::vector<std::string>& sector_ids,
                                const std::string& source = "<stream>");
EmissionProfile load_emissions(const std::filesystem::path& path, const std::vector<std::string>& sector_ids);

// Invariant checks shared by the loaders; also usable on programmatically
// built accounts. Throw the matching error class on violation.
void validate(const SectorAccounts& accounts);
void validate(const HouseholdAccounts& households, std::size_t sector_count);

// Canonical position of a group: urban deciles occupy 0..9, rural 10..19.
std::size_t canonical_index(const HouseholdGroup& group);

}  // namespace miyazawa
