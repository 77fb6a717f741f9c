#pragma once

#include "eqrand/pi0.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqrand {

// One cleaned region: confirmed >= 1, 0 <= recovered <= confirmed.
struct RegionRecord {
    std::string region;
    std::int64_t confirmed = 0;
    std::int64_t recovered = 0;
    double rate = 0.0;  // recovered / confirmed
};

// Input column names for the three fields.
struct ColumnMapping {
    std::string region = "region";
    std::string confirmed = "confirmed";
    std::string recovered = "recovered";
};

// Parses "region=Province_State,confirmed=Confirmed,recovered=Recovered".
// Keys not mentioned keep their defaults; unknown keys throw ConfigError.
ColumnMapping parse_column_mapping(std::string_view spec);

struct DroppedRow {
    std::size_t line = 0;  // 1-based line number in the file
    std::string region;
    std::string reason;
};

struct RegionLoad {
    std::vector<RegionRecord> records;
    std::vector<DroppedRow> dropped;
};

// Reads a comma-separated file with a header row. Lines starting with '#' and
// blank lines are skipped. Rows with a missing or non-numeric count, zero
// confirmed cases, or more recoveries than confirmed cases are dropped and
// reported. Throws IoError when the file cannot be read and SchemaError when a
// mapped column is absent.
RegionLoad load_regions(const std::filesystem::path& path, const ColumnMapping& columns = {});
RegionLoad parse_regions(std::istream& in, const ColumnMapping& columns = {});

// Writes records in the default schema (region,confirmed,recovered).
void write_regions(std::ostream& out, std::span<const RegionRecord> records);

// One hypothesis per region with n = confirmed and theta_true = rate.
HypothesisFamily build_family(std::span<const RegionRecord> records, double theta1, double theta2);

}  // namespace eqrand
