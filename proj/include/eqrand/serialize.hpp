#pragma once

#include "eqrand/harness.hpp"
#include "eqrand/pi0.hpp"
#include "eqrand/power.hpp"

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>

namespace eqrand {

// Configuration echo written ahead of every artifact. Never contains timestamps,
// so identical runs produce identical bytes.
using Provenance = nlohmann::ordered_json;

// Six decimals, "nan" for NaN.
std::string format_number(double value);

inline constexpr const char* kTableColumns =
    "theta1,theta2,delta,k0,k0_hat_ump,k0_hat_rand2,stderr_ump,stderr_rand2";

// CSV files start with "# key: value" lines for each provenance entry.
void write_provenance_csv(std::ostream& out, const Provenance& provenance);

void write_series_csv(std::ostream& out, const CurveSeries& series, const Provenance& provenance);
void write_series_json(std::ostream& out, const CurveSeries& series, const Provenance& provenance);

void write_table_csv(std::ostream& out, std::span<const TableRow> rows, const Provenance& provenance);
void write_table_json(std::ostream& out, std::span<const TableRow> rows, const Provenance& provenance);

nlohmann::ordered_json to_json(const Pi0Estimate& estimate);
nlohmann::ordered_json to_json(const TableRow& row);

}  // namespace eqrand
