#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "adrng/nist.hpp"

namespace adrng {

/// Battery report as CSV, columns test_name,p_value,result,pass_rate.
void write_battery_csv(std::ostream& out, const nist::BatteryReport& report);
void write_battery_csv(const std::filesystem::path& path, const nist::BatteryReport& report);

/// Battery report as JSON with the full sub-P-value arrays.
std::string battery_json(const nist::BatteryReport& report);
void write_battery_json(const std::filesystem::path& path, const nist::BatteryReport& report);

/// Pass-rate table aggregated over repeated runs, Table-style CSV
/// (mean row P-value across runs, pass_rate k/n).
struct AggregatedRow {
    std::string test_name;
    int pass_count = 0;
    int applicable_count = 0;
    double mean_p = 0.0;
};
std::vector<AggregatedRow> aggregate_reports(const std::vector<nist::BatteryReport>& reports);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregatedRow>& rows, int runs);

/// Fixed-precision formatting shared by all artifact writers, so reruns are
/// byte-identical.
std::string format_p(double p);

/// Double-quoted CSV field with embedded quotes doubled.
std::string csv_quote(const std::string& field);

} // namespace adrng
