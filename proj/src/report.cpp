#include "adrng/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "adrng/errors.hpp"

namespace adrng {

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

std::string csv_quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        out += c;
        if (c == '"') out += c;
    }
    out += '"';
    return out;
}

void write_battery_csv(std::ostream& out, const nist::BatteryReport& report) {
    out << "test_name,p_value,result,pass_rate\n";
    for (const auto& r : report.results) {
        const char* result = !r.applicable ? "N/A" : (r.passed ? "Pass" : "Fail");
        out << csv_quote(r.test_name) << ',' << (r.applicable ? format_p(r.p_value) : "")
            << ',' << result << ',' << (r.applicable ? (r.passed ? "1/1" : "0/1") : "-") << '\n';
    }
}

void write_battery_csv(const std::filesystem::path& path, const nist::BatteryReport& report) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    write_battery_csv(f, report);
}

std::string battery_json(const nist::BatteryReport& report) {
    nlohmann::json j;
    j["bit_count"] = report.bit_count;
    j["all_passed"] = report.all_passed;
    j["short_stream_warning"] = report.short_stream_warning;
    j["results"] = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json row;
        row["test_name"] = r.test_name;
        row["applicable"] = r.applicable;
        row["passed"] = r.passed;
        if (r.applicable) row["p_value"] = r.p_value;
        else row["p_value"] = nullptr;
        row["p_values"] = r.p_values;
        j["results"].push_back(row);
    }
    return j.dump(2) + "\n";
}

void write_battery_json(const std::filesystem::path& path, const nist::BatteryReport& report) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    f << battery_json(report);
}

std::vector<AggregatedRow> aggregate_reports(const std::vector<nist::BatteryReport>& reports) {
    std::vector<AggregatedRow> rows;
    const auto& names = nist::battery_row_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        AggregatedRow row;
        row.test_name = names[i];
        double sum = 0.0;
        for (const auto& rep : reports) {
            const auto& r = rep.results[i];
            if (!r.applicable) continue;
            row.applicable_count++;
            row.pass_count += r.passed ? 1 : 0;
            sum += r.p_value;
        }
        row.mean_p = row.applicable_count ? sum / row.applicable_count : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregatedRow>& rows, int runs) {
    out << "test_name,p_value,result,pass_rate\n";
    for (const auto& row : rows) {
        const bool pass = row.applicable_count > 0 && row.pass_count == row.applicable_count;
        out << csv_quote(row.test_name) << ','
            << (row.applicable_count ? format_p(row.mean_p) : "") << ','
            << (row.applicable_count == 0 ? "N/A" : (pass ? "Pass" : "Fail")) << ','
            << row.pass_count << '/' << runs << '\n';
    }
}

} // namespace adrng
