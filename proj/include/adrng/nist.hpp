#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "adrng/bitstream.hpp"

namespace adrng::nist {

/// Outcome of one battery row. Rows that compute several P-values (template
/// tests, Serial, the excursion tests) report a Bonferroni-combined row
/// P-value, min(1, k * min p_i); the row passes when that combined value is
/// at least alpha. This keeps the per-row false-reject rate at alpha
/// regardless of how many sub-statistics the row aggregates. The raw
/// sub-P-values are kept alongside.
struct TestResult {
    std::string test_name;
    std::vector<double> p_values; // raw sub-test P-values
    double p_value = 0.0;         // row-level (combined) P-value
    bool applicable = false;
    bool passed = false;
};

struct BatteryParams {
    int block_freq_m = 128;
    int template_m = 9;
    int overlap_m = 9;
    int linear_complexity_m = 500;
    int serial_m = 16;
    int apen_m = 10;
    int universal_l = 0; // 0 = choose from the stream length
    int universal_q = 0;
    double alpha = 0.01;

    static BatteryParams recommended(); // the NIST defaults for n ~ 1e6+
};

struct BatteryReport {
    std::vector<TestResult> results; // 16 rows, fixed order and naming
    bool all_passed = false;         // every applicable row passed
    std::size_t bit_count = 0;
    bool short_stream_warning = false; // bit_count below the recommended 1e6
};

/// Row names in battery order.
const std::vector<std::string>& battery_row_names();

TestResult test_frequency(const BitStream& bits, double alpha = 0.01);
TestResult test_block_frequency(const BitStream& bits, int M, double alpha = 0.01);
TestResult test_runs(const BitStream& bits, double alpha = 0.01);
TestResult test_longest_run(const BitStream& bits, double alpha = 0.01);
TestResult test_matrix_rank(const BitStream& bits, double alpha = 0.01);
TestResult test_dft(const BitStream& bits, double alpha = 0.01);
TestResult test_nonoverlapping_template(const BitStream& bits, int m, double alpha = 0.01);
TestResult test_overlapping_template(const BitStream& bits, int m, double alpha = 0.01);
TestResult test_universal(const BitStream& bits, int L = 0, int Q = 0, double alpha = 0.01);
TestResult test_linear_complexity(const BitStream& bits, int M, double alpha = 0.01);
TestResult test_serial(const BitStream& bits, int m, double alpha = 0.01);
TestResult test_apen(const BitStream& bits, int m, double alpha = 0.01);

enum class CusumMode { Forward, Reverse };
TestResult test_cusum(const BitStream& bits, CusumMode mode, double alpha = 0.01);

TestResult test_random_excursions(const BitStream& bits, double alpha = 0.01);
TestResult test_random_excursions_variant(const BitStream& bits, double alpha = 0.01);

/// Runs the full 16-row battery. Inapplicable rows (stream below the row's
/// documented minimum, or too few excursion cycles) are reported but do not
/// count against all_passed. Throws std::invalid_argument on an empty
/// stream.
BatteryReport run_battery(const BitStream& bits, const BatteryParams& params = BatteryParams::recommended());

/// Unbordered (aperiodic) templates of length m, ascending value, first bit
/// most significant. 148 entries for m = 9.
std::vector<std::uint32_t> aperiodic_templates(int m);

/// Maurer table: expected value and variance for block length L (6..16).
void universal_constants(int L, double& expected_value, double& variance);

/// (L, Q) operating point for a given stream length, per the NIST table.
void universal_plan(std::size_t n, int& L, int& Q);

} // namespace adrng::nist
