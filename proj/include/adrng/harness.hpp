#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adrng/nist.hpp"
#include "adrng/pipeline.hpp"

namespace adrng {

enum class SweepParameter { Vdd, G0, Tmr };

std::string to_string(SweepParameter p);
std::optional<SweepParameter> sweep_parameter_from_string(const std::string& name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Vdd;
    double nominal = 5.0;
    double step_up = 0.5;
    double step_down = 0.5;
    int max_steps = 6;
    std::size_t bits_per_point = std::size_t(1) << 21;
    int seeds_per_point = 3;
    std::uint64_t seed_base = 1;

    /// Nominal from the base config; V_DD steps 0.5 V, G0/TMR steps 10% of
    /// nominal.
    static SweepSpec defaults_for(SweepParameter p, const RunConfig& base);
};

struct PointOutcome {
    double value = 0.0;
    bool valid = true;  // false when the parameter value is unphysical
    bool passed = false; // all seeds passed every applicable row
    std::vector<nist::BatteryReport> reports; // one per seed
    std::vector<double> ones_fractions;       // digitizer output, one per seed
};

struct ResilienceRange {
    double nominal = 0.0;
    bool nominal_passed = false;
    double lower = 0.0; // meaningful only when nominal_passed
    double upper = 0.0;
    bool saturated_low = false; // still passing when max_steps ran out
    bool saturated_high = false;
    std::vector<PointOutcome> points; // ordered by parameter value

    bool empty() const { return !nominal_passed; }
    double width() const { return nominal_passed ? upper - lower : 0.0; }
};

/// Evaluates one sweep point; injectable so searches can be tested with
/// stub pipelines.
using PointEvaluator = std::function<PointOutcome(double value)>;

/// Nominal first, then upward steps until the first failing (or unphysical)
/// value, then the same downward. Every point inside the returned range was
/// visited and passed.
ResilienceRange find_resilience_range(const SweepSpec& spec, const PointEvaluator& eval);

/// Production evaluator: sets the swept parameter, runs seeds_per_point
/// pipelines (seeds derived from seed_base, identical across points and
/// arms), and tests each stream.
PointEvaluator make_pipeline_evaluator(const RunConfig& base, const SweepSpec& spec, int jobs = 1);

/// Applies a sweep parameter value to a config copy.
RunConfig with_parameter(const RunConfig& base, SweepParameter p, double value);

struct ComparisonReport {
    SweepParameter parameter = SweepParameter::Vdd;
    ResilienceRange fixed_range;
    ResilienceRange adaptive_range;
    double fixed_v_ref = 0.0;
    /// (adaptive width - fixed width) / fixed width; absent when the fixed
    /// width is zero.
    std::optional<double> enhancement;
};

/// Fixed reference calibrated at nominal by bisection until the digitizer
/// ones-fraction lands in [0.499, 0.501] on a million-bit calibration
/// stream. Throws ConfigError if bisection cannot settle.
double calibrate_fixed_reference(const RunConfig& base, std::size_t calib_bits = 1000000);

/// Runs the fixed-reference and adaptive sweeps side by side on shared
/// entropy settings and seeds.
ComparisonReport compare_fixed_vs_adaptive(const SweepSpec& spec, const RunConfig& base, int jobs = 1);

struct RepeatedRunStudy {
    std::vector<nist::BatteryReport> reports; // one per run
    int runs = 0;
};

/// `runs` independent seeded pipelines of `bits` output bits each.
RepeatedRunStudy repeated_run_study(const RunConfig& config, int runs, std::size_t bits, int jobs = 1);

/// Plain-text portable bitmap (P1); 1 = black, row-major,
/// height = floor(bits/width), trailing partial row discarded.
/// Throws std::invalid_argument when there are not enough bits for one row.
void emit_bitmap(std::ostream& out, const BitStream& bits, int width);

/// Minimal P1 reader (round-trip checks); returns row-major bits.
BitStream parse_p1(std::istream& in, int& width, int& height);

struct BiasPoint {
    double value = 0.0;
    double ones_fraction = 0.0;
};

/// Digitizer-output ones-fraction per parameter value (bias lives before
/// post-processing).
std::vector<BiasPoint> bias_curve(SweepParameter p, const std::vector<double>& values,
                                  const RunConfig& base, std::size_t bits, int jobs = 1);

/// Sweep artifacts: per-(point, seed, row) CSV and a summary JSON.
void write_range_csv(std::ostream& out, const ResilienceRange& range);
std::string comparison_summary_json(const ComparisonReport& report);

} // namespace adrng
