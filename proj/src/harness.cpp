#include "adrng/harness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "adrng/digitizer.hpp"
#include "adrng/errors.hpp"
#include "adrng/parallel.hpp"
#include "adrng/report.hpp"
#include "adrng/rng.hpp"

namespace adrng {

namespace {
constexpr std::uint64_t kCalibrationStream = 0xCA11B;
constexpr std::uint64_t kSweepSeedStream = 0x5EED0;
constexpr std::uint64_t kRepeatStream = 0x6000;
} // namespace

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::Vdd: return "vdd";
        case SweepParameter::G0: return "g0";
        case SweepParameter::Tmr: return "tmr";
    }
    return "?";
}

std::optional<SweepParameter> sweep_parameter_from_string(const std::string& name) {
    if (name == "vdd") return SweepParameter::Vdd;
    if (name == "g0") return SweepParameter::G0;
    if (name == "tmr") return SweepParameter::Tmr;
    return std::nullopt;
}

SweepSpec SweepSpec::defaults_for(SweepParameter p, const RunConfig& base) {
    SweepSpec spec;
    spec.parameter = p;
    spec.seed_base = base.seed;
    switch (p) {
        case SweepParameter::Vdd:
            spec.nominal = base.source.vdd;
            spec.step_up = spec.step_down = 0.5;
            break;
        case SweepParameter::G0:
            spec.nominal = base.source.g0;
            spec.step_up = spec.step_down = 0.1 * base.source.g0;
            break;
        case SweepParameter::Tmr:
            spec.nominal = base.source.tmr;
            spec.step_up = spec.step_down = 0.1 * base.source.tmr;
            break;
    }
    return spec;
}

RunConfig with_parameter(const RunConfig& base, SweepParameter p, double value) {
    RunConfig c = base;
    switch (p) {
        case SweepParameter::Vdd: c.source.vdd = value; break;
        case SweepParameter::G0: c.source.g0 = value; break;
        case SweepParameter::Tmr: c.source.tmr = value; break;
    }
    return c;
}

namespace {
bool parameter_value_valid(SweepParameter p, double value) {
    switch (p) {
        case SweepParameter::Vdd: return value > 0.0;
        case SweepParameter::G0: return value > 0.0;
        case SweepParameter::Tmr: return value >= 0.0;
    }
    return false;
}
} // namespace

PointEvaluator make_pipeline_evaluator(const RunConfig& base, const SweepSpec& spec, int jobs) {
    return [base, spec, jobs](double value) {
        PointOutcome out;
        out.value = value;
        if (!parameter_value_valid(spec.parameter, value)) {
            out.valid = false;
            return out;
        }
        const int seeds = spec.seeds_per_point;
        out.reports.resize(static_cast<std::size_t>(seeds));
        out.ones_fractions.resize(static_cast<std::size_t>(seeds));
        std::vector<int> ok(static_cast<std::size_t>(seeds), 0);
        parallel_for_index(static_cast<std::size_t>(seeds), jobs, [&](std::size_t s) {
            RunConfig cfg = with_parameter(base, spec.parameter, value);
            cfg.seed = derive_seed(spec.seed_base, kSweepSeedStream + s);
            try {
                PipelineResult res = run_pipeline(cfg, spec.bits_per_point);
                out.ones_fractions[s] = ones_fraction(res.raw);
                out.reports[s] = nist::run_battery(res.output);
                ok[s] = out.reports[s].all_passed ? 1 : 0;
            } catch (const ConfigError&) {
                ok[s] = 0; // unworkable configuration at this point
            }
        });
        out.passed = std::all_of(ok.begin(), ok.end(), [](int v) { return v == 1; });
        return out;
    };
}

ResilienceRange find_resilience_range(const SweepSpec& spec, const PointEvaluator& eval) {
    ResilienceRange range;
    range.nominal = spec.nominal;

    PointOutcome nominal = eval(spec.nominal);
    range.points.push_back(nominal);
    range.nominal_passed = nominal.valid && nominal.passed;
    if (!range.nominal_passed) return range; // empty range, diagnostic points kept

    range.lower = range.upper = spec.nominal;
    range.saturated_high = true;
    for (int k = 1; k <= spec.max_steps; ++k) {
        PointOutcome pt = eval(spec.nominal + k * spec.step_up);
        if (!pt.valid) { range.saturated_high = false; break; }
        range.points.push_back(pt);
        if (!pt.passed) { range.saturated_high = false; break; }
        range.upper = pt.value;
    }
    range.saturated_low = true;
    for (int k = 1; k <= spec.max_steps; ++k) {
        PointOutcome pt = eval(spec.nominal - k * spec.step_down);
        if (!pt.valid) { range.saturated_low = false; break; }
        range.points.push_back(pt);
        if (!pt.passed) { range.saturated_low = false; break; }
        range.lower = pt.value;
    }
    std::sort(range.points.begin(), range.points.end(),
              [](const PointOutcome& a, const PointOutcome& b) { return a.value < b.value; });
    return range;
}

double calibrate_fixed_reference(const RunConfig& base, std::size_t calib_bits) {
    RunConfig cal = base;
    cal.digitizer.mode = ReferenceMode::Fixed;
    cal.seed = derive_seed(base.seed, kCalibrationStream);
    double lo = 0.0, hi = base.source.vdd;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        cal.digitizer.v_ref_fixed = mid;
        const double f = ones_fraction(generate_raw(cal, calib_bits));
        if (f >= 0.499 && f <= 0.501) return mid;
        if (f > 0.5) lo = mid; // reference too low
        else hi = mid;
    }
    throw ConfigError("fixed-reference calibration did not settle within 60 bisection steps");
}

ComparisonReport compare_fixed_vs_adaptive(const SweepSpec& spec, const RunConfig& base, int jobs) {
    ComparisonReport rep;
    rep.parameter = spec.parameter;

    RunConfig adaptive = base;
    adaptive.digitizer.mode = ReferenceMode::Adaptive;

    RunConfig fixed = base;
    fixed.digitizer.mode = ReferenceMode::Fixed;
    rep.fixed_v_ref = calibrate_fixed_reference(base);
    fixed.digitizer.v_ref_fixed = rep.fixed_v_ref;

    rep.adaptive_range = find_resilience_range(spec, make_pipeline_evaluator(adaptive, spec, jobs));
    rep.fixed_range = find_resilience_range(spec, make_pipeline_evaluator(fixed, spec, jobs));

    if (rep.fixed_range.nominal_passed && rep.fixed_range.width() > 0.0)
        rep.enhancement = (rep.adaptive_range.width() - rep.fixed_range.width()) / rep.fixed_range.width();
    return rep;
}

RepeatedRunStudy repeated_run_study(const RunConfig& config, int runs, std::size_t bits, int jobs) {
    if (runs < 1) throw ConfigError("repeated_run_study requires runs >= 1");
    RepeatedRunStudy study;
    study.runs = runs;
    study.reports.resize(static_cast<std::size_t>(runs));
    parallel_for_index(static_cast<std::size_t>(runs), jobs, [&](std::size_t i) {
        RunConfig cfg = config;
        cfg.seed = derive_seed(config.seed, kRepeatStream + i);
        PipelineResult res = run_pipeline(cfg, bits);
        study.reports[i] = nist::run_battery(res.output);
    });
    return study;
}

void emit_bitmap(std::ostream& out, const BitStream& bits, int width) {
    if (width <= 0) throw std::invalid_argument("bitmap width must be positive");
    const std::size_t height = bits.size() / static_cast<std::size_t>(width);
    if (height == 0) throw std::invalid_argument("not enough bits for one bitmap row");
    out << "P1\n" << width << ' ' << height << '\n';
    for (std::size_t r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (c) out << ' ';
            out << (bits[r * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] ? '1' : '0');
        }
        out << '\n';
    }
}

BitStream parse_p1(std::istream& in, int& width, int& height) {
    std::string magic;
    in >> magic;
    if (magic != "P1") throw FormatError("not a P1 bitmap");
    in >> width >> height;
    if (!in || width <= 0 || height <= 0) throw FormatError("bad P1 header");
    BitStream bits;
    for (long i = 0; i < static_cast<long>(width) * height; ++i) {
        int v;
        in >> v;
        if (!in || (v != 0 && v != 1)) throw FormatError("bad P1 pixel");
        bits.push_back(v == 1);
    }
    return bits;
}

std::vector<BiasPoint> bias_curve(SweepParameter p, const std::vector<double>& values,
                                  const RunConfig& base, std::size_t bits, int jobs) {
    std::vector<BiasPoint> out(values.size());
    parallel_for_index(values.size(), jobs, [&](std::size_t i) {
        RunConfig cfg = with_parameter(base, p, values[i]);
        out[i].value = values[i];
        out[i].ones_fraction = ones_fraction(generate_raw(cfg, bits));
    });
    return out;
}

void write_range_csv(std::ostream& out, const ResilienceRange& range) {
    out << "parameter_value,seed,row_name,p_value,pass\n";
    for (const auto& pt : range.points) {
        for (std::size_t s = 0; s < pt.reports.size(); ++s) {
            for (const auto& row : pt.reports[s].results) {
                out << pt.value << ',' << s << ',' << csv_quote(row.test_name) << ',';
                if (row.applicable) out << format_p(row.p_value);
                out << ',' << (row.applicable ? (row.passed ? "1" : "0") : "-") << '\n';
            }
        }
    }
}

namespace {
nlohmann::json range_json(const ResilienceRange& r) {
    nlohmann::json j;
    j["nominal"] = r.nominal;
    j["nominal_passed"] = r.nominal_passed;
    if (r.nominal_passed) {
        j["lower"] = r.lower;
        j["upper"] = r.upper;
        j["width"] = r.width();
    } else {
        j["lower"] = nullptr;
        j["upper"] = nullptr;
        j["width"] = 0.0;
    }
    j["saturated_low"] = r.saturated_low;
    j["saturated_high"] = r.saturated_high;
    j["points"] = nlohmann::json::array();
    for (const auto& pt : r.points) {
        nlohmann::json pj;
        pj["value"] = pt.value;
        pj["passed"] = pt.passed;
        pj["ones_fractions"] = pt.ones_fractions;
        j["points"].push_back(pj);
    }
    return j;
}
} // namespace

std::string comparison_summary_json(const ComparisonReport& report) {
    nlohmann::json j;
    j["parameter"] = to_string(report.parameter);
    j["fixed_v_ref"] = report.fixed_v_ref;
    j["fixed"] = range_json(report.fixed_range);
    j["adaptive"] = range_json(report.adaptive_range);
    if (report.enhancement) j["enhancement"] = *report.enhancement;
    else j["enhancement"] = nullptr;
    return j.dump(2) + "\n";
}

} // namespace adrng
