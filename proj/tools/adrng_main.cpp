#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "adrng/config.hpp"
#include "adrng/errors.hpp"
#include "adrng/harness.hpp"
#include "adrng/nist.hpp"
#include "adrng/pipeline.hpp"
#include "adrng/report.hpp"

namespace fs = std::filesystem;
using namespace adrng;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBatteryFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFormat = 3;

fs::path output_dir(const std::string& flag_dir, const FileConfig& fc) {
    if (!flag_dir.empty()) return flag_dir;
    if (!fc.output_dir.empty()) return fc.output_dir;
    if (const char* env = std::getenv("ADRNG_OUT")) return env;
    return ".";
}

FileConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_flag) {
    FileConfig fc = path.empty() ? FileConfig{RunConfig::smtj_defaults(), ""}
                                 : parse_config_file(path);
    if (seed_flag) fc.run.seed = *seed_flag;
    fc.run.validate();
    return fc;
}

int cmd_generate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::size_t bits, const std::string& out_path, const std::string& ascii_path,
                 const std::string& trace_path, std::size_t trace_samples) {
    FileConfig fc = load_config(config_path, seed);
    const auto t0 = std::chrono::steady_clock::now();
    PipelineResult res = run_pipeline(fc.run, bits);
    const auto t1 = std::chrono::steady_clock::now();

    write_bits1(out_path, res.output);
    if (!ascii_path.empty()) write_ascii_bits(ascii_path, res.output);
    if (!trace_path.empty()) {
        auto src = make_signal(fc.run);
        write_trace_csv(trace_path, take_trace(*src, trace_samples));
    }

    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cout << "bits: " << res.output.size() << "\n"
              << "ones_fraction(output): " << ones_fraction(res.output) << "\n"
              << "ones_fraction(raw): " << ones_fraction(res.raw) << "\n"
              << "throughput: " << static_cast<double>(res.output.size()) / secs << " bit/s\n";
    return kExitPass;
}

int cmd_test(const std::string& in_path, const std::string& csv_path,
             const std::string& json_path) {
    BitStream bits = read_stream_file(in_path);
    if (bits.empty()) throw FormatError("empty stream");
    nist::BatteryReport rep = nist::run_battery(bits);
    if (rep.short_stream_warning)
        std::cerr << "warning: stream shorter than the recommended 1e6 bits\n";
    if (!csv_path.empty()) write_battery_csv(csv_path, rep);
    if (!json_path.empty()) write_battery_json(json_path, rep);
    write_battery_csv(std::cout, rep);
    std::cout << (rep.all_passed ? "ALL PASS" : "FAIL") << "\n";
    return rep.all_passed ? kExitPass : kExitBatteryFail;
}

SweepSpec build_spec(SweepParameter param, const RunConfig& base, int steps, int seeds,
                     std::size_t bits) {
    SweepSpec spec = SweepSpec::defaults_for(param, base);
    if (steps > 0) spec.max_steps = steps;
    if (seeds > 0) spec.seeds_per_point = seeds;
    if (bits > 0) spec.bits_per_point = bits;
    return spec;
}

void write_comparison_artifacts(const fs::path& dir, const ComparisonReport& rep) {
    fs::create_directories(dir);
    const std::string tag = to_string(rep.parameter);
    {
        std::ofstream f(dir / (tag + "_fixed.csv"));
        write_range_csv(f, rep.fixed_range);
    }
    {
        std::ofstream f(dir / (tag + "_adaptive.csv"));
        write_range_csv(f, rep.adaptive_range);
    }
    {
        std::ofstream f(dir / (tag + "_summary.json"));
        f << comparison_summary_json(rep);
    }
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& param_name, const std::string& flag_dir, int steps, int seeds,
              std::size_t bits, int jobs) {
    auto param = sweep_parameter_from_string(param_name);
    if (!param) throw ConfigError("unknown sweep parameter '" + param_name + "' (vdd, g0, tmr)");
    FileConfig fc = load_config(config_path, seed);
    SweepSpec spec = build_spec(*param, fc.run, steps, seeds, bits);
    ComparisonReport rep = compare_fixed_vs_adaptive(spec, fc.run, jobs);
    write_comparison_artifacts(output_dir(flag_dir, fc), rep);
    std::cout << to_string(*param) << ": adaptive width " << rep.adaptive_range.width()
              << ", fixed width " << rep.fixed_range.width() << "\n";
    return kExitPass;
}

int cmd_compare(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& flag_dir, int steps, int seeds, std::size_t bits, int jobs) {
    FileConfig fc = load_config(config_path, seed);
    const fs::path dir = output_dir(flag_dir, fc);
    for (SweepParameter p : {SweepParameter::Vdd, SweepParameter::G0, SweepParameter::Tmr}) {
        SweepSpec spec = build_spec(p, fc.run, steps, seeds, bits);
        ComparisonReport rep = compare_fixed_vs_adaptive(spec, fc.run, jobs);
        write_comparison_artifacts(dir, rep);
        std::cout << to_string(p) << ": adaptive width " << rep.adaptive_range.width()
                  << ", fixed width " << rep.fixed_range.width() << "\n";
    }
    return kExitPass;
}

int cmd_repeat(const std::string& config_path, std::optional<std::uint64_t> seed, int runs,
               std::size_t bits, const std::string& flag_dir, int jobs) {
    FileConfig fc = load_config(config_path, seed);
    RepeatedRunStudy study = repeated_run_study(fc.run, runs, bits, jobs);
    auto rows = aggregate_reports(study.reports);
    const fs::path dir = output_dir(flag_dir, fc);
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "repeat.csv");
        write_aggregate_csv(f, rows, study.runs);
    }
    write_aggregate_csv(std::cout, rows, study.runs);
    return kExitPass;
}

int cmd_bitmap(const std::string& in_path, int width, const std::string& out_path) {
    if (width <= 0) throw ConfigError("bitmap width must be positive");
    BitStream bits = read_stream_file(in_path);
    std::ofstream f(out_path);
    if (!f) throw FormatError("cannot open for writing: " + out_path);
    emit_bitmap(f, bits, width);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive RNG simulator and randomness certification toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, ascii_path, trace_path, in_path, param_name, dir;
    std::optional<std::uint64_t> seed;
    std::size_t bits = std::size_t(1) << 21;
    std::size_t trace_samples = 0;
    int width = 256, runs = 10, steps = 0, seeds = 0, jobs = 1;

    auto* gen = app.add_subcommand("generate", "generate a random bit stream");
    gen->add_option("--config", config_path, "config file");
    gen->add_option("--seed", seed, "override the experiment seed");
    gen->add_option("--bits", bits, "number of output bits");
    gen->add_option("--out", out_path, "BITS1 output file")->required();
    gen->add_option("--ascii-out", ascii_path, "optional ASCII 0/1 output file");
    gen->add_option("--trace-out", trace_path, "optional analog trace CSV");
    gen->add_option("--trace-samples", trace_samples, "trace samples to export");

    auto* tst = app.add_subcommand("test", "run the statistical battery on a stream file");
    tst->add_option("--in", in_path, "stream file (BITS1 or ASCII)")->required();
    tst->add_option("--csv", out_path, "write report CSV here");
    tst->add_option("--json", ascii_path, "write report JSON here");

    auto* swp = app.add_subcommand("sweep", "fixed-vs-adaptive resilience sweep of one parameter");
    swp->add_option("--config", config_path, "config file");
    swp->add_option("--seed", seed, "override the experiment seed");
    swp->add_option("--param", param_name, "vdd, g0 or tmr")->required();
    swp->add_option("--out", dir, "output directory");
    swp->add_option("--steps", steps, "max steps per direction");
    swp->add_option("--seeds", seeds, "seeds per point");
    swp->add_option("--bits", bits, "bits per point");
    swp->add_option("--jobs", jobs, "parallel jobs");

    auto* cmp = app.add_subcommand("compare", "resilience sweeps of vdd, g0 and tmr");
    cmp->add_option("--config", config_path, "config file");
    cmp->add_option("--seed", seed, "override the experiment seed");
    cmp->add_option("--out", dir, "output directory");
    cmp->add_option("--steps", steps, "max steps per direction");
    cmp->add_option("--seeds", seeds, "seeds per point");
    cmp->add_option("--bits", bits, "bits per point");
    cmp->add_option("--jobs", jobs, "parallel jobs");

    auto* rpt = app.add_subcommand("repeat", "repeated independent runs, pass-rate table");
    rpt->add_option("--config", config_path, "config file");
    rpt->add_option("--seed", seed, "override the experiment seed");
    rpt->add_option("--runs", runs, "number of runs");
    rpt->add_option("--bits", bits, "bits per run");
    rpt->add_option("--out", dir, "output directory");
    rpt->add_option("--jobs", jobs, "parallel jobs");

    auto* bmp = app.add_subcommand("bitmap", "render a stream as a P1 portable bitmap");
    bmp->add_option("--in", in_path, "stream file")->required();
    bmp->add_option("--width", width, "pixels per row");
    bmp->add_option("--out", out_path, "output .pbm path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (gen->parsed())
            return cmd_generate(config_path, seed, bits, out_path, ascii_path, trace_path, trace_samples);
        if (tst->parsed()) return cmd_test(in_path, out_path, ascii_path);
        if (swp->parsed())
            return cmd_sweep(config_path, seed, param_name, dir, steps, seeds, bits, jobs);
        if (cmp->parsed()) return cmd_compare(config_path, seed, dir, steps, seeds, bits, jobs);
        if (rpt->parsed()) return cmd_repeat(config_path, seed, runs, bits, dir, jobs);
        if (bmp->parsed()) return cmd_bitmap(in_path, width, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
