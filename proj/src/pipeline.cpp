#include "adrng/pipeline.hpp"

#include "adrng/errors.hpp"
#include "adrng/rng.hpp"

namespace adrng {

namespace {
// fixed substream ids so reruns are reproducible
constexpr std::uint64_t kSmtjStream = 0x01;
constexpr std::uint64_t kLfsrStream = 0x02;
} // namespace

RunConfig RunConfig::smtj_defaults() {
    RunConfig c;
    c.source.kind = SourceKind::Smtj;
    c.cipher = PostProcessor::Trivium;
    return c;
}

RunConfig RunConfig::lfsr_defaults() {
    RunConfig c;
    c.source.kind = SourceKind::Lfsr;
    c.cipher = PostProcessor::Mini;
    return c;
}

DigitizerConfig RunConfig::resolved_digitizer() const {
    DigitizerConfig d;
    d.mode = digitizer.mode;
    d.v_ref_fixed = digitizer.v_ref_fixed;
    d.source_tau_c = source.correlation_time();
    d.tau_lpf = digitizer.tau_lpf > 0.0 ? digitizer.tau_lpf : 100.0 * d.source_tau_c;
    if (digitizer.sample_interval > 0.0) {
        d.sample_interval = digitizer.sample_interval;
    } else {
        d.sample_interval =
            source.kind == SourceKind::Smtj ? 5.0 * source.tau_c : source.lfsr.dt;
    }
    if (digitizer.warmup > 0.0) d.warmup = digitizer.warmup;
    else d.warmup = d.mode == ReferenceMode::Adaptive ? 5.0 * d.tau_lpf : 0.0;
    return d;
}

void RunConfig::validate() const {
    if (!(source.vdd > 0.0)) throw ConfigError("vdd must be positive");
    if (source.kind == SourceKind::Smtj) {
        if (!(source.g0 > 0.0)) throw ConfigError("g0 must be positive");
        if (!(source.tmr >= 0.0)) throw ConfigError("tmr must be non-negative");
        if (!(source.tau_c > 0.0)) throw ConfigError("tau_c must be positive");
        if (!(source.dt > 0.0)) throw ConfigError("dt must be positive");
        if (source.dt > source.tau_c / 10.0 * (1.0 + 1e-12))
            throw ConfigError("dt must not exceed tau_c/10");
        if (!(source.r_series > 0.0)) throw ConfigError("r_series must be positive");
    } else {
        if (source.lfsr.width == 0 || source.lfsr.width > 63)
            throw ConfigError("lfsr.width must be in 1..63");
        if (source.lfsr.dac_bits == 0 || source.lfsr.dac_bits > source.lfsr.width)
            throw ConfigError("lfsr.dac_bits must be in 1..lfsr.width");
        if (!(source.lfsr.dt > 0.0)) throw ConfigError("lfsr.dt must be positive");
    }
    resolved_digitizer().validate(source.sample_dt()); // Eq.-(5)-style checks
}

std::unique_ptr<SignalSource> make_signal(const RunConfig& config) {
    if (config.source.kind == SourceKind::Smtj) {
        SmtjDevice dev{config.source.g0, config.source.tmr};
        return std::make_unique<SmtjSignal>(dev, config.source.vdd, config.source.r_series,
                                            config.source.tau_c, config.source.dt,
                                            derive_seed(config.seed, kSmtjStream));
    }
    const std::uint64_t mask = (std::uint64_t(1) << config.source.lfsr.width) - 1;
    std::uint64_t state = derive_seed(config.seed, kLfsrStream) & mask;
    if (state == 0) state = 1;
    LfsrSource lfsr(config.source.lfsr.width, config.source.lfsr.taps, state,
                    config.source.lfsr.dac_bits, config.source.vdd);
    return std::make_unique<LfsrDacSignal>(std::move(lfsr), config.source.lfsr.dt);
}

BitStream generate_raw(const RunConfig& config, std::size_t nbits) {
    config.validate();
    auto src = make_signal(config);
    return digitize(*src, nbits, config.resolved_digitizer());
}

PipelineResult run_pipeline(const RunConfig& config, std::size_t out_bits) {
    PipelineResult res;
    res.raw = generate_raw(config, out_bits + postprocess_seed_bits(config.cipher));
    res.output = postprocess(res.raw, config.cipher);
    return res;
}

} // namespace adrng
