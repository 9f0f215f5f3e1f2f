#pragma once

#include <cstdint>
#include <memory>

#include "adrng/cipher.hpp"
#include "adrng/digitizer.hpp"
#include "adrng/entropy.hpp"

namespace adrng {

enum class SourceKind { Smtj, Lfsr };

struct LfsrParams {
    unsigned width = 16;
    std::vector<unsigned> taps = {16, 14, 13, 11};
    unsigned dac_bits = 8;
    double dt = 1e-6; // seconds per DAC word
};

struct SourceConfig {
    SourceKind kind = SourceKind::Smtj;
    double vdd = 5.0;       // volts
    double g0 = 1e-3;       // siemens
    double tmr = 2.0;
    double tau_c = 100e-9;  // seconds
    double dt = 10e-9;      // seconds per sample (tau_c/10)
    double r_series = 50.0; // ohms (0.05/g0); keeps the divider in its
                            // near-linear region so the signal marginal
                            // stays symmetric
    LfsrParams lfsr;

    /// Decorrelation timescale of the generated signal.
    double correlation_time() const { return kind == SourceKind::Smtj ? tau_c : lfsr.dt; }
    double sample_dt() const { return kind == SourceKind::Smtj ? dt : lfsr.dt; }
};

struct DigitizerSettings {
    ReferenceMode mode = ReferenceMode::Adaptive;
    double tau_lpf = 0.0;         // 0 = 100 * correlation time
    double sample_interval = 0.0; // 0 = 5 * tau_c (sMTJ) or one word (LFSR)
    double warmup = 0.0;          // 0 = 5 * tau_lpf
    double v_ref_fixed = 0.0;     // volts, fixed mode
};

/// Full run configuration: entropy source, digitizer, post-processing and
/// the experiment seed. Everything downstream is a pure function of this.
struct RunConfig {
    SourceConfig source;
    DigitizerSettings digitizer;
    PostProcessor cipher = PostProcessor::Trivium;
    std::uint64_t seed = 1;

    static RunConfig smtj_defaults();
    static RunConfig lfsr_defaults();

    /// Digitizer config with derived defaults filled in.
    DigitizerConfig resolved_digitizer() const;

    /// Cross-field validation; throws ConfigError with field names.
    void validate() const;
};

/// Entropy source for the run; per-run substreams are derived from the seed.
std::unique_ptr<SignalSource> make_signal(const RunConfig& config);

/// Digitizer output (the raw bit stream, before post-processing).
BitStream generate_raw(const RunConfig& config, std::size_t nbits);

struct PipelineResult {
    BitStream raw;    // digitizer output
    BitStream output; // after post-processing
};

/// Runs source -> digitizer -> cipher, sizing the raw stream so that the
/// output has exactly out_bits bits.
PipelineResult run_pipeline(const RunConfig& config, std::size_t out_bits);

} // namespace adrng
