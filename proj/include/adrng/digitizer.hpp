#pragma once

#include <cstddef>

#include "adrng/bitstream.hpp"
#include "adrng/entropy.hpp"

namespace adrng {

/// One-pole RC low-pass filter with the exact exponential update
/// state += (1 - exp(-dt/tau)) * (v_in - state), stable for any dt.
class LowPassFilter {
public:
    explicit LowPassFilter(double tau_lpf, double initial_state = 0.0);

    double step(double v_in, double dt);

    double state() const { return state_; }
    double tau() const { return tau_; }

private:
    double tau_;
    double state_;
    // the blend factor depends only on dt; cached for constant-rate input
    double cached_dt_ = -1.0;
    double cached_alpha_ = 0.0;
};

/// f_LPF = 1 / (2 pi tau). Requires tau > 0.
double cutoff_frequency(double tau_lpf);

/// Ideal comparator; ties resolve to 0.
inline int compare(double v_in, double v_ref) { return v_in > v_ref ? 1 : 0; }

enum class ReferenceMode { Fixed, Adaptive };

/// Digitizer settings. In adaptive mode the reference is the low-pass
/// filtered signal itself, and tau_lpf must exceed the source correlation
/// time (checked against source_tau_c, which the caller supplies from the
/// entropy model).
struct DigitizerConfig {
    ReferenceMode mode = ReferenceMode::Adaptive;
    double v_ref_fixed = 0.0;     // volts, fixed mode
    double tau_lpf = 0.0;         // seconds, adaptive mode
    double sample_interval = 0.0; // seconds between emitted bits
    double warmup = 0.0;          // seconds before the first emitted bit
    double source_tau_c = 0.0;    // seconds, required > 0 in adaptive mode

    /// Throws ConfigError when invalid for a trace sampled every trace_dt.
    void validate(double trace_dt) const;
};

/// Digitize a materialized trace. One comparator bit per sample_interval at
/// instants t = k*sample_interval with t >= warmup; trace.dt must divide
/// sample_interval. Deterministic.
BitStream digitize(const AnalogTrace& trace, const DigitizerConfig& cfg);

/// Streaming variant: pulls as many samples from src as needed to emit
/// nbits bits. Produces the same bits as the materialized form.
BitStream digitize(SignalSource& src, std::size_t nbits, const DigitizerConfig& cfg);

/// Fraction of ones; throws std::domain_error on an empty stream.
double ones_fraction(const BitStream& bits);

} // namespace adrng
