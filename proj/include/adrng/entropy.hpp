#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "adrng/bitstream.hpp"
#include "adrng/rng.hpp"

namespace adrng {

/// Stochastic magnetization state mz(t) in [-1, 1].
///
/// Hold/redraw model: every step of dt the value is redrawn uniformly on
/// [-1, 1) with probability 1 - exp(-dt/tau_c), otherwise held. This gives a
/// uniform stationary marginal and an exactly exponential autocorrelation
/// exp(-t/tau_c), both of which the tests check empirically.
class MagnetizationProcess {
public:
    MagnetizationProcess(double tau_c, double dt, std::uint64_t seed);

    /// Advance by dt and return the new mz.
    double step();

    double current() const { return mz_; }
    double tau_c() const { return tau_c_; }
    double dt() const { return dt_; }

private:
    double tau_c_;
    double dt_;
    double redraw_prob_;
    double mz_;
    Rng rng_;
};

/// sMTJ device: average conductance g0 and TMR ratio.
struct SmtjDevice {
    double g0;  // siemens
    double tmr; // (r_ap - r_p) / r_p, >= 0

    double r_p() const { return (2.0 + tmr) / (2.0 * g0 * (1.0 + tmr)); }
    double r_ap() const { return (2.0 + tmr) / (2.0 * g0); }

    static SmtjDevice from_resistances(double r_p, double r_ap);
};

/// TMR = (R_AP - R_P) / R_P. Requires r_p > 0 and r_ap >= r_p.
double tmr_from_resistances(double r_p, double r_ap);

/// G(mz) = g0 * (1 + mz * tmr / (2 + tmr)). Requires mz in [-1, 1].
double conductance(const SmtjDevice& dev, double mz);

/// Fibonacci LFSR with a DAC word width, used as the pseudo-random source.
/// Tap positions are 1-based; the output bit is bit 1 and the feedback (xor
/// of the tapped bits) enters at bit `width`.
class LfsrSource {
public:
    LfsrSource(unsigned width, std::vector<unsigned> taps, std::uint64_t state,
               unsigned dac_bits, double vdd);

    int next_bit(); // throws StateError on the absorbing all-zero state

    /// Next dac_bits-wide word, first bit most significant.
    std::uint64_t next_word();

    unsigned width() const { return width_; }
    unsigned dac_bits() const { return dac_bits_; }
    double vdd() const { return vdd_; }
    std::uint64_t state() const { return state_; }

private:
    unsigned width_;
    std::vector<unsigned> taps_;
    std::uint64_t state_;
    unsigned dac_bits_;
    double vdd_;
};

/// A sampled analog voltage waveform.
struct AnalogTrace {
    Eigen::VectorXd samples; // volts
    double dt = 0.0;         // seconds per sample
    double vdd = 0.0;        // volts
};

/// Streaming producer of V_stochastic samples; lets long pipelines run
/// without materializing the waveform.
class SignalSource {
public:
    virtual ~SignalSource() = default;
    virtual double next_sample() = 0;
    virtual double dt() const = 0;
    virtual double vdd() const = 0;
    /// Decorrelation timescale of the generated signal (tau_c for the sMTJ,
    /// one word period for the LFSR+DAC path); used by the Eq.-style
    /// digitizer validity check.
    virtual double correlation_time() const = 0;
};

/// sMTJ in series with r_series across vdd, output taken over r_series:
/// V = vdd * r_series*G / (1 + r_series*G).
class SmtjSignal : public SignalSource {
public:
    SmtjSignal(const SmtjDevice& dev, double vdd, double r_series,
               double tau_c, double dt, std::uint64_t seed);

    double next_sample() override;
    double dt() const override { return proc_.dt(); }
    double vdd() const override { return vdd_; }
    double correlation_time() const override { return proc_.tau_c(); }

private:
    MagnetizationProcess proc_;
    SmtjDevice dev_;
    double vdd_;
    double r_series_;
};

/// LFSR word stream through an ideal DAC: V = vdd * word / (2^dac_bits - 1).
class LfsrDacSignal : public SignalSource {
public:
    LfsrDacSignal(LfsrSource lfsr, double dt);

    double next_sample() override;
    double dt() const override { return dt_; }
    double vdd() const override { return lfsr_.vdd(); }
    double correlation_time() const override { return dt_; }

private:
    LfsrSource lfsr_;
    double dt_;
    double scale_;
};

AnalogTrace take_trace(SignalSource& src, std::size_t n);

/// Materialized sMTJ divider trace of n samples (deterministic in the seed).
AnalogTrace smtj_trace(MagnetizationProcess& proc, const SmtjDevice& dev,
                       double vdd, double r_series, std::size_t n);

/// Materialized LFSR+DAC trace of n samples, one word per sample.
AnalogTrace lfsr_dac_trace(LfsrSource& src, std::size_t n, double dt);

/// CSV export, columns index,time_s,volts.
void write_trace_csv(const std::filesystem::path& path, const AnalogTrace& trace);
/// Raw binary export, little-endian float64 samples.
void write_trace_f64(const std::filesystem::path& path, const AnalogTrace& trace);

} // namespace adrng
