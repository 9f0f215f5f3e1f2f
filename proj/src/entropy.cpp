#include "adrng/entropy.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "adrng/errors.hpp"

namespace adrng {

MagnetizationProcess::MagnetizationProcess(double tau_c, double dt, std::uint64_t seed)
    : tau_c_(tau_c), dt_(dt), rng_(seed) {
    if (!(tau_c > 0.0)) throw ConfigError("tau_c must be positive");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (dt > tau_c / 10.0 * (1.0 + 1e-12))
        throw ConfigError("dt must not exceed tau_c/10 to resolve the hold process");
    redraw_prob_ = 1.0 - std::exp(-dt_ / tau_c_);
    mz_ = rng_.next_symmetric();
}

double MagnetizationProcess::step() {
    if (rng_.next_unit() < redraw_prob_) mz_ = rng_.next_symmetric();
    return mz_;
}

SmtjDevice SmtjDevice::from_resistances(double r_p, double r_ap) {
    double tmr = tmr_from_resistances(r_p, r_ap);
    double g0 = 0.5 * (1.0 / r_p + 1.0 / r_ap);
    return {g0, tmr};
}

double tmr_from_resistances(double r_p, double r_ap) {
    if (!(r_p > 0.0)) throw std::domain_error("r_p must be positive");
    if (!(r_ap >= r_p)) throw std::domain_error("r_ap must be >= r_p");
    return (r_ap - r_p) / r_p;
}

double conductance(const SmtjDevice& dev, double mz) {
    if (!(mz >= -1.0 && mz <= 1.0)) throw std::domain_error("mz must lie in [-1, 1]");
    return dev.g0 * (1.0 + mz * dev.tmr / (2.0 + dev.tmr));
}

LfsrSource::LfsrSource(unsigned width, std::vector<unsigned> taps, std::uint64_t state,
                       unsigned dac_bits, double vdd)
    : width_(width), taps_(std::move(taps)), state_(state), dac_bits_(dac_bits), vdd_(vdd) {
    if (width_ == 0 || width_ > 63) throw ConfigError("lfsr.width must be in 1..63");
    if (state_ == 0) throw ConfigError("lfsr state must be nonzero");
    if (state_ >> width_) throw ConfigError("lfsr state wider than register");
    if (taps_.empty()) throw ConfigError("lfsr.taps must not be empty");
    for (unsigned t : taps_)
        if (t == 0 || t > width_) throw ConfigError("lfsr tap position out of range");
    if (dac_bits_ == 0 || dac_bits_ > width_)
        throw ConfigError("lfsr.dac_bits must be in 1..lfsr.width");
}

int LfsrSource::next_bit() {
    if (state_ == 0) throw StateError("lfsr reached the absorbing all-zero state");
    int out = static_cast<int>(state_ & 1);
    // tap t contributes bit (width - t); taps {w, ...} give the recurrence
    // s_k = s_(k-w) ^ ... with the feedback entering at the top
    std::uint64_t fb = 0;
    for (unsigned t : taps_) fb ^= (state_ >> (width_ - t)) & 1;
    state_ = (state_ >> 1) | (fb << (width_ - 1));
    return out;
}

std::uint64_t LfsrSource::next_word() {
    std::uint64_t w = 0;
    for (unsigned i = 0; i < dac_bits_; ++i) w = (w << 1) | std::uint64_t(next_bit());
    return w;
}

SmtjSignal::SmtjSignal(const SmtjDevice& dev, double vdd, double r_series,
                       double tau_c, double dt, std::uint64_t seed)
    : proc_(tau_c, dt, seed), dev_(dev), vdd_(vdd), r_series_(r_series) {
    if (!(vdd > 0.0)) throw ConfigError("vdd must be positive");
    if (!(r_series > 0.0)) throw ConfigError("r_series must be positive");
    if (!(dev.g0 > 0.0)) throw ConfigError("g0 must be positive");
    if (!(dev.tmr >= 0.0)) throw ConfigError("tmr must be non-negative");
}

double SmtjSignal::next_sample() {
    double rg = r_series_ * conductance(dev_, proc_.step());
    return vdd_ * rg / (1.0 + rg);
}

LfsrDacSignal::LfsrDacSignal(LfsrSource lfsr, double dt) : lfsr_(std::move(lfsr)), dt_(dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    scale_ = lfsr_.vdd() / static_cast<double>((std::uint64_t(1) << lfsr_.dac_bits()) - 1);
}

double LfsrDacSignal::next_sample() {
    return scale_ * static_cast<double>(lfsr_.next_word());
}

AnalogTrace take_trace(SignalSource& src, std::size_t n) {
    AnalogTrace t;
    t.samples.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) t.samples[static_cast<Eigen::Index>(i)] = src.next_sample();
    t.dt = src.dt();
    t.vdd = src.vdd();
    return t;
}

AnalogTrace smtj_trace(MagnetizationProcess& proc, const SmtjDevice& dev,
                       double vdd, double r_series, std::size_t n) {
    if (!(vdd > 0.0)) throw ConfigError("vdd must be positive");
    if (!(r_series > 0.0)) throw ConfigError("r_series must be positive");
    AnalogTrace t;
    t.samples.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double rg = r_series * conductance(dev, proc.step());
        t.samples[static_cast<Eigen::Index>(i)] = vdd * rg / (1.0 + rg);
    }
    t.dt = proc.dt();
    t.vdd = vdd;
    return t;
}

AnalogTrace lfsr_dac_trace(LfsrSource& src, std::size_t n, double dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    const double scale =
        src.vdd() / static_cast<double>((std::uint64_t(1) << src.dac_bits()) - 1);
    AnalogTrace t;
    t.samples.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        t.samples[static_cast<Eigen::Index>(i)] = scale * static_cast<double>(src.next_word());
    t.dt = dt;
    t.vdd = src.vdd();
    return t;
}

void write_trace_csv(const std::filesystem::path& path, const AnalogTrace& trace) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    f << "index,time_s,volts\n";
    f.precision(12);
    for (Eigen::Index i = 0; i < trace.samples.size(); ++i)
        f << i << ',' << static_cast<double>(i) * trace.dt << ',' << trace.samples[i] << '\n';
}

void write_trace_f64(const std::filesystem::path& path, const AnalogTrace& trace) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    static_assert(sizeof(double) == 8);
    for (Eigen::Index i = 0; i < trace.samples.size(); ++i) {
        double v = trace.samples[i];
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        std::uint8_t le[8];
        for (int b = 0; b < 8; ++b) le[b] = std::uint8_t(u >> (8 * b));
        f.write(reinterpret_cast<const char*>(le), 8);
    }
}

} // namespace adrng
