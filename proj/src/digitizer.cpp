#include "adrng/digitizer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adrng/errors.hpp"

namespace adrng {

LowPassFilter::LowPassFilter(double tau_lpf, double initial_state)
    : tau_(tau_lpf), state_(initial_state) {
    if (!(tau_lpf > 0.0)) throw ConfigError("tau_lpf must be positive");
}

double LowPassFilter::step(double v_in, double dt) {
    if (dt != cached_dt_) {
        cached_dt_ = dt;
        cached_alpha_ = 1.0 - std::exp(-dt / tau_);
    }
    state_ += cached_alpha_ * (v_in - state_);
    return state_;
}

double cutoff_frequency(double tau_lpf) {
    if (!(tau_lpf > 0.0)) throw std::domain_error("tau_lpf must be positive");
    return 1.0 / (2.0 * M_PI * tau_lpf);
}

void DigitizerConfig::validate(double trace_dt) const {
    if (!(trace_dt > 0.0)) throw ConfigError("trace dt must be positive");
    if (!(sample_interval > 0.0)) throw ConfigError("digitizer.sample_interval must be positive");
    const double ratio = sample_interval / trace_dt;
    if (std::fabs(ratio - std::round(ratio)) > 1e-6 * ratio || std::round(ratio) < 1.0)
        throw ConfigError("trace dt must divide digitizer.sample_interval");
    if (warmup < 0.0) throw ConfigError("digitizer.warmup must be non-negative");
    if (mode == ReferenceMode::Adaptive) {
        if (!(tau_lpf > 0.0)) throw ConfigError("digitizer.tau_lpf must be positive");
        if (!(source_tau_c > 0.0))
            throw ConfigError("adaptive mode requires the source correlation time (source_tau_c)");
        if (!(tau_lpf > source_tau_c)) {
            std::ostringstream msg;
            msg << "adaptive digitizer requires tau_lpf > tau_c of the source "
                << "(tau_lpf = " << tau_lpf << " s, tau_c = " << source_tau_c << " s)";
            throw ConfigError(msg.str());
        }
        if (warmup < 3.0 * tau_lpf)
            throw ConfigError("adaptive mode requires warmup >= 3*tau_lpf for the LPF to settle");
    }
}

namespace {

// Shared core: pulls samples one at a time from `next`, emits bits at
// multiples of the sampling stride once past warmup.
template <typename NextSample>
BitStream digitize_core(NextSample&& next, double dt, const DigitizerConfig& cfg,
                        std::size_t max_steps, std::size_t max_bits) {
    const auto stride = static_cast<std::size_t>(std::llround(cfg.sample_interval / dt));
    const auto warmup_steps = static_cast<std::size_t>(std::ceil(cfg.warmup / dt - 1e-9));

    BitStream out;
    bool adaptive = cfg.mode == ReferenceMode::Adaptive;
    LowPassFilter lpf(adaptive ? cfg.tau_lpf : 1.0, 0.0);
    bool lpf_primed = false;

    for (std::size_t j = 0; j < max_steps && out.size() < max_bits; ++j) {
        double v = next();
        double ref;
        if (adaptive) {
            if (!lpf_primed) {
                lpf = LowPassFilter(cfg.tau_lpf, v);
                lpf_primed = true;
            }
            ref = lpf.step(v, dt);
        } else {
            ref = cfg.v_ref_fixed;
        }
        if (j >= warmup_steps && j % stride == 0) out.push_back(compare(v, ref) != 0);
    }
    return out;
}

} // namespace

BitStream digitize(const AnalogTrace& trace, const DigitizerConfig& cfg) {
    cfg.validate(trace.dt);
    Eigen::Index i = 0;
    auto next = [&]() { return trace.samples[i++]; };
    return digitize_core(next, trace.dt, cfg,
                         static_cast<std::size_t>(trace.samples.size()),
                         static_cast<std::size_t>(-1));
}

BitStream digitize(SignalSource& src, std::size_t nbits, const DigitizerConfig& cfg) {
    cfg.validate(src.dt());
    auto next = [&]() { return src.next_sample(); };
    return digitize_core(next, src.dt(), cfg, static_cast<std::size_t>(-1), nbits);
}

double ones_fraction(const BitStream& bits) {
    if (bits.empty()) throw std::domain_error("ones_fraction of an empty stream");
    return static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
}

} // namespace adrng
