#include "adrng/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "adrng/errors.hpp"

namespace adrng {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t u = std::stoull(v, &pos, 0);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return u;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

std::vector<unsigned> parse_taps(const std::string& key, const std::string& v) {
    std::vector<unsigned> taps;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        taps.push_back(static_cast<unsigned>(parse_u64(key, item)));
    }
    if (taps.empty()) throw ConfigError("config key '" + key + "': empty tap list");
    return taps;
}

} // namespace

FileConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }

    FileConfig fc;
    // source kind first; it selects the default block
    auto it = kv.find("source");
    std::string kind = (it != kv.end()) ? it->second : "smtj";
    if (kind == "smtj") fc.run = RunConfig::smtj_defaults();
    else if (kind == "lfsr") fc.run = RunConfig::lfsr_defaults();
    else throw ConfigError("config key 'source': expected smtj or lfsr, got '" + kind + "'");
    kv.erase("source");

    bool dt_set = false, tau_c_set = false;
    for (const auto& [key, value] : kv) {
        if (key == "seed") fc.run.seed = parse_u64(key, value);
        else if (key == "vdd") fc.run.source.vdd = parse_double(key, value);
        else if (key == "g0") fc.run.source.g0 = parse_double(key, value);
        else if (key == "tmr") fc.run.source.tmr = parse_double(key, value);
        else if (key == "tau_c") { fc.run.source.tau_c = parse_double(key, value); tau_c_set = true; }
        else if (key == "dt") { fc.run.source.dt = parse_double(key, value); dt_set = true; }
        else if (key == "r_series") fc.run.source.r_series = parse_double(key, value);
        else if (key == "lfsr.width") fc.run.source.lfsr.width = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "lfsr.taps") fc.run.source.lfsr.taps = parse_taps(key, value);
        else if (key == "lfsr.dac_bits") fc.run.source.lfsr.dac_bits = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "lfsr.dt") fc.run.source.lfsr.dt = parse_double(key, value);
        else if (key == "digitizer.mode") {
            if (value == "fixed") fc.run.digitizer.mode = ReferenceMode::Fixed;
            else if (value == "adaptive") fc.run.digitizer.mode = ReferenceMode::Adaptive;
            else throw ConfigError("config key 'digitizer.mode': expected fixed or adaptive");
        }
        else if (key == "digitizer.tau_lpf") fc.run.digitizer.tau_lpf = parse_double(key, value);
        else if (key == "digitizer.sample_interval") fc.run.digitizer.sample_interval = parse_double(key, value);
        else if (key == "digitizer.warmup") fc.run.digitizer.warmup = parse_double(key, value);
        else if (key == "digitizer.v_ref") fc.run.digitizer.v_ref_fixed = parse_double(key, value);
        else if (key == "cipher") {
            if (value == "none") fc.run.cipher = PostProcessor::None;
            else if (value == "trivium") fc.run.cipher = PostProcessor::Trivium;
            else if (value == "mini") fc.run.cipher = PostProcessor::Mini;
            else throw ConfigError("config key 'cipher': expected none, trivium or mini");
        }
        else if (key == "output.dir") fc.output_dir = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
    // tau_c set without dt keeps the dt = tau_c/10 default in step
    if (tau_c_set && !dt_set) fc.run.source.dt = fc.run.source.tau_c / 10.0;
    return fc;
}

FileConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const FileConfig& config) {
    std::ostringstream out;
    const RunConfig& r = config.run;
    out << "source = " << (r.source.kind == SourceKind::Smtj ? "smtj" : "lfsr") << '\n';
    out << "seed = " << r.seed << '\n';
    out << "vdd = " << r.source.vdd << '\n';
    if (r.source.kind == SourceKind::Smtj) {
        out << "g0 = " << r.source.g0 << '\n';
        out << "tmr = " << r.source.tmr << '\n';
        out << "tau_c = " << r.source.tau_c << '\n';
        out << "dt = " << r.source.dt << '\n';
        out << "r_series = " << r.source.r_series << '\n';
    } else {
        out << "lfsr.width = " << r.source.lfsr.width << '\n';
        out << "lfsr.taps = ";
        for (std::size_t i = 0; i < r.source.lfsr.taps.size(); ++i)
            out << (i ? "," : "") << r.source.lfsr.taps[i];
        out << '\n';
        out << "lfsr.dac_bits = " << r.source.lfsr.dac_bits << '\n';
        out << "lfsr.dt = " << r.source.lfsr.dt << '\n';
    }
    const DigitizerConfig d = r.resolved_digitizer();
    out << "digitizer.mode = " << (d.mode == ReferenceMode::Adaptive ? "adaptive" : "fixed") << '\n';
    out << "digitizer.tau_lpf = " << d.tau_lpf << '\n';
    out << "digitizer.sample_interval = " << d.sample_interval << '\n';
    out << "digitizer.warmup = " << d.warmup << '\n';
    if (d.mode == ReferenceMode::Fixed) out << "digitizer.v_ref = " << d.v_ref_fixed << '\n';
    out << "cipher = "
        << (r.cipher == PostProcessor::None ? "none"
                                            : r.cipher == PostProcessor::Trivium ? "trivium" : "mini")
        << '\n';
    if (!config.output_dir.empty()) out << "output.dir = " << config.output_dir << '\n';
    return out.str();
}

} // namespace adrng
