#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

inline std::filesystem::path fixtures_dir() { return ADRNG_FIXTURES_DIR; }

inline std::filesystem::path cli_path() { return ADRNG_CLI_PATH; }

/// Parsed lines of a whitespace-separated fixture file, keyed by the first
/// token; a key may occur once.
inline std::map<std::string, std::vector<std::string>> load_fixture(const std::string& name) {
    std::ifstream f(fixtures_dir() / name);
    if (!f.good()) throw std::runtime_error("missing fixture file: " + name);
    std::map<std::string, std::vector<std::string>> out;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        std::vector<std::string> fields;
        std::string tok;
        while (ss >> tok) fields.push_back(tok);
        out[key] = fields;
    }
    return out;
}

/// Kolmogorov-Smirnov P-value against a CDF on sorted samples
/// (asymptotic Q with the Stephens small-sample correction).
template <typename Cdf>
double ks_p_value(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double q = 0.0;
    for (int j = 1; j <= 100; ++j)
        q += 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
    return std::clamp(q, 0.0, 1.0);
}

/// Sample autocorrelation of x at the given lag.
inline double autocorrelation(const std::vector<double>& x, std::size_t lag) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + lag < x.size(); ++i)
        num += (x[i] - mean) * (x[i + lag] - mean);
    for (double v : x) den += (v - mean) * (v - mean);
    return num / den;
}

} // namespace testsupport
