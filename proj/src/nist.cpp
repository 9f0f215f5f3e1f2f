#include "adrng/nist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "adrng/gf2.hpp"
#include "adrng/special.hpp"

namespace adrng::nist {

namespace {

// Documented applicability minimums (bits). Below these a row is reported
// as not applicable and excluded from the battery verdict.
constexpr std::size_t kMinFrequency = 100;
constexpr std::size_t kMinBlockFrequency = 100;
constexpr std::size_t kMinRuns = 100;
constexpr std::size_t kMinLongestRun = 128;
constexpr std::size_t kMinRank = 38 * 32 * 32;
constexpr std::size_t kMinDft = 1000;
constexpr std::size_t kMinNonOverlapping = 16384;
constexpr std::size_t kMinOverlapping = 73728;
constexpr std::size_t kMinUniversal = 387840;
constexpr std::size_t kMinLinearComplexity = 1000000;
constexpr std::size_t kMinCusum = 100;
constexpr std::size_t kMinExcursionCycles = 500;

TestResult make_result(std::string name, std::vector<double> ps, bool applicable, double alpha) {
    TestResult r;
    r.test_name = std::move(name);
    r.p_values = std::move(ps);
    r.applicable = applicable;
    if (r.p_values.empty()) {
        r.p_value = 0.0;
        r.passed = false;
        return r;
    }
    double pmin = *std::min_element(r.p_values.begin(), r.p_values.end());
    r.p_value = std::min(1.0, pmin * static_cast<double>(r.p_values.size()));
    r.passed = r.applicable && r.p_value >= alpha;
    return r;
}

// Overlapping m-bit window counts with wraparound (serial / ApEn).
std::vector<std::uint32_t> counts_wrapped(const BitStream& bits, int m) {
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> counts(std::size_t(1) << m, 0);
    const std::uint32_t mask = (m >= 32) ? 0xFFFFFFFFu : ((std::uint32_t(1) << m) - 1);
    std::uint32_t v = 0;
    for (int k = 0; k < m; ++k) v = (v << 1) | std::uint32_t(bits[k % n]);
    counts[v]++;
    for (std::size_t i = 1; i < n; ++i) {
        v = ((v << 1) & mask) | std::uint32_t(bits[(i + std::size_t(m) - 1) % n]);
        counts[v]++;
    }
    return counts;
}

double psi_squared(const BitStream& bits, int m) {
    if (m <= 0) return 0.0;
    const double n = static_cast<double>(bits.size());
    auto counts = counts_wrapped(bits, m);
    double sum = 0.0;
    for (std::uint32_t c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return sum * static_cast<double>(std::size_t(1) << m) / n - n;
}

double phi_m(const BitStream& bits, int m) {
    const double n = static_cast<double>(bits.size());
    auto counts = counts_wrapped(bits, m);
    double phi = 0.0;
    for (std::uint32_t c : counts)
        if (c > 0) {
            double p = static_cast<double>(c) / n;
            phi += p * std::log(p);
        }
    return phi;
}

double overlap_class_probability(int u, double eta) {
    if (u == 0) return std::exp(-eta);
    double sum = 0.0;
    for (int l = 1; l <= u; ++l)
        sum += std::exp(-eta - u * std::log(2.0) + l * std::log(eta) - std::lgamma(l + 1.0) +
                        std::lgamma(u) - std::lgamma(l) - std::lgamma(u - l + 1.0));
    return sum;
}

} // namespace

const std::vector<std::string>& battery_row_names() {
    static const std::vector<std::string> names = {
        "Frequency (Monobits)",
        "Frequency within a Block",
        "Runs",
        "Longest Run of Ones in a Block",
        "Binary Matrix Rank",
        "Discrete Fourier Transform (Spectral)",
        "Non-Overlapping Template Matching",
        "Overlapping Template Matching",
        "Maurer's \"Universal Statistical\"",
        "Linear Complexity",
        "Serial",
        "Approximate Entropy",
        "Cumulative Sums (Forward)",
        "Cumulative Sums (Reverse)",
        "Random Excursions",
        "Random Excursions Variant",
    };
    return names;
}

BatteryParams BatteryParams::recommended() { return BatteryParams{}; }

TestResult test_frequency(const BitStream& bits, double alpha) {
    const std::size_t n = bits.size();
    if (n == 0) return make_result("Frequency (Monobits)", {}, false, alpha);
    const double s_n = 2.0 * static_cast<double>(bits.count_ones()) - static_cast<double>(n);
    const double p = erfc(std::fabs(s_n) / std::sqrt(static_cast<double>(n)) / std::sqrt(2.0));
    return make_result("Frequency (Monobits)", {p}, n >= kMinFrequency, alpha);
}

TestResult test_block_frequency(const BitStream& bits, int M, double alpha) {
    const std::size_t n = bits.size();
    const std::size_t N = (M > 0) ? n / static_cast<std::size_t>(M) : 0;
    if (N == 0) return make_result("Frequency within a Block", {}, false, alpha);
    double chi2 = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(M); ++i)
            ones += bits[j * static_cast<std::size_t>(M) + i];
        double pi = static_cast<double>(ones) / M;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * M;
    const double p = igamc(static_cast<double>(N) / 2.0, chi2 / 2.0);
    return make_result("Frequency within a Block", {p}, n >= kMinBlockFrequency, alpha);
}

TestResult test_runs(const BitStream& bits, double alpha) {
    const std::size_t n = bits.size();
    if (n < 2) return make_result("Runs", {}, false, alpha);
    const double pi = static_cast<double>(bits.count_ones()) / static_cast<double>(n);
    const double tau = 2.0 / std::sqrt(static_cast<double>(n));
    double p;
    if (std::fabs(pi - 0.5) >= tau) {
        // monobit prerequisite failed; the test fails without computing V_n
        p = 0.0;
    } else {
        std::size_t v_n = 1;
        for (std::size_t i = 1; i < n; ++i) v_n += bits[i] != bits[i - 1];
        const double num = std::fabs(static_cast<double>(v_n) - 2.0 * n * pi * (1.0 - pi));
        const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
        p = erfc(num / den);
    }
    return make_result("Runs", {p}, n >= kMinRuns, alpha);
}

TestResult test_longest_run(const BitStream& bits, double alpha) {
    const std::size_t n = bits.size();
    if (n < kMinLongestRun) return make_result("Longest Run of Ones in a Block", {}, false, alpha);

    std::size_t M;
    int K;
    std::vector<double> pi;
    std::vector<int> lower; // class thresholds
    if (n < 6272) {
        M = 8; K = 3;
        pi = {0.2148, 0.3672, 0.2305, 0.1875};
        lower = {1, 2, 3, 4}; // <=1, 2, 3, >=4
    } else if (n < 750000) {
        M = 128; K = 5;
        pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
        lower = {4, 5, 6, 7, 8, 9}; // <=4 .. >=9
    } else {
        M = 10000; K = 6;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
        lower = {10, 11, 12, 13, 14, 15, 16};
    }
    const std::size_t N = n / M;
    std::vector<std::size_t> nu(static_cast<std::size_t>(K) + 1, 0);
    for (std::size_t j = 0; j < N; ++j) {
        int longest = 0, run = 0;
        for (std::size_t i = j * M; i < (j + 1) * M; ++i) {
            if (bits[i]) {
                ++run;
                longest = std::max(longest, run);
            } else {
                run = 0;
            }
        }
        int cls = 0;
        for (int k = K; k >= 0; --k)
            if (longest >= lower[static_cast<std::size_t>(k)]) { cls = k; break; }
        nu[static_cast<std::size_t>(cls)]++;
    }
    double chi2 = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double expect = static_cast<double>(N) * pi[static_cast<std::size_t>(k)];
        const double d = static_cast<double>(nu[static_cast<std::size_t>(k)]) - expect;
        chi2 += d * d / expect;
    }
    const double p = igamc(K / 2.0, chi2 / 2.0);
    return make_result("Longest Run of Ones in a Block", {p}, true, alpha);
}

TestResult test_matrix_rank(const BitStream& bits, double alpha) {
    const std::size_t n = bits.size();
    const std::size_t N = n / 1024;
    if (N == 0) return make_result("Binary Matrix Rank", {}, false, alpha);

    std::size_t f32 = 0, f31 = 0;
    for (std::size_t k = 0; k < N; ++k) {
        std::uint32_t rows[32];
        for (int r = 0; r < 32; ++r) {
            std::uint32_t v = 0;
            const std::size_t base = k * 1024 + static_cast<std::size_t>(r) * 32;
            for (int c = 0; c < 32; ++c) v = (v << 1) | std::uint32_t(bits[base + std::size_t(c)]);
            rows[r] = v;
        }
        const int rank = gf2_rank_32(rows);
        if (rank == 32) ++f32;
        else if (rank == 31) ++f31;
    }
    // exact rank-deficiency probabilities of a random 32x32 GF(2) matrix
    double p_rank[2];
    for (int idx = 0; idx < 2; ++idx) {
        const int r = 32 - idx;
        double product = 1.0;
        for (int i = 0; i < r; ++i) {
            const double a = 1.0 - std::pow(2.0, i - 32);
            product *= a * a / (1.0 - std::pow(2.0, i - r));
        }
        p_rank[idx] = std::pow(2.0, static_cast<double>(r) * (64 - r) - 1024) * product;
    }
    const double p32 = p_rank[0], p31 = p_rank[1], p30 = 1.0 - p32 - p31;
    const double f30 = static_cast<double>(N - f32 - f31);
    const double nd = static_cast<double>(N);
    double chi2 = (f32 - nd * p32) * (f32 - nd * p32) / (nd * p32) +
                  (f31 - nd * p31) * (f31 - nd * p31) / (nd * p31) +
                  (f30 - nd * p30) * (f30 - nd * p30) / (nd * p30);
    const double p = igamc(1.0, chi2 / 2.0);
    return make_result("Binary Matrix Rank", {p}, n >= kMinRank, alpha);
}

TestResult test_dft(const BitStream& bits, double alpha) {
    const std::size_t n = bits.size();
    if (n < 2) return make_result("Discrete Fourier Transform (Spectral)", {}, false, alpha);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = bits[i] ? 1.0 : -1.0;
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> X;
    fft.fwd(X, x);

    const double T = std::sqrt(std::log(1.0 / 0.05) * static_cast<double>(n));
    const std::size_t half = n / 2;
    std::size_t n1 = 0;
    for (std::size_t j = 0; j < half; ++j)
        if (std::abs(X[j]) < T) ++n1;
    const double n0 = 0.95 * static_cast<double>(n) / 2.0;
    const double d = (static_cast<double>(n1) - n0) /
                     std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    const double p = erfc(std::fabs(d) / std::sqrt(2.0));
    return make_result("Discrete Fourier Transform (Spectral)", {p}, n >= kMinDft, alpha);
}

std::vector<std::uint32_t> aperiodic_templates(int m) {
    std::vector<std::uint32_t> out;
    const std::uint32_t count = std::uint32_t(1) << m;
    for (std::uint32_t t = 0; t < count; ++t) {
        bool bordered = false;
        for (int k = 1; k < m && !bordered; ++k) {
            const std::uint32_t prefix = t >> (m - k);
            const std::uint32_t suffix = t & ((std::uint32_t(1) << k) - 1);
            bordered = prefix == suffix;
        }
        if (!bordered) out.push_back(t);
    }
    return out;
}

TestResult test_nonoverlapping_template(const BitStream& bits, int m, double alpha) {
    const std::size_t n = bits.size();
    constexpr std::size_t N = 8;
    const std::size_t M = n / N;
    if (M < static_cast<std::size_t>(m) + 1)
        return make_result("Non-Overlapping Template Matching", {}, false, alpha);

    const double mu = static_cast<double>(M - static_cast<std::size_t>(m) + 1) /
                      std::pow(2.0, m);
    const double sigma2 =
        static_cast<double>(M) *
        (1.0 / std::pow(2.0, m) - (2.0 * m - 1.0) / std::pow(2.0, 2.0 * m));

    // sliding window values once, then a skip-scan per template
    std::vector<std::uint16_t> w(n - static_cast<std::size_t>(m) + 1);
    {
        const std::uint32_t mask = (std::uint32_t(1) << m) - 1;
        std::uint32_t v = bits.window(0, m);
        w[0] = static_cast<std::uint16_t>(v);
        for (std::size_t i = 1; i + static_cast<std::size_t>(m) <= n; ++i) {
            v = ((v << 1) & mask) | std::uint32_t(bits[i + static_cast<std::size_t>(m) - 1]);
            w[i] = static_cast<std::uint16_t>(v);
        }
    }

    std::vector<double> ps;
    for (std::uint32_t tmpl : aperiodic_templates(m)) {
        double chi2 = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            std::size_t count = 0;
            std::size_t i = j * M;
            const std::size_t end = j * M + M - static_cast<std::size_t>(m);
            while (i <= end) {
                if (w[i] == tmpl) {
                    ++count;
                    i += static_cast<std::size_t>(m);
                } else {
                    ++i;
                }
            }
            const double d = static_cast<double>(count) - mu;
            chi2 += d * d / sigma2;
        }
        ps.push_back(igamc(N / 2.0, chi2 / 2.0));
    }
    return make_result("Non-Overlapping Template Matching", std::move(ps),
                       n >= kMinNonOverlapping, alpha);
}

TestResult test_overlapping_template(const BitStream& bits, int m, double alpha) {
    const std::size_t n = bits.size();
    constexpr std::size_t M = 1032;
    constexpr int K = 5;
    const std::size_t N = n / M;
    if (N == 0 || M < static_cast<std::size_t>(m))
        return make_result("Overlapping Template Matching", {}, false, alpha);

    const double lambda = static_cast<double>(M - static_cast<std::size_t>(m) + 1) /
                          std::pow(2.0, m);
    const double eta = lambda / 2.0;

    std::array<double, K + 1> pi{};
    if (m == 9) {
        // exact class probabilities for m = 9, M = 1032
        pi = {0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865};
    } else {
        double sum = 0.0;
        for (int u = 0; u < K; ++u) {
            pi[static_cast<std::size_t>(u)] = overlap_class_probability(u, eta);
            sum += pi[static_cast<std::size_t>(u)];
        }
        pi[K] = 1.0 - sum;
    }

    // template is the all-ones block of length m
    std::array<std::size_t, K + 1> nu{};
    for (std::size_t j = 0; j < N; ++j) {
        std::size_t count = 0;
        int run = 0;
        for (std::size_t i = j * M; i < (j + 1) * M; ++i) {
            run = bits[i] ? run + 1 : 0;
            if (run >= m) ++count; // every window ending here matches once run >= m
        }
        nu[std::min<std::size_t>(count, K)]++;
    }
    double chi2 = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double expect = static_cast<double>(N) * pi[static_cast<std::size_t>(k)];
        const double d = static_cast<double>(nu[static_cast<std::size_t>(k)]) - expect;
        chi2 += d * d / expect;
    }
    const double p = igamc(K / 2.0, chi2 / 2.0);
    return make_result("Overlapping Template Matching", {p}, n >= kMinOverlapping, alpha);
}

void universal_constants(int L, double& expected_value, double& variance) {
    static const std::array<std::pair<double, double>, 11> table = {{
        {5.2177052, 2.954},  // L = 6
        {6.1962507, 3.125},  // L = 7
        {7.1836656, 3.238},  // L = 8
        {8.1764248, 3.311},  // L = 9
        {9.1723243, 3.356},  // L = 10
        {10.170032, 3.384},  // L = 11
        {11.168765, 3.401},  // L = 12
        {12.168070, 3.410},  // L = 13
        {13.167693, 3.416},  // L = 14
        {14.167488, 3.419},  // L = 15
        {15.167379, 3.421},  // L = 16
    }};
    if (L < 6 || L > 16) throw std::invalid_argument("universal block length must be in 6..16");
    expected_value = table[static_cast<std::size_t>(L - 6)].first;
    variance = table[static_cast<std::size_t>(L - 6)].second;
}

void universal_plan(std::size_t n, int& L, int& Q) {
    static const std::array<std::size_t, 11> thresholds = {
        387840, 904960, 2068480, 4654080, 10342400, 22753280,
        49643520, 107560960, 231669760, 496435200, 1059061760,
    };
    L = 0;
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        if (n >= thresholds[i]) L = static_cast<int>(i) + 6;
    Q = (L > 0) ? 10 * (1 << L) : 0;
}

TestResult test_universal(const BitStream& bits, int L, int Q, double alpha) {
    const std::size_t n = bits.size();
    if (L == 0) universal_plan(n, L, Q);
    if (L < 6) return make_result("Maurer's \"Universal Statistical\"", {}, false, alpha);
    if (Q == 0) Q = 10 * (1 << L);

    const std::size_t blocks = n / static_cast<std::size_t>(L);
    const std::size_t K = blocks - static_cast<std::size_t>(Q);
    if (blocks <= static_cast<std::size_t>(Q))
        return make_result("Maurer's \"Universal Statistical\"", {}, false, alpha);

    std::vector<std::int64_t> last(std::size_t(1) << L, 0);
    for (std::size_t i = 1; i <= static_cast<std::size_t>(Q); ++i)
        last[bits.window((i - 1) * static_cast<std::size_t>(L), L)] = static_cast<std::int64_t>(i);
    double sum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(Q) + 1; i <= blocks; ++i) {
        const std::uint32_t v = bits.window((i - 1) * static_cast<std::size_t>(L), L);
        sum += std::log2(static_cast<double>(static_cast<std::int64_t>(i) - last[v]));
        last[v] = static_cast<std::int64_t>(i);
    }
    const double fn = sum / static_cast<double>(K);

    double expected, variance;
    universal_constants(L, expected, variance);
    const double c = 0.7 - 0.8 / L +
                     (4.0 + 32.0 / L) * std::pow(static_cast<double>(K), -3.0 / L) / 15.0;
    const double sigma = c * std::sqrt(variance / static_cast<double>(K));
    const double p = erfc(std::fabs(fn - expected) / (std::sqrt(2.0) * sigma));
    return make_result("Maurer's \"Universal Statistical\"", {p}, n >= kMinUniversal, alpha);
}

TestResult test_linear_complexity(const BitStream& bits, int M, double alpha) {
    const std::size_t n = bits.size();
    const std::size_t N = (M > 0) ? n / static_cast<std::size_t>(M) : 0;
    if (N == 0) return make_result("Linear Complexity", {}, false, alpha);

    static const std::array<double, 7> pi = {0.010417, 0.03125, 0.125,
                                             0.5,      0.25,    0.0625, 0.020833};
    const double sign = (M % 2 == 0) ? 1.0 : -1.0;
    const double mu = M / 2.0 + (9.0 - sign) / 36.0 -
                      (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);

    std::array<std::size_t, 7> nu{};
    for (std::size_t j = 0; j < N; ++j) {
        const auto L = static_cast<double>(
            berlekamp_massey(bits, j * static_cast<std::size_t>(M), static_cast<std::size_t>(M)));
        const double t = sign * (L - mu) + 2.0 / 9.0;
        int cls;
        if (t <= -2.5) cls = 0;
        else if (t <= -1.5) cls = 1;
        else if (t <= -0.5) cls = 2;
        else if (t <= 0.5) cls = 3;
        else if (t <= 1.5) cls = 4;
        else if (t <= 2.5) cls = 5;
        else cls = 6;
        nu[static_cast<std::size_t>(cls)]++;
    }
    double chi2 = 0.0;
    for (std::size_t k = 0; k < 7; ++k) {
        const double expect = static_cast<double>(N) * pi[k];
        const double d = static_cast<double>(nu[k]) - expect;
        chi2 += d * d / expect;
    }
    const double p = igamc(3.0, chi2 / 2.0);
    return make_result("Linear Complexity", {p}, n >= kMinLinearComplexity, alpha);
}

TestResult test_serial(const BitStream& bits, int m, double alpha) {
    const std::size_t n = bits.size();
    if (m < 2 || n < static_cast<std::size_t>(m))
        return make_result("Serial", {}, false, alpha);
    const double psi_m = psi_squared(bits, m);
    const double psi_m1 = psi_squared(bits, m - 1);
    const double psi_m2 = psi_squared(bits, m - 2);
    // both differences are non-negative in exact arithmetic
    const double d1 = std::max(0.0, psi_m - psi_m1);
    const double d2 = std::max(0.0, psi_m - 2.0 * psi_m1 + psi_m2);
    const double p1 = igamc(std::pow(2.0, m - 2), d1 / 2.0);
    const double p2 = igamc(std::pow(2.0, m - 3), d2 / 2.0);
    const bool applicable = n >= (std::size_t(1) << (m + 2));
    return make_result("Serial", {p1, p2}, applicable, alpha);
}

TestResult test_apen(const BitStream& bits, int m, double alpha) {
    const std::size_t n = bits.size();
    if (n < static_cast<std::size_t>(m) + 1)
        return make_result("Approximate Entropy", {}, false, alpha);
    const double apen = phi_m(bits, m) - phi_m(bits, m + 1);
    const double chi2 = std::max(0.0, 2.0 * static_cast<double>(n) * (std::log(2.0) - apen));
    const double p = igamc(std::pow(2.0, m - 1), chi2 / 2.0);
    const bool applicable = n >= (std::size_t(1) << (m + 5));
    return make_result("Approximate Entropy", {p}, applicable, alpha);
}

TestResult test_cusum(const BitStream& bits, CusumMode mode, double alpha) {
    const char* name = (mode == CusumMode::Forward) ? "Cumulative Sums (Forward)"
                                                    : "Cumulative Sums (Reverse)";
    const std::size_t n = bits.size();
    if (n == 0) return make_result(name, {}, false, alpha);

    std::int64_t s = 0, zmax = 0;
    if (mode == CusumMode::Forward) {
        for (std::size_t i = 0; i < n; ++i) {
            s += bits[i] ? 1 : -1;
            zmax = std::max<std::int64_t>(zmax, s < 0 ? -s : s);
        }
    } else {
        for (std::size_t i = n; i-- > 0;) {
            s += bits[i] ? 1 : -1;
            zmax = std::max<std::int64_t>(zmax, s < 0 ? -s : s);
        }
    }
    const double z = static_cast<double>(zmax);
    const double nd = static_cast<double>(n);
    const double sqn = std::sqrt(nd);
    const double u = z / sqn;
    // reflection-principle double sum with the documented truncation bounds
    const auto k1_lo = static_cast<std::int64_t>(std::floor((-nd / z + 1.0) / 4.0));
    const auto k1_hi = static_cast<std::int64_t>(std::floor((nd / z - 1.0) / 4.0));
    const auto k2_lo = static_cast<std::int64_t>(std::floor((-nd / z - 3.0) / 4.0));
    double sum1 = 0.0, sum2 = 0.0;
    for (std::int64_t k = k1_lo; k <= k1_hi; ++k)
        sum1 += normal_cdf((4.0 * k + 1.0) * u) - normal_cdf((4.0 * k - 1.0) * u);
    for (std::int64_t k = k2_lo; k <= k1_hi; ++k)
        sum2 += normal_cdf((4.0 * k + 3.0) * u) - normal_cdf((4.0 * k + 1.0) * u);
    const double p = std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
    return make_result(name, {p}, n >= kMinCusum, alpha);
}

namespace {
// Walk cycles shared by both excursion tests.
struct ExcursionWalk {
    std::size_t cycles = 0;                 // J
    std::array<std::array<std::size_t, 6>, 8> nu{}; // per state -4..-1,1..4: class counts
    std::array<std::size_t, 18> xi{};       // total visits, states -9..-1,1..9
};

ExcursionWalk excursion_walk(const BitStream& bits) {
    ExcursionWalk w;
    std::array<std::size_t, 8> visits{}; // per-cycle visits of states -4..4
    auto flush_cycle = [&]() {
        for (std::size_t s = 0; s < 8; ++s) {
            w.nu[s][std::min<std::size_t>(visits[s], 5)]++;
            visits[s] = 0;
        }
        w.cycles++;
    };
    std::int64_t pos = 0;
    bool open = false;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        pos += bits[i] ? 1 : -1;
        open = true;
        if (pos == 0) {
            flush_cycle();
            open = false;
            continue;
        }
        if (pos >= -9 && pos <= 9) {
            const std::size_t xi_idx = static_cast<std::size_t>(pos < 0 ? pos + 9 : pos + 8);
            w.xi[xi_idx]++;
            if (pos >= -4 && pos <= 4) {
                const std::size_t s = static_cast<std::size_t>(pos < 0 ? pos + 4 : pos + 3);
                visits[s]++;
            }
        }
    }
    if (open) flush_cycle(); // trailing zero appended to close the last cycle
    return w;
}
} // namespace

TestResult test_random_excursions(const BitStream& bits, double alpha) {
    if (bits.empty()) return make_result("Random Excursions", {}, false, alpha);
    const ExcursionWalk w = excursion_walk(bits);
    if (w.cycles < kMinExcursionCycles)
        return make_result("Random Excursions", {}, false, alpha);

    const double J = static_cast<double>(w.cycles);
    std::vector<double> ps;
    for (int x : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        const double ax = std::abs(x);
        std::array<double, 6> pi{};
        pi[0] = 1.0 - 1.0 / (2.0 * ax);
        for (int k = 1; k <= 4; ++k)
            pi[static_cast<std::size_t>(k)] =
                1.0 / (4.0 * ax * ax) * std::pow(1.0 - 1.0 / (2.0 * ax), k - 1);
        pi[5] = 1.0 / (2.0 * ax) * std::pow(1.0 - 1.0 / (2.0 * ax), 4);

        const std::size_t s = static_cast<std::size_t>(x < 0 ? x + 4 : x + 3);
        double chi2 = 0.0;
        for (std::size_t k = 0; k < 6; ++k) {
            const double expect = J * pi[k];
            const double d = static_cast<double>(w.nu[s][k]) - expect;
            chi2 += d * d / expect;
        }
        ps.push_back(igamc(2.5, chi2 / 2.0));
    }
    return make_result("Random Excursions", std::move(ps), true, alpha);
}

TestResult test_random_excursions_variant(const BitStream& bits, double alpha) {
    if (bits.empty()) return make_result("Random Excursions Variant", {}, false, alpha);
    const ExcursionWalk w = excursion_walk(bits);
    if (w.cycles < kMinExcursionCycles)
        return make_result("Random Excursions Variant", {}, false, alpha);

    const double J = static_cast<double>(w.cycles);
    std::vector<double> ps;
    for (int x = -9; x <= 9; ++x) {
        if (x == 0) continue;
        const std::size_t idx = static_cast<std::size_t>(x < 0 ? x + 9 : x + 8);
        const double xi = static_cast<double>(w.xi[idx]);
        const double denom = std::sqrt(2.0 * J * (4.0 * std::abs(x) - 2.0));
        ps.push_back(erfc(std::fabs(xi - J) / denom));
    }
    return make_result("Random Excursions Variant", std::move(ps), true, alpha);
}

BatteryReport run_battery(const BitStream& bits, const BatteryParams& params) {
    if (bits.empty()) throw std::invalid_argument("run_battery: empty stream");
    BatteryReport rep;
    rep.bit_count = bits.size();
    rep.short_stream_warning = bits.size() < 1000000;

    const double a = params.alpha;
    rep.results.push_back(test_frequency(bits, a));
    rep.results.push_back(test_block_frequency(bits, params.block_freq_m, a));
    rep.results.push_back(test_runs(bits, a));
    rep.results.push_back(test_longest_run(bits, a));
    rep.results.push_back(test_matrix_rank(bits, a));
    rep.results.push_back(test_dft(bits, a));
    rep.results.push_back(test_nonoverlapping_template(bits, params.template_m, a));
    rep.results.push_back(test_overlapping_template(bits, params.overlap_m, a));
    rep.results.push_back(test_universal(bits, params.universal_l, params.universal_q, a));
    rep.results.push_back(test_linear_complexity(bits, params.linear_complexity_m, a));
    rep.results.push_back(test_serial(bits, params.serial_m, a));
    rep.results.push_back(test_apen(bits, params.apen_m, a));
    rep.results.push_back(test_cusum(bits, CusumMode::Forward, a));
    rep.results.push_back(test_cusum(bits, CusumMode::Reverse, a));
    rep.results.push_back(test_random_excursions(bits, a));
    rep.results.push_back(test_random_excursions_variant(bits, a));

    rep.all_passed = true;
    for (const auto& r : rep.results)
        if (r.applicable && !r.passed) rep.all_passed = false;
    return rep;
}

} // namespace adrng::nist
