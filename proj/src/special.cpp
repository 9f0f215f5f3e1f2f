#include "adrng/special.hpp"

#include <cmath>
#include <stdexcept>

namespace adrng {

namespace {
constexpr double kMachEps = 1.11022302462515654042e-16;
constexpr double kMaxLog = 7.09782712893383996732e2;
constexpr double kBig = 4.503599627370496e15;
constexpr double kBigInv = 2.22044604925031308085e-16;

void check_domain(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("igamc: a must be positive");
    if (!(x >= 0.0)) throw std::domain_error("igamc: x must be non-negative");
}

// Series expansion of the lower incomplete gamma; valid for x < a + 1.
double igam_series(double a, double x) {
    if (x == 0.0) return 0.0;
    double ax = a * std::log(x) - x - std::lgamma(a);
    if (ax < -kMaxLog) return 0.0;
    ax = std::exp(ax);
    double r = a, c = 1.0, ans = 1.0;
    do {
        r += 1.0;
        c *= x / r;
        ans += c;
    } while (c / ans > kMachEps);
    return ans * ax / a;
}

// Continued fraction for the upper incomplete gamma; valid for x >= 1, x >= a.
double igamc_cf(double a, double x) {
    double ax = a * std::log(x) - x - std::lgamma(a);
    if (ax < -kMaxLog) return 0.0;
    ax = std::exp(ax);
    double y = 1.0 - a, z = x + y + 1.0, c = 0.0;
    double pkm2 = 1.0, qkm2 = x, pkm1 = x + 1.0, qkm1 = z * x;
    double ans = pkm1 / qkm1;
    double t;
    do {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        double yc = y * c;
        double pk = pkm1 * z - pkm2 * yc;
        double qk = qkm1 * z - qkm2 * yc;
        if (qk != 0.0) {
            double r = pk / qk;
            t = std::fabs((ans - r) / r);
            ans = r;
        } else {
            t = 1.0;
        }
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if (std::fabs(pk) > kBig) {
            pkm2 *= kBigInv;
            pkm1 *= kBigInv;
            qkm2 *= kBigInv;
            qkm1 *= kBigInv;
        }
    } while (t > kMachEps);
    return ans * ax;
}
} // namespace

double erfc(double x) { return std::erfc(x); }

double igam(double a, double x) {
    check_domain(a, x);
    if (x > 1.0 && x > a) return 1.0 - igamc_cf(a, x);
    return igam_series(a, x);
}

double igamc(double a, double x) {
    check_domain(a, x);
    if (x < 1.0 || x < a) return 1.0 - igam_series(a, x);
    return igamc_cf(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace adrng
