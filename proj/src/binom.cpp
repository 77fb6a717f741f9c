#include "eqrand/binom.hpp"

#include "eqrand/errors.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace eqrand {

namespace {

// Error of Stirling's approximation: log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirlerr(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        const long double nl = n;
        const long double half_log_2pi = 0.918938533204672741780329736406L;
        return static_cast<double>(std::lgamma(nl + 1.0L) - (nl + 0.5L) * std::log(nl) + nl -
                                   half_log_2pi);
    }
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/np) + np - x, with a series for x close to np.
double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        if (std::fabs(s) < std::numeric_limits<double>::min()) return s;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

}  // namespace

BinomParams::BinomParams(std::int64_t n, double theta) : n_(n), theta_(theta) {
    if (n < 1) throw DomainError("binomial n must be >= 1, got " + std::to_string(n));
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("binomial theta must lie in (0,1), got " + std::to_string(theta));
}

double pmf(const BinomParams& b, std::int64_t x) {
    if (x < 0 || x > b.n()) return 0.0;
    const double n = static_cast<double>(b.n());
    const double p = b.theta();
    const double q = 1.0 - p;
    if (x == 0) {
        const double lc = p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log(q);
        return std::exp(lc);
    }
    if (x == b.n()) {
        const double lc = q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p);
        return std::exp(lc);
    }
    const double xd = static_cast<double>(x);
    const double lc =
        stirlerr(n) - stirlerr(xd) - stirlerr(n - xd) - bd0(xd, n * p) - bd0(n - xd, n * q);
    const double lf = 2.0 * 0.918938533204672741780329736406 + std::log(xd) + std::log1p(-xd / n);
    return std::exp(lc - 0.5 * lf);
}

double cdf(const BinomParams& b, std::int64_t x) {
    if (x < 0) return 0.0;
    if (x >= b.n()) return 1.0;
    // P(X <= x) = I_{1-theta}(n - x, x + 1)
    return boost::math::ibetac(static_cast<double>(x + 1), static_cast<double>(b.n() - x),
                               b.theta());
}

double survival(const BinomParams& b, std::int64_t x) {
    if (x < 0) return 1.0;
    if (x >= b.n()) return 0.0;
    return boost::math::ibeta(static_cast<double>(x + 1), static_cast<double>(b.n() - x),
                              b.theta());
}

std::int64_t quantile(const BinomParams& b, double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw DomainError("quantile level must lie in [0,1], got " + std::to_string(q));
    if (q == 0.0) return 0;
    std::int64_t lo = 0;
    std::int64_t hi = b.n();  // cdf(n) = 1 >= q
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (cdf(b, mid) >= q)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace eqrand
