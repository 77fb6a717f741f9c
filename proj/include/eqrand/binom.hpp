#pragma once

#include <cstdint>

namespace eqrand {

// Parameters of Bin(n, theta). Construction validates n >= 1, 0 < theta < 1.
class BinomParams {
public:
    BinomParams(std::int64_t n, double theta);

    std::int64_t n() const noexcept { return n_; }
    double theta() const noexcept { return theta_; }

private:
    std::int64_t n_;
    double theta_;
};

// P(X = x). Zero outside 0..n.
double pmf(const BinomParams& b, std::int64_t x);

// P(X <= x). Zero for x < 0, one for x >= n.
double cdf(const BinomParams& b, std::int64_t x);

// P(X > x), evaluated as an upper tail rather than 1 - cdf.
double survival(const BinomParams& b, std::int64_t x);

// Generalized inverse inf{x : cdf(x) >= q} over 0..n; q = 0 gives 0.
// Throws DomainError for q outside [0, 1].
std::int64_t quantile(const BinomParams& b, double q);

}  // namespace eqrand
