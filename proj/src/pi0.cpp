#include "eqrand/pi0.hpp"

#include "eqrand/errors.hpp"
#include "eqrand/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eqrand {

namespace {

void check_pvalues(std::span<const double> pvalues) {
    if (pvalues.empty()) throw DomainError("p-value list is empty");
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("p-value outside [0,1]: " + std::to_string(p));
    }
}

// Mean and standard error of the mean, accumulated in index order.
std::pair<double, double> mean_and_stderr(const std::vector<double>& v) {
    const auto n = static_cast<double>(v.size());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / n;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

bool is_true_null(const HypothesisConfig& config) {
    return config.theta_true <= config.theta1 || config.theta_true >= config.theta2;
}

HypothesisFamily make_family(std::vector<HypothesisConfig> configs) {
    if (configs.empty()) throw DomainError("hypothesis family must contain at least one hypothesis");
    HypothesisFamily family;
    family.truth_mask.reserve(configs.size());
    for (const auto& c : configs) {
        if (c.n < 1) throw DomainError("hypothesis sample size must be >= 1");
        if (!(c.theta_true >= 0.0 && c.theta_true <= 1.0))
            throw DomainError("true parameter must lie in [0,1]");
        if (!(c.theta1 > 0.0 && c.theta1 < c.theta2 && c.theta2 < 1.0))
            throw DomainError("hypothesis bounds must satisfy 0 < theta1 < theta2 < 1");
        const bool null = is_true_null(c);
        family.truth_mask.push_back(null);
        family.k0 += null ? 1 : 0;
    }
    family.configs = std::move(configs);
    return family;
}

double ecdf(std::span<const double> pvalues, double t) {
    check_pvalues(pvalues);
    const auto below = std::count_if(pvalues.begin(), pvalues.end(), [t](double p) { return p <= t; });
    return static_cast<double>(below) / static_cast<double>(pvalues.size());
}

Pi0Estimate schweder_k0(std::span<const double> pvalues, double lambda, bool cap_at_k) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw DomainError("lambda must lie in [0,1), got " + std::to_string(lambda));
    Pi0Estimate e;
    e.lambda = lambda;
    e.k = pvalues.size();
    e.ecdf_at_lambda = ecdf(pvalues, lambda);
    const auto k = static_cast<double>(e.k);
    e.k0_hat = k * (1.0 - e.ecdf_at_lambda) / (1.0 - lambda);
    if (cap_at_k) e.k0_hat = std::min(e.k0_hat, k);
    e.pi0_hat = e.k0_hat / k;
    // Line through (lambda, F) and (1, 1), evaluated at 0.
    const double slope = (1.0 - e.ecdf_at_lambda) / (1.0 - lambda);
    e.intercept = e.ecdf_at_lambda - slope * lambda;
    if (cap_at_k) e.intercept = 1.0 - e.pi0_hat;
    return e;
}

AbonResult adaptive_bonferroni(std::span<const double> pvalues, double alpha, double k0_hat) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
    if (!(k0_hat >= 0.0)) throw DomainError("k0_hat must be nonnegative");
    AbonResult r;
    r.threshold = alpha / std::max(1.0, k0_hat);
    r.rejected.reserve(pvalues.size());
    for (double p : pvalues) r.rejected.push_back(p <= r.threshold);
    return r;
}

CurveSeries lambda_sweep(const PValueGenerator& generator, std::span<const double> lambda_grid,
                         std::size_t reps, unsigned threads) {
    if (reps == 0) throw DomainError("lambda sweep needs at least one replicate");
    if (lambda_grid.empty()) throw DomainError("lambda grid is empty");
    for (double l : lambda_grid) {
        if (!(l >= 0.0 && l < 1.0)) throw DomainError("lambda grid value outside [0,1)");
    }
    const std::size_t m = lambda_grid.size();
    // [method][lambda][rep]
    std::vector<std::vector<double>> ump(m, std::vector<double>(reps));
    std::vector<std::vector<double>> rand2(m, std::vector<double>(reps));
    parallel_for(reps, threads, [&](std::size_t r) {
        const MethodPValues p = generator(r);
        for (std::size_t j = 0; j < m; ++j) {
            ump[j][r] = schweder_k0(p.ump, lambda_grid[j]).k0_hat;
            rand2[j][r] = schweder_k0(p.rand2, lambda_grid[j]).k0_hat;
        }
    });

    CurveSeries s;
    s.x_label = "lambda";
    for (std::size_t j = 0; j < m; ++j) {
        const auto [mu, se_u] = mean_and_stderr(ump[j]);
        const auto [mr, se_r] = mean_and_stderr(rand2[j]);
        s.x.push_back(lambda_grid[j]);
        s.ump.push_back(mu);
        s.rand2.push_back(mr);
        s.ump_stderr.push_back(se_u);
        s.rand2_stderr.push_back(se_r);
    }
    s.metadata = {{"curve", "lambda_sweep"}, {"reps", reps}};
    return s;
}

}  // namespace eqrand
