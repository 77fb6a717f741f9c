#pragma once

#include "eqrand/power.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace eqrand {

struct HypothesisConfig {
    std::int64_t n = 0;
    double theta_true = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// k interval hypotheses with their ground truth. truth_mask[i] is true when
// hypothesis i is a true null (theta_true <= theta1 or theta_true >= theta2).
struct HypothesisFamily {
    std::vector<HypothesisConfig> configs;
    std::vector<bool> truth_mask;
    std::size_t k0 = 0;

    std::size_t k() const noexcept { return configs.size(); }
};

// Builds the truth mask and k0 from the configs. Throws DomainError when the
// family is empty or a config is invalid.
HypothesisFamily make_family(std::vector<HypothesisConfig> configs);

bool is_true_null(const HypothesisConfig& config);

struct Pi0Estimate {
    double lambda = 0.5;
    double ecdf_at_lambda = 0.0;
    double k0_hat = 0.0;  // uncapped unless requested
    double pi0_hat = 0.0;
    double intercept = 0.0;  // y-intercept of the line through (lambda, ecdf) and (1, 1)
    std::size_t k = 0;
};

// Fraction of p-values <= t.
double ecdf(std::span<const double> pvalues, double t);

// Schweder-Spjotvoll: k0_hat = k (1 - F_k(lambda)) / (1 - lambda).
Pi0Estimate schweder_k0(std::span<const double> pvalues, double lambda = 0.5,
                        bool cap_at_k = false);

struct AbonResult {
    double threshold = 0.0;
    std::vector<bool> rejected;
};

// Adaptive Bonferroni with a plug-in k0: reject p_i <= alpha / max(1, k0_hat).
AbonResult adaptive_bonferroni(std::span<const double> pvalues, double alpha, double k0_hat);

// One replicate's marginal p-values for both methods.
struct MethodPValues {
    std::vector<double> ump;
    std::vector<double> rand2;
};

// Produces the p-values of replicate `replicate_id`; must be deterministic and
// safe to call concurrently.
using PValueGenerator = std::function<MethodPValues(std::uint64_t replicate_id)>;

// Mean k0_hat per lambda and method over `reps` replicates, with Monte Carlo
// standard errors. Replicates are evaluated in parallel and summed in order.
CurveSeries lambda_sweep(const PValueGenerator& generator, std::span<const double> lambda_grid,
                         std::size_t reps, unsigned threads = 1);

}  // namespace eqrand
