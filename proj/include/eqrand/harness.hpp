#pragma once

#include "eqrand/pi0.hpp"
#include "eqrand/pvalues.hpp"
#include "eqrand/regions.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eqrand {

inline constexpr std::uint64_t kDefaultSeed = 20200512;

struct MethodSet {
    bool ump = true;
    bool rand2 = true;
};

struct SimulationSpec {
    std::uint64_t seed = kDefaultSeed;
    std::size_t reps = 10000;
    double c = 0.5;
    double lambda = 0.5;
    double alpha = 0.05;
    MethodSet methods;
    unsigned threads = 1;  // 0 = hardware concurrency; results do not depend on it
};

// Throws DomainError when reps < 1, c outside [0,1], lambda outside [0,1) or
// alpha outside [0,1).
void validate(const SimulationSpec& spec);

// Mean estimates of k0 for one (theta1, theta2) pair. Unselected methods are NaN.
struct TableRow {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double delta = 0.0;
    std::size_t k0 = 0;
    double k0_hat_ump = 0.0;
    double k0_hat_rand2 = 0.0;
    double stderr_ump = 0.0;
    double stderr_rand2 = 0.0;
};

// Bin(n, theta) variate by inversion of u, searching outward from the mode.
// theta <= 0 gives 0 and theta >= 1 gives n.
std::int64_t binomial_variate(std::int64_t n, double theta, double u);

// P(P^UMP <= t) by enumerating T = 0..n: for each x the set of u with
// max(p_lower, p_upper) <= t is an interval [0, min(a_x, b_x)] because both
// one-sided p-values are linear in u. Refuses n > 1000.
double exact_ump_cdf_oracle(const EquivProblem& problem, double theta, double t);

// Same enumeration for P^rand2: each x contributes t * |{u : P^UMP >= c}| + |{u : P^UMP <= t c}|.
double exact_rand2_cdf_oracle(const EquivProblem& problem, double theta, double t, double c);

inline constexpr std::int64_t kOracleMaxN = 1000;

// Replicate `replicate_id`: for each hypothesis i draws x_i, u, u_tilde from
// stream (seed, replicate_id, i) and evaluates both p-values.
std::vector<PValueDraw> simulate_family(const HypothesisFamily& family, const SimulationSpec& spec,
                                        std::uint64_t replicate_id);

MethodPValues split_methods(std::span<const PValueDraw> draws);

PValueGenerator family_generator(const HypothesisFamily& family, const SimulationSpec& spec);

// Classify k0 from the region rates, then average the estimator over spec.reps replicates.
TableRow algorithm1_run(std::span<const RegionRecord> regions, double theta1, double theta2,
                        const SimulationSpec& spec);

TableRow table_row(const HypothesisFamily& family, const SimulationSpec& spec);

struct FwerEstimate {
    double fwer = 0.0;
    double stderr = 0.0;
};

struct FwerResult {
    FwerEstimate ump;
    FwerEstimate rand2;
};

// Frequency of at least one rejected true null under the adaptive Bonferroni
// plug-in procedure at spec.alpha with k0 estimated at spec.lambda.
FwerResult fwer_estimate(const HypothesisFamily& family, const SimulationSpec& spec);

// Largest deviation between the analytic CDFs and the enumeration oracles.
struct OracleReport {
    double max_dev_ump = 0.0;
    double max_dev_rand2 = 0.0;
    std::size_t evaluations = 0;
};

OracleReport oracle_sweep(std::span<const std::int64_t> ns, std::span<const double> thetas,
                          std::span<const EquivBounds> bounds, std::span<const double> t_grid,
                          std::span<const double> cs);

// Interval pairs of the reference k0 table.
std::vector<EquivBounds> default_table_bounds();

}  // namespace eqrand
