#pragma once

#include "eqrand/pvalues.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqrand {

enum class Method { ump, rand2 };

std::string_view method_name(Method m);

// Paired UMP / RAND2 curve over an ordered x axis.
struct CurveSeries {
    std::string x_label;
    std::vector<double> x;
    std::vector<double> ump;
    std::vector<double> rand2;
    // Monte Carlo standard errors; empty for analytic curves.
    std::vector<double> ump_stderr;
    std::vector<double> rand2_stderr;
    // Per-point flag for power_vs_delta: the parameter lies on the null side.
    std::vector<bool> null_side;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    std::size_t size() const noexcept { return x.size(); }
};

// Throws DomainError unless x is strictly increasing, lists have equal length and,
// when `probabilities` is set, every value lies in [0,1].
void check_series(const CurveSeries& series, bool probabilities = true);

struct EquivBounds {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// Power at `theta` for each sample size in [n_min, n_max].
CurveSeries power_vs_n(EquivBounds bounds, double theta, double c, double level_t,
                       std::int64_t n_min, std::int64_t n_max, unsigned threads = 1);

struct NonMonotoneStep {
    Method method = Method::ump;
    double x_from = 0.0;
    double x_to = 0.0;
    double drop = 0.0;
};

// Every adjacent pair with value(next) < value(current) - 1e-12, UMP first.
std::vector<NonMonotoneStep> detect_nonmonotone(const CurveSeries& series);

std::size_t count_steps(std::span<const NonMonotoneStep> steps, Method method);

// Both analytic CDFs of the p-values at `theta` over t_grid.
CurveSeries cdf_curve(const EquivProblem& problem, double theta, double c,
                      std::span<const double> t_grid, unsigned threads = 1);

struct MaxPowerResult {
    double argmax_theta = 0.0;
    double max_power = 0.0;
    double grid_step = 0.0;
    Method method = Method::ump;
};

struct MaxPowerPair {
    MaxPowerResult ump;
    MaxPowerResult rand2;
    CurveSeries curve;  // power over the scanned theta grid
};

// Grid scan theta1 + j*step over the open interval; ties go to the smaller theta.
MaxPowerPair argmax_power_theta(const EquivProblem& problem, double c, double level_t,
                                double grid_step, unsigned threads = 1);

// Maps (delta, theta) to equivalence bounds for the Delta sweep.
struct CenteringRule {
    std::string name;
    std::function<EquivBounds(double delta, double theta)> bounds;
};

// "symmetric": (1-delta)/2, (1+delta)/2.
// "sweep": for theta < 1/2, theta1 = theta (delta - theta) / (1 - 2 theta), so theta
// travels from the upper bound (delta = theta) to the lower bound (delta = 1 - theta);
// mirrored for theta > 1/2. Unknown names throw ConfigError.
CenteringRule centering_rule(std::string_view name);

CurveSeries power_vs_delta(double theta, double c, double level_t, std::int64_t n,
                           std::span<const double> delta_grid, const CenteringRule& rule,
                           unsigned threads = 1);

}  // namespace eqrand
