#include "eqrand/power.hpp"

#include "eqrand/errors.hpp"
#include "eqrand/parallel.hpp"

#include <cmath>
#include <string>

namespace eqrand {

namespace {

constexpr double kDropTolerance = 1e-12;

CurveSeries make_series(std::string label, std::size_t size) {
    CurveSeries s;
    s.x_label = std::move(label);
    s.x.resize(size);
    s.ump.resize(size);
    s.rand2.resize(size);
    return s;
}

void append_steps(const std::vector<double>& x, const std::vector<double>& v, Method method,
                  std::vector<NonMonotoneStep>& out) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] < v[i] - kDropTolerance) out.push_back({method, x[i], x[i + 1], v[i] - v[i + 1]});
    }
}

EquivBounds symmetric_bounds(double delta, double) {
    return {(1.0 - delta) / 2.0, (1.0 + delta) / 2.0};
}

EquivBounds sweep_bounds(double delta, double theta) {
    if (theta == 0.5) throw DomainError("sweep centering is undefined at theta = 0.5");
    if (theta > 0.5) {
        const EquivBounds mirrored = sweep_bounds(delta, 1.0 - theta);
        return {1.0 - mirrored.theta2, 1.0 - mirrored.theta1};
    }
    const double lower = theta * (delta - theta) / (1.0 - 2.0 * theta);
    return {lower, lower + delta};
}

}  // namespace

std::string_view method_name(Method m) { return m == Method::ump ? "UMP" : "RAND2"; }

void check_series(const CurveSeries& series, bool probabilities) {
    const std::size_t n = series.x.size();
    if (series.ump.size() != n || series.rand2.size() != n)
        throw DomainError("curve series lists differ in length");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(series.x[i] > series.x[i - 1]))
            throw DomainError("curve series x values must be strictly increasing");
    }
    if (!probabilities) return;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(series.ump[i] >= 0.0 && series.ump[i] <= 1.0 && series.rand2[i] >= 0.0 &&
              series.rand2[i] <= 1.0))
            throw DomainError("curve series value outside [0,1] at index " + std::to_string(i));
    }
}

CurveSeries power_vs_n(EquivBounds bounds, double theta, double c, double level_t,
                       std::int64_t n_min, std::int64_t n_max, unsigned threads) {
    if (!(theta > bounds.theta1 && theta < bounds.theta2))
        throw DomainError("power curve parameter theta must lie inside (theta1, theta2)");
    if (n_min < 1 || n_max < n_min) throw DomainError("sample-size range is empty");

    const auto count = static_cast<std::size_t>(n_max - n_min + 1);
    CurveSeries s = make_series("n", count);
    parallel_for(count, threads, [&](std::size_t i) {
        const std::int64_t n = n_min + static_cast<std::int64_t>(i);
        const EquivProblem problem(n, bounds.theta1, bounds.theta2);
        s.x[i] = static_cast<double>(n);
        s.ump[i] = ump_cdf(problem, theta, level_t);
        s.rand2[i] = rand2_cdf(problem, theta, level_t, c);
    });
    s.metadata = {{"curve", "power_vs_n"}, {"theta1", bounds.theta1}, {"theta2", bounds.theta2},
                  {"theta", theta},        {"c", c},                  {"level", level_t}};
    return s;
}

std::vector<NonMonotoneStep> detect_nonmonotone(const CurveSeries& series) {
    std::vector<NonMonotoneStep> steps;
    append_steps(series.x, series.ump, Method::ump, steps);
    append_steps(series.x, series.rand2, Method::rand2, steps);
    return steps;
}

std::size_t count_steps(std::span<const NonMonotoneStep> steps, Method method) {
    std::size_t k = 0;
    for (const auto& s : steps) k += s.method == method ? 1 : 0;
    return k;
}

CurveSeries cdf_curve(const EquivProblem& problem, double theta, double c,
                      std::span<const double> t_grid, unsigned threads) {
    CurveSeries s = make_series("t", t_grid.size());
    parallel_for(t_grid.size(), threads, [&](std::size_t i) {
        const double t = t_grid[i];
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t grid value outside [0,1]");
        s.x[i] = t;
        s.ump[i] = ump_cdf(problem, theta, t);
        s.rand2[i] = rand2_cdf(problem, theta, t, c);
    });
    s.metadata = {{"curve", "cdf"}, {"n", problem.n()}, {"theta1", problem.theta1()},
                  {"theta2", problem.theta2()}, {"theta", theta}, {"c", c}};
    return s;
}

MaxPowerPair argmax_power_theta(const EquivProblem& problem, double c, double level_t,
                                double grid_step, unsigned threads) {
    if (!(grid_step > 0.0 && grid_step < problem.delta()))
        throw DomainError("grid step must lie in (0, theta2 - theta1)");

    // Integer-indexed grid keeps points free of accumulated rounding.
    std::vector<double> thetas;
    for (std::int64_t j = 1;; ++j) {
        const double theta = problem.theta1() + static_cast<double>(j) * grid_step;
        if (theta >= problem.theta2() - 1e-12) break;
        thetas.push_back(theta);
    }
    if (thetas.empty()) throw DomainError("theta grid is empty");

    MaxPowerPair out;
    out.curve = make_series("theta", thetas.size());
    parallel_for(thetas.size(), threads, [&](std::size_t i) {
        out.curve.x[i] = thetas[i];
        out.curve.ump[i] = ump_cdf(problem, thetas[i], level_t);
        out.curve.rand2[i] = rand2_cdf(problem, thetas[i], level_t, c);
    });
    out.curve.metadata = {{"curve", "power_vs_theta"}, {"n", problem.n()},
                          {"theta1", problem.theta1()}, {"theta2", problem.theta2()},
                          {"c", c}, {"level", level_t}};

    auto scan = [&](const std::vector<double>& values, Method method) {
        MaxPowerResult r{thetas[0], values[0], grid_step, method};
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] > r.max_power) {
                r.max_power = values[i];
                r.argmax_theta = thetas[i];
            }
        }
        return r;
    };
    out.ump = scan(out.curve.ump, Method::ump);
    out.rand2 = scan(out.curve.rand2, Method::rand2);
    return out;
}

CenteringRule centering_rule(std::string_view name) {
    if (name == "symmetric") return {"symmetric", symmetric_bounds};
    if (name == "sweep") return {"sweep", sweep_bounds};
    throw ConfigError("unknown centering rule '" + std::string(name) +
                      "' (expected symmetric or sweep)");
}

CurveSeries power_vs_delta(double theta, double c, double level_t, std::int64_t n,
                           std::span<const double> delta_grid, const CenteringRule& rule,
                           unsigned threads) {
    if (!rule.bounds) throw ConfigError("centering rule '" + rule.name + "' has no bounds map");
    CurveSeries s = make_series("delta", delta_grid.size());
    s.null_side.assign(delta_grid.size(), false);
    std::vector<char> null_side(delta_grid.size(), 0);
    parallel_for(delta_grid.size(), threads, [&](std::size_t i) {
        const double delta = delta_grid[i];
        const EquivBounds b = rule.bounds(delta, theta);
        const EquivProblem problem(n, b.theta1, b.theta2);
        s.x[i] = delta;
        s.ump[i] = ump_cdf(problem, theta, level_t);
        s.rand2[i] = rand2_cdf(problem, theta, level_t, c);
        null_side[i] = (theta <= b.theta1 || theta >= b.theta2) ? 1 : 0;
    });
    for (std::size_t i = 0; i < null_side.size(); ++i) s.null_side[i] = null_side[i] != 0;
    s.metadata = {{"curve", "power_vs_delta"}, {"n", n},        {"theta", theta},
                  {"c", c},                    {"level", level_t}, {"centering", rule.name}};
    return s;
}

}  // namespace eqrand
