#include "eqrand/harness.hpp"

#include "eqrand/errors.hpp"
#include "eqrand/parallel.hpp"
#include "eqrand/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eqrand {

namespace {

// (t - tail) / mass, the u-limit of one one-sided p-value. `tail` and `rest`
// are complementary probabilities; when tail is near one, t - tail is formed as
// (t - 1) + rest so tiny masses are not swamped by cancellation.
double u_limit(double t, double tail, double rest, double mass) {
    const double gap = tail > 0.5 ? (t - 1.0) + rest : t - tail;
    if (mass > 0.0) return gap / mass;
    return gap >= 0.0 ? 1.0 : 0.0;
}

// |{u in [0,1] : max(p_lower(x,u), p_upper(x,u)) <= t}|
double accepted_u_length(const EquivProblem& problem, std::int64_t x, double t) {
    const BinomParams at1 = problem.lower_lfc();
    const BinomParams at2 = problem.upper_lfc();
    const double a = u_limit(t, survival(at1, x), cdf(at1, x), pmf(at1, x));
    const double b = u_limit(t, cdf(at2, x - 1), survival(at2, x - 1), pmf(at2, x));
    return std::clamp(std::min(a, b), 0.0, 1.0);
}

void check_oracle_args(const EquivProblem& problem, double theta) {
    if (problem.n() > kOracleMaxN)
        throw GuardError("enumeration oracle refuses n=" + std::to_string(problem.n()) +
                         " (limit " + std::to_string(kOracleMaxN) + ")");
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("oracle theta must lie in (0,1)");
}

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

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate(const SimulationSpec& spec) {
    if (spec.reps < 1) throw DomainError("reps must be >= 1");
    if (!(spec.c >= 0.0 && spec.c <= 1.0)) throw DomainError("c must lie in [0,1]");
    if (!(spec.lambda >= 0.0 && spec.lambda < 1.0)) throw DomainError("lambda must lie in [0,1)");
    if (!(spec.alpha >= 0.0 && spec.alpha < 1.0)) throw DomainError("alpha must lie in [0,1)");
}

std::int64_t binomial_variate(std::int64_t n, double theta, double u) {
    if (n < 1 || theta <= 0.0) return 0;
    if (theta >= 1.0) return n;
    const BinomParams b(n, theta);
    const double odds = theta / (1.0 - theta);
    std::int64_t x = std::clamp(static_cast<std::int64_t>(std::floor((n + 1) * theta)),
                                std::int64_t{0}, n);
    double f = pmf(b, x);
    double F = cdf(b, x);
    if (u <= F) {
        // smallest x with F(x) >= u, walking down
        while (x > 0) {
            const double below = F - f;
            if (u > below) break;
            f *= static_cast<double>(x) / (static_cast<double>(n - x + 1) * odds);
            F = below;
            --x;
            if (f == 0.0) break;
        }
        return x;
    }
    while (x < n && F < u) {
        f *= static_cast<double>(n - x) / static_cast<double>(x + 1) * odds;
        ++x;
        F += f;
        if (f == 0.0) break;
    }
    return x;
}

double exact_ump_cdf_oracle(const EquivProblem& problem, double theta, double t) {
    check_oracle_args(problem, theta);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const BinomParams at(problem.n(), theta);
    double total = 0.0;
    for (std::int64_t x = 0; x <= problem.n(); ++x) total += pmf(at, x) * accepted_u_length(problem, x, t);
    return total;
}

double exact_rand2_cdf_oracle(const EquivProblem& problem, double theta, double t, double c) {
    check_oracle_args(problem, theta);
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("oracle c must lie in [0,1]");
    if (c == 0.0) return std::clamp(t, 0.0, 1.0);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const BinomParams at(problem.n(), theta);
    double total = 0.0;
    for (std::int64_t x = 0; x <= problem.n(); ++x) {
        const double at_or_above_c = 1.0 - accepted_u_length(problem, x, c);
        total += pmf(at, x) * (t * at_or_above_c + accepted_u_length(problem, x, t * c));
    }
    return total;
}

std::vector<PValueDraw> simulate_family(const HypothesisFamily& family, const SimulationSpec& spec,
                                        std::uint64_t replicate_id) {
    std::vector<PValueDraw> draws;
    draws.reserve(family.k());
    for (std::size_t i = 0; i < family.k(); ++i) {
        const HypothesisConfig& h = family.configs[i];
        UniformStream stream = rng_stream(spec.seed, replicate_id, i);
        const double u_data = stream.next();
        const double u = stream.next();
        const double u_tilde = stream.next();
        const std::int64_t s = binomial_variate(h.n, h.theta_true, u_data);
        draws.push_back(make_draw(EquivProblem(h.n, h.theta1, h.theta2), s, u, u_tilde, spec.c));
    }
    return draws;
}

MethodPValues split_methods(std::span<const PValueDraw> draws) {
    MethodPValues p;
    p.ump.reserve(draws.size());
    p.rand2.reserve(draws.size());
    for (const auto& d : draws) {
        p.ump.push_back(d.p_ump);
        p.rand2.push_back(d.p_rand2);
    }
    return p;
}

PValueGenerator family_generator(const HypothesisFamily& family, const SimulationSpec& spec) {
    return [family, spec](std::uint64_t replicate_id) {
        return split_methods(simulate_family(family, spec, replicate_id));
    };
}

TableRow table_row(const HypothesisFamily& family, const SimulationSpec& spec) {
    validate(spec);
    std::vector<double> ump(spec.reps);
    std::vector<double> rand2(spec.reps);
    parallel_for(spec.reps, spec.threads, [&](std::size_t r) {
        const MethodPValues p = split_methods(simulate_family(family, spec, r));
        ump[r] = schweder_k0(p.ump, spec.lambda).k0_hat;
        rand2[r] = schweder_k0(p.rand2, spec.lambda).k0_hat;
    });

    TableRow row;
    row.theta1 = family.configs.front().theta1;
    row.theta2 = family.configs.front().theta2;
    row.delta = row.theta2 - row.theta1;
    row.k0 = family.k0;
    const auto [mu, su] = mean_and_stderr(ump);
    const auto [mr, sr] = mean_and_stderr(rand2);
    row.k0_hat_ump = spec.methods.ump ? mu : kNaN;
    row.stderr_ump = spec.methods.ump ? su : kNaN;
    row.k0_hat_rand2 = spec.methods.rand2 ? mr : kNaN;
    row.stderr_rand2 = spec.methods.rand2 ? sr : kNaN;
    return row;
}

TableRow algorithm1_run(std::span<const RegionRecord> regions, double theta1, double theta2,
                        const SimulationSpec& spec) {
    if (regions.empty()) throw DomainError("region list is empty");
    return table_row(build_family(regions, theta1, theta2), spec);
}

FwerResult fwer_estimate(const HypothesisFamily& family, const SimulationSpec& spec) {
    validate(spec);
    FwerResult result;
    if (spec.alpha == 0.0 || family.k0 == 0) return result;

    std::vector<char> ump_error(spec.reps, 0);
    std::vector<char> rand2_error(spec.reps, 0);
    auto any_false_rejection = [&](const std::vector<double>& p) {
        const Pi0Estimate est = schweder_k0(p, spec.lambda);
        const AbonResult abon = adaptive_bonferroni(p, spec.alpha, est.k0_hat);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (abon.rejected[i] && family.truth_mask[i]) return true;
        }
        return false;
    };
    parallel_for(spec.reps, spec.threads, [&](std::size_t r) {
        const MethodPValues p = split_methods(simulate_family(family, spec, r));
        ump_error[r] = any_false_rejection(p.ump) ? 1 : 0;
        rand2_error[r] = any_false_rejection(p.rand2) ? 1 : 0;
    });

    auto summarize = [&](const std::vector<char>& errors) {
        std::size_t hits = 0;
        for (char e : errors) hits += e != 0 ? 1 : 0;
        const double f = static_cast<double>(hits) / static_cast<double>(spec.reps);
        return FwerEstimate{f, std::sqrt(f * (1.0 - f) / static_cast<double>(spec.reps))};
    };
    result.ump = spec.methods.ump ? summarize(ump_error) : FwerEstimate{kNaN, kNaN};
    result.rand2 = spec.methods.rand2 ? summarize(rand2_error) : FwerEstimate{kNaN, kNaN};
    return result;
}

OracleReport oracle_sweep(std::span<const std::int64_t> ns, std::span<const double> thetas,
                          std::span<const EquivBounds> bounds, std::span<const double> t_grid,
                          std::span<const double> cs) {
    OracleReport report;
    for (const auto& b : bounds) {
        for (std::int64_t n : ns) {
            const EquivProblem problem(n, b.theta1, b.theta2);
            for (double theta : thetas) {
                for (double t : t_grid) {
                    const double dev = std::fabs(ump_cdf(problem, theta, t) -
                                                 exact_ump_cdf_oracle(problem, theta, t));
                    report.max_dev_ump = std::max(report.max_dev_ump, dev);
                    ++report.evaluations;
                    for (double c : cs) {
                        const double dev2 = std::fabs(rand2_cdf(problem, theta, t, c) -
                                                      exact_rand2_cdf_oracle(problem, theta, t, c));
                        report.max_dev_rand2 = std::max(report.max_dev_rand2, dev2);
                        ++report.evaluations;
                    }
                }
            }
        }
    }
    return report;
}

std::vector<EquivBounds> default_table_bounds() {
    return {{0.4791, 0.5413}, {0.4509, 0.5681}, {0.4444, 0.5946}, {0.4066, 0.6800},
            {0.3389, 0.7219}, {0.3188, 0.7478}, {0.3076, 0.7566}, {0.2963, 0.9029},
            {0.2725, 0.9319}, {0.2456, 0.9399}};
}

}  // namespace eqrand
