#include "eqrand/pvalues.hpp"

#include "eqrand/errors.hpp"

#include <algorithm>
#include <string>

namespace eqrand {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

void check_statistic(const EquivProblem& problem, std::int64_t s) {
    if (s < 0 || s > problem.n())
        throw DomainError("statistic s=" + std::to_string(s) + " outside 0.." +
                          std::to_string(problem.n()));
}

// P(lo < T < hi) taken from whichever tail avoids cancellation.
double open_interval_mass(const BinomParams& b, std::int64_t lo, std::int64_t hi) {
    if (hi - lo < 2) return 0.0;
    const double below = cdf(b, lo);
    if (below < 0.5) return std::max(0.0, cdf(b, hi - 1) - below);
    return std::max(0.0, survival(b, lo) - survival(b, hi - 1));
}

}  // namespace

EquivProblem::EquivProblem(std::int64_t n, double theta1, double theta2)
    : n_(n), theta1_(theta1), theta2_(theta2) {
    if (n < 1) throw DomainError("sample size must be >= 1, got " + std::to_string(n));
    if (!(theta1 > 0.0 && theta1 < theta2 && theta2 < 1.0))
        throw DomainError("equivalence bounds must satisfy 0 < theta1 < theta2 < 1, got (" +
                          std::to_string(theta1) + ", " + std::to_string(theta2) + ")");
}

OneSidedPValues one_sided_pvalues(const EquivProblem& problem, std::int64_t s, double u) {
    check_statistic(problem, s);
    check_unit(u, "randomizer u");
    const BinomParams at1 = problem.lower_lfc();
    const BinomParams at2 = problem.upper_lfc();
    OneSidedPValues p;
    p.upper = std::min(1.0, survival(at1, s) + u * pmf(at1, s));
    p.lower = std::min(1.0, cdf(at2, s - 1) + u * pmf(at2, s));
    return p;
}

double ump_pvalue(const EquivProblem& problem, std::int64_t s, double u) {
    const OneSidedPValues p = one_sided_pvalues(problem, s, u);
    return std::max(p.lower, p.upper);
}

ConstantsBundle constants(const EquivProblem& problem, double level_t) {
    if (!(level_t > 0.0 && level_t < 1.0))
        throw DomainError("level t must lie in (0,1), got " + std::to_string(level_t));
    const BinomParams at1 = problem.lower_lfc();
    const BinomParams at2 = problem.upper_lfc();

    ConstantsBundle k;
    k.level_t = level_t;
    k.c_n = quantile(at1, 1.0 - level_t);
    k.d_n = quantile(at2, level_t);

    // A point mass that underflows to zero carries no weight either way.
    const auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
    const double raw_gamma = ratio(cdf(at1, k.c_n) - (1.0 - level_t), pmf(at1, k.c_n));
    const double raw_delta = ratio(level_t - cdf(at2, k.d_n - 1), pmf(at2, k.d_n));
    k.gamma_n = clamp01(raw_gamma);
    k.delta_n = clamp01(raw_delta);
    k.clamped = raw_gamma != k.gamma_n || raw_delta != k.delta_n;
    return k;
}

double ump_cdf(const EquivProblem& problem, double theta, double t) {
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("parameter theta must lie in (0,1), got " + std::to_string(theta));
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;

    const ConstantsBundle k = constants(problem, t);
    const BinomParams at = {problem.n(), theta};

    // P^UMP <= t needs T > C_n (or T = C_n, U <= gamma_n) for the upper test and
    // T < D_n (or T = D_n, U <= delta_n) for the lower test, with one shared U.
    double value = 0.0;
    if (k.c_n < k.d_n) {
        value = open_interval_mass(at, k.c_n, k.d_n) + k.gamma_n * pmf(at, k.c_n) +
                k.delta_n * pmf(at, k.d_n);
    } else if (k.c_n == k.d_n) {
        value = std::min(k.gamma_n, k.delta_n) * pmf(at, k.c_n);
    }
    return clamp01(value);
}

double rand2_pvalue(double p_ump, double u_tilde, double c) {
    check_unit(p_ump, "p_ump");
    check_unit(u_tilde, "u_tilde");
    check_unit(c, "tuning constant c");
    if (c == 0.0) return u_tilde;
    if (c == 1.0) return p_ump;
    return p_ump >= c ? u_tilde : p_ump / c;
}

double rand2_cdf(const EquivProblem& problem, double theta, double t, double c) {
    check_unit(c, "tuning constant c");
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("parameter theta must lie in (0,1), got " + std::to_string(theta));
    if (c == 0.0) return clamp01(t);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double value = t * (1.0 - ump_cdf(problem, theta, c)) + ump_cdf(problem, theta, t * c);
    return clamp01(value);
}

PValueDraw make_draw(const EquivProblem& problem, std::int64_t s, double u, double u_tilde,
                     double c) {
    const OneSidedPValues p = one_sided_pvalues(problem, s, u);
    PValueDraw d;
    d.s = s;
    d.u = u;
    d.u_tilde = u_tilde;
    d.c = c;
    d.p_lower = p.lower;
    d.p_upper = p.upper;
    d.p_ump = std::max(p.lower, p.upper);
    d.p_rand2 = rand2_pvalue(d.p_ump, u_tilde, c);
    return d;
}

}  // namespace eqrand
