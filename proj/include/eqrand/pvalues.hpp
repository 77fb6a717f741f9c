#pragma once

#include "eqrand/binom.hpp"

#include <cstdint>

namespace eqrand {

// Interval hypothesis H: theta outside (theta1, theta2) vs K: theta inside,
// for T = number of successes in n Bernoulli trials.
class EquivProblem {
public:
    EquivProblem(std::int64_t n, double theta1, double theta2);

    std::int64_t n() const noexcept { return n_; }
    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }
    double delta() const noexcept { return theta2_ - theta1_; }

    BinomParams lower_lfc() const { return {n_, theta1_}; }
    BinomParams upper_lfc() const { return {n_, theta2_}; }

private:
    std::int64_t n_;
    double theta1_;
    double theta2_;
};

// Critical constants C_n, D_n and randomization weights gamma_n, delta_n at level t.
struct ConstantsBundle {
    double level_t = 0.0;
    std::int64_t c_n = 0;
    std::int64_t d_n = 0;
    double gamma_n = 0.0;
    double delta_n = 0.0;
    bool clamped = false;  // a raw weight fell outside [0,1]
};

struct OneSidedPValues {
    double lower = 0.0;  // test of theta >= theta2, evaluated at theta2
    double upper = 0.0;  // test of theta <= theta1, evaluated at theta1
};

// One realized test with both randomizers.
struct PValueDraw {
    std::int64_t s = 0;
    double u = 0.0;
    double u_tilde = 0.0;
    double c = 0.0;
    double p_lower = 0.0;
    double p_upper = 0.0;
    double p_ump = 0.0;
    double p_rand2 = 0.0;
};

// Randomized one-sided p-values at the observed statistic s:
//   upper = P_theta1(T > s) + u P_theta1(T = s)
//   lower = P_theta2(T <= s - 1) + u P_theta2(T = s)
OneSidedPValues one_sided_pvalues(const EquivProblem& problem, std::int64_t s, double u);

// max(lower, upper) with the same u in both.
double ump_pvalue(const EquivProblem& problem, std::int64_t s, double u);

ConstantsBundle constants(const EquivProblem& problem, double level_t);

// P_theta(P^UMP <= t). Exact for the shared-randomizer UMP p-value, including
// the small-n regime where C_n >= D_n.
double ump_cdf(const EquivProblem& problem, double theta, double t);

// Second-stage randomization: u_tilde if p_ump >= c, else p_ump / c.
// c = 0 returns u_tilde and c = 1 returns p_ump.
double rand2_pvalue(double p_ump, double u_tilde, double c);

// P_theta(P^rand2 <= t) = t P(P^UMP > c) + P(P^UMP <= t c). c = 0 gives t.
double rand2_cdf(const EquivProblem& problem, double theta, double t, double c);

PValueDraw make_draw(const EquivProblem& problem, std::int64_t s, double u, double u_tilde,
                     double c);

}  // namespace eqrand
