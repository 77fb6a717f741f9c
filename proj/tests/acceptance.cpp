// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "eqrand/cli.hpp"
#include "eqrand/harness.hpp"
#include "eqrand/power.hpp"
#include "eqrand/pvalues.hpp"
#include "eqrand/regions.hpp"

#include "ks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace eqrand;

namespace {

const std::filesystem::path kSnapshot = std::filesystem::path(EQRAND_TEST_DATA_DIR) / "regions_snapshot.csv";

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<double> t_grid() {
    std::vector<double> t;
    for (int i = 1; i < 100; ++i) t.push_back(i / 100.0);
    return t;
}

const std::vector<EquivBounds> kOracleBounds{{0.25, 0.75}, {0.3, 0.75}, {0.15, 0.45}};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome oracle_equivalence() {
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= 12; ++n) ns.push_back(n);
    std::vector<double> thetas;
    for (int i = 1; i <= 9; ++i) thetas.push_back(i / 10.0);
    const std::vector<double> cs{0.25, 0.5, 1.0};
    const auto start = std::chrono::steady_clock::now();
    const OracleReport r = oracle_sweep(ns, thetas, kOracleBounds, t_grid(), cs);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = r.max_dev_ump <= 1e-10 && r.max_dev_rand2 <= 1e-10 && secs < 60.0;
    return {pass, "max |ump - oracle| = " + fmt("%.2e", r.max_dev_ump) + ", max |rand2 - oracle| = " +
                      fmt("%.2e", r.max_dev_rand2) + ", " + std::to_string(r.evaluations) + " evaluations in " +
                      fmt("%.1f", secs) + " s"};
}

Outcome max_identity() {
    std::size_t cases = 0;
    std::size_t exact_mismatch = 0;
    double max_route_gap = 0.0;
    for (const auto& b : kOracleBounds) {
        for (std::int64_t n = 1; n <= 20; ++n) {
            const EquivProblem p(n, b.theta1, b.theta2);
            const BinomParams at1 = p.lower_lfc();
            const BinomParams at2 = p.upper_lfc();
            for (std::int64_t s = 0; s <= n; ++s) {
                for (int j = 0; j <= 20; ++j) {
                    const double u = j / 20.0;
                    const OneSidedPValues v = one_sided_pvalues(p, s, u);
                    const double ump = ump_pvalue(p, s, u);
                    if (ump != std::max(v.lower, v.upper)) ++exact_mismatch;
                    // Second route: smallest t at which both one-sided randomized tests reject.
                    auto rejects = [&](double t) {
                        const double a = (t - survival(at1, s)) / pmf(at1, s);
                        const double c = (t - cdf(at2, s - 1)) / pmf(at2, s);
                        return u <= std::min(a, c);
                    };
                    double lo = 0.0;
                    double hi = 1.0;
                    for (int it = 0; it < 80; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (rejects(mid) ? hi : lo) = mid;
                    }
                    max_route_gap = std::max(max_route_gap, std::fabs(hi - ump));
                    ++cases;
                }
            }
        }
    }
    return {exact_mismatch == 0 && max_route_gap < 1e-12,
            std::to_string(cases) + " cases, " + std::to_string(exact_mismatch) +
                " exact mismatches, max gap to rejection-set infimum " + fmt("%.2e", max_route_gap)};
}

Outcome validity() {
    const auto ts = t_grid();
    double worst = -1.0;
    for (const auto& b : kOracleBounds) {
        for (std::int64_t n = 1; n <= 100; ++n) {
            const EquivProblem p(n, b.theta1, b.theta2);
            for (double theta : {b.theta1, b.theta2}) {
                for (double t : ts) {
                    worst = std::max(worst, ump_cdf(p, theta, t) - t);
                    for (double c : {0.25, 0.5, 1.0}) worst = std::max(worst, rand2_cdf(p, theta, t, c) - t);
                }
            }
        }
    }
    const RegionLoad regions = load_regions(kSnapshot);
    std::vector<HypothesisConfig> configs;
    for (std::size_t i = 0; i < regions.records.size(); ++i)
        configs.push_back({regions.records[i].confirmed, i % 2 == 0 ? 0.3076 : 0.7566, 0.3076, 0.7566});
    const HypothesisFamily family = make_family(configs);
    SimulationSpec spec;
    std::vector<double> pooled;
    for (std::uint64_t r = 0; pooled.size() < 100000; ++r)
        for (const auto& d : simulate_family(family, spec, r)) pooled.push_back(d.p_rand2);
    const double d = ks::statistic(pooled);
    const double crit = ks::critical_1pct(pooled.size());
    return {worst <= 1e-9 && d < crit, "max F(t) - t at boundaries = " + fmt("%.2e", worst) + "; KS D = " +
                                           fmt("%.5f", d) + " < " + fmt("%.5f", crit) + " on " +
                                           std::to_string(pooled.size()) + " pooled draws"};
}

Outcome power_paradox() {
    const auto start = std::chrono::steady_clock::now();
    const auto centre = detect_nonmonotone(power_vs_n({0.25, 0.75}, 0.5, 0.5, 0.05, 20, 300));
    const auto wide = detect_nonmonotone(power_vs_n({0.25, 0.75}, 0.4, 0.5, 0.05, 1, 60));
    const auto narrow = detect_nonmonotone(power_vs_n({0.35, 0.75}, 0.4, 0.5, 0.05, 1, 60));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::size_t wu = count_steps(wide, Method::ump);
    const std::size_t wr = count_steps(wide, Method::rand2);
    const std::size_t nu = count_steps(narrow, Method::ump);
    const std::size_t nr = count_steps(narrow, Method::rand2);
    const bool pass = centre.empty() && wu > 0 && wr > 0 && nu < wu && secs < 10.0;
    return {pass, "theta=0.5 drops " + std::to_string(centre.size()) + "; theta=0.4 drops ump " +
                      std::to_string(wu) + " rand2 " + std::to_string(wr) + " (theta1=0.25) vs ump " +
                      std::to_string(nu) + " rand2 " + std::to_string(nr) + " (theta1=0.35); " +
                      fmt("%.2f", secs) + " s"};
}

Outcome conservativity() {
    const auto ts = t_grid();
    const CurveSeries c50 = cdf_curve({50, 0.25, 0.75}, 0.2, 0.5, ts);
    const CurveSeries c100 = cdf_curve({100, 0.25, 0.75}, 0.2, 0.5, ts);
    bool ordered = true;
    for (std::size_t i = 0; i < ts.size(); ++i) ordered = ordered && c50.rand2[i] >= c50.ump[i];
    auto gap = [&](const CurveSeries& s, bool rand2) {
        double g = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) g = std::max(g, ts[i] - (rand2 ? s.rand2[i] : s.ump[i]));
        return g;
    };
    const double u50 = gap(c50, false), u100 = gap(c100, false);
    const double r50 = gap(c50, true), r100 = gap(c100, true);
    return {ordered && u100 > u50 && r100 < r50,
            std::string("rand2 >= ump pointwise: ") + (ordered ? "yes" : "no") + "; sup gap ump " +
                fmt("%.4f", u50) + " -> " + fmt("%.4f", u100) + ", rand2 " + fmt("%.4f", r50) + " -> " +
                fmt("%.4f", r100)};
}

Outcome midpoint() {
    const MaxPowerPair m = argmax_power_theta({50, 0.15, 0.45}, 0.5, 0.05, 0.005);
    const bool pass = std::fabs(m.ump.argmax_theta - 0.30) <= 0.005 + 1e-12;
    return {pass, "UMP argmax theta = " + fmt("%.3f", m.ump.argmax_theta) + " (power " +
                      fmt("%.4f", m.ump.max_power) + "), target 0.300 +/- 0.005; RAND2 argmax " +
                      fmt("%.3f", m.rand2.argmax_theta)};
}

Outcome table_reproduction() {
    struct Ref {
        std::size_t k0;
        double ump;
        double rand2;
    };
    const std::vector<Ref> ref{{45, 90.0050, 44.3586}, {43, 86.0006, 43.1554}, {40, 80.0034, 39.4800},
                               {34, 67.9996, 33.5392}, {31, 60.0002, 33.7460}, {29, 55.9958, 28.2846},
                               {28, 55.9958, 28.6418}, {16, 32.0070, 15.2562}, {12, 26.0192, 12.9908},
                               {12, 24.6468, 13.9496}};
    const auto records = load_regions(kSnapshot).records;
    const auto bounds = default_table_bounds();
    SimulationSpec spec;
    spec.threads = 0;
    bool pass = true;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const TableRow row = algorithm1_run(records, bounds[i].theta1, bounds[i].theta2, spec);
        const bool k0_ok = row.k0 == ref[i].k0;
        const bool r_ok = std::fabs(row.k0_hat_rand2 - ref[i].rand2) <= std::max(1.5, 4 * row.stderr_rand2);
        const bool u_ok = std::fabs(row.k0_hat_ump - ref[i].ump) <= std::max(2.5, 4 * row.stderr_ump);
        const double k0 = static_cast<double>(row.k0);
        const bool order_ok = std::fabs(row.k0_hat_rand2 - k0) < std::fabs(row.k0_hat_ump - k0);
        pass = pass && k0_ok && r_ok && u_ok && order_ok;
        detail << "\n    row " << i + 1 << ": k0 " << row.k0 << (k0_ok ? "" : " (MISMATCH)") << ", rand2 "
               << fmt("%.4f", row.k0_hat_rand2) << " vs " << fmt("%.4f", ref[i].rand2) << (r_ok ? "" : " (OUT)")
               << ", ump " << fmt("%.4f", row.k0_hat_ump) << " vs " << fmt("%.4f", ref[i].ump)
               << (u_ok ? "" : " (OUT)") << (order_ok ? "" : ", ordering violated");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {pass && secs < 300.0, "r=10000, " + fmt("%.1f", secs) + " s" + detail.str()};
}

Outcome lambda_sensitivity() {
    const auto records = load_regions(kSnapshot).records;
    const HypothesisFamily family = build_family(records, 0.2963, 0.7566);
    SimulationSpec spec;
    std::vector<double> grid;
    for (int i = 1; i <= 8; ++i) grid.push_back(i / 10.0);
    const CurveSeries s = lambda_sweep(family_generator(family, spec), grid, spec.reps, 0);
    const double k0 = static_cast<double>(family.k0);
    bool diverging = true;
    bool rand2_close = true;
    std::ostringstream detail;
    detail << "k0 " << family.k0 << "; ump";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (j > 0) diverging = diverging && std::fabs(s.ump[j] - k0) > std::fabs(s.ump[j - 1] - k0);
        rand2_close = rand2_close && std::fabs(s.rand2[j] - k0) <= 3.0;
        detail << ' ' << fmt("%.2f", s.ump[j]);
    }
    detail << "; rand2";
    for (double v : s.rand2) detail << ' ' << fmt("%.2f", v);
    return {family.k0 == 28 && diverging && rand2_close, detail.str()};
}

Outcome fwer_control() {
    const auto records = load_regions(kSnapshot).records;
    std::vector<HypothesisConfig> configs;
    for (std::size_t i = 0; i < records.size(); ++i)
        configs.push_back({records[i].confirmed, i % 2 == 0 ? 0.3076 : 0.7566, 0.3076, 0.7566});
    const HypothesisFamily family = make_family(configs);
    SimulationSpec spec;
    spec.threads = 0;
    const FwerResult f = fwer_estimate(family, spec);
    const bool pass = family.k() == 47 && family.k0 == 47 && f.rand2.fwer <= 0.05 + 3 * f.rand2.stderr;
    return {pass, "k " + std::to_string(family.k()) + ", rand2 FWER " + fmt("%.4f", f.rand2.fwer) + " (se " +
                      fmt("%.4f", f.rand2.stderr) + ", bound " + fmt("%.4f", 0.05 + 3 * f.rand2.stderr) +
                      "); ump FWER " + fmt("%.4f", f.ump.fwer)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "eqrand_acceptance";
    std::filesystem::create_directories(dir);
    const std::string regions = kSnapshot.string();
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"table.csv", {"simulate-table", "--regions", regions, "--reps", "1000", "--seed", "7"}},
        {"table.json", {"simulate-table", "--regions", regions, "--reps", "300", "--seed", "7"}},
        {"sweep.csv", {"lambda-sweep", "--regions", regions, "--theta1", "0.2963", "--theta2", "0.7566", "--reps", "500"}},
        {"fwer.csv", {"fwer", "--regions", regions, "--theta1", "0.3076", "--theta2", "0.7566", "--family", "all-null",
                      "--reps", "500"}},
        {"pi0.json", {"estimate-pi0", "--regions", regions, "--theta1", "0.4791", "--theta2", "0.5413", "--replicate", "3"}},
        {"pvalue.csv", {"pvalue", "--n", "40", "--s", "17", "--theta1", "0.25", "--theta2", "0.75", "--seed", "9"}},
    };
    std::size_t identical = 0;
    std::ostringstream sink;
    for (const auto& [name, args] : commands) {
        std::vector<std::string> files;
        for (const char* threads : {"1", "4"}) {
            auto a = args;
            const auto path = dir / (std::string(threads) + "_" + name);
            if (args.front() != "pvalue" && args.front() != "estimate-pi0") a.insert(a.end(), {"--threads", threads});
            a.insert(a.end(), {"--out", path.string()});
            if (run_cli(a, sink, sink) != 0) return {false, "command failed: " + args.front()};
            files.push_back(slurp(path));
        }
        if (!files[0].empty() && files[0] == files[1]) ++identical;
    }
    return {identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) +
                                              " output files byte-identical across runs (1 vs 4 threads)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 oracle equivalence", oracle_equivalence},
        {"2 UMP p-value is the max of the one-sided pair", max_identity},
        {"3 validity at the boundaries", validity},
        {"4 power paradox in n", power_paradox},
        {"5 conservativity under the null", conservativity},
        {"6 UMP power peaks at the interval midpoint", midpoint},
        {"7 k0 table reproduction", table_reproduction},
        {"8 lambda sensitivity", lambda_sensitivity},
        {"9 FWER control", fwer_control},
        {"10 determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
