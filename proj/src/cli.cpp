#include "eqrand/cli.hpp"

#include "eqrand/errors.hpp"
#include "eqrand/harness.hpp"
#include "eqrand/pi0.hpp"
#include "eqrand/power.hpp"
#include "eqrand/pvalues.hpp"
#include "eqrand/regions.hpp"
#include "eqrand/rng.hpp"
#include "eqrand/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#ifndef EQRAND_DEFAULT_DATA_DIR
#define EQRAND_DEFAULT_DATA_DIR "data"
#endif

namespace eqrand {

namespace {

constexpr const char* kToolVersion = "eqrand 0.1.0";
constexpr const char* kRegionsFile = "regions_snapshot.csv";

enum class Format { csv, json };

struct OutputOpts {
    std::string path;
    std::string format = "auto";

    Format resolve() const {
        if (format == "json") return Format::json;
        if (format == "csv") return Format::csv;
        return path.size() >= 5 && path.ends_with(".json") ? Format::json : Format::csv;
    }
};

void add_output(CLI::App* sub, OutputOpts& o) {
    sub->add_option("-o,--out", o.path, "Output file (default: stdout)");
    sub->add_option("--format", o.format, "csv, json, or auto (from the --out extension)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
}

void emit(const OutputOpts& o, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (o.path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(o.path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + o.path + " for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("write to " + o.path + " failed");
}

Provenance provenance(const std::string& command) {
    Provenance p;
    p["tool"] = kToolVersion;
    p["command"] = command;
    return p;
}

struct RegionOpts {
    std::string path;
    std::string columns;

    std::string resolved() const {
        return path.empty() ? (default_data_dir() / kRegionsFile).string() : path;
    }
};

void add_regions(CLI::App* sub, RegionOpts& r) {
    sub->add_option("--regions", r.path,
                    "Regions CSV (default: $EQRAND_DATA_DIR/regions_snapshot.csv)");
    sub->add_option("--columns", r.columns,
                    "Column remap, e.g. region=Province_State,confirmed=Confirmed");
}

std::vector<RegionRecord> load(const RegionOpts& r, Provenance& prov, std::ostream& err) {
    const std::string path = r.resolved();
    RegionLoad loaded = load_regions(path, parse_column_mapping(r.columns));
    err << "regions: kept " << loaded.records.size() << ", dropped " << loaded.dropped.size()
        << " (" << path << ")\n";
    prov["regions"] = std::filesystem::path(path).filename().string();
    if (!r.columns.empty()) prov["columns"] = r.columns;
    prov["regions_kept"] = loaded.records.size();
    prov["regions_dropped"] = loaded.dropped.size();
    return std::move(loaded.records);
}

struct SimOpts {
    std::uint64_t seed = kDefaultSeed;
    std::size_t reps = 10000;
    double c = 0.5;
    double lambda = 0.5;
    double alpha = 0.05;
    std::string methods = "ump,rand2";
    unsigned threads = 0;

    SimulationSpec spec() const {
        SimulationSpec s;
        s.seed = seed;
        s.reps = reps;
        s.c = c;
        s.lambda = lambda;
        s.alpha = alpha;
        s.threads = threads;
        s.methods.ump = methods.find("ump") != std::string::npos;
        s.methods.rand2 = methods.find("rand2") != std::string::npos;
        if (!s.methods.ump && !s.methods.rand2) throw ConfigError("--methods selects nothing");
        validate(s);
        return s;
    }

    void echo(Provenance& p, bool with_alpha) const {
        p["seed"] = seed;
        p["reps"] = reps;
        p["c"] = c;
        p["lambda"] = lambda;
        if (with_alpha) p["alpha"] = alpha;
        p["methods"] = methods;
    }
};

void add_seed(CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
}

void add_threads(CLI::App* sub, unsigned& threads) {
    sub->add_option("--threads", threads, "Worker threads, 0 = all cores (output does not depend on it)")
        ->capture_default_str();
}

void add_sim(CLI::App* sub, SimOpts& s, bool with_lambda, bool with_alpha) {
    add_seed(sub, s.seed);
    sub->add_option("--reps", s.reps, "Monte Carlo replicates")->capture_default_str();
    sub->add_option("--c", s.c, "Second-stage cut-off c")->capture_default_str();
    if (with_lambda) sub->add_option("--lambda", s.lambda, "Estimator tuning lambda")->capture_default_str();
    if (with_alpha) sub->add_option("--alpha", s.alpha, "Familywise level")->capture_default_str();
    sub->add_option("--methods", s.methods, "Comma list of ump, rand2")->capture_default_str();
    add_threads(sub, s.threads);
}

std::vector<EquivBounds> parse_bounds(const std::string& text) {
    std::vector<EquivBounds> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("bounds entry '" + item + "' is not theta1:theta2");
        try {
            out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        } catch (const std::logic_error&) {
            throw ConfigError("bounds entry '" + item + "' is not numeric");
        }
    }
    if (out.empty()) throw ConfigError("no bounds given");
    return out;
}

std::vector<EquivBounds> read_bounds_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::vector<EquivBounds> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            if (line.find("theta1") != std::string::npos) continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("row '" + line + "' needs theta1,theta2");
        out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    if (out.empty()) throw ConfigError(path + " lists no rows");
    return out;
}

std::vector<double> read_pvalues(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::vector<double> p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        for (char& ch : line) if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream row(line);
        std::string tok;
        while (row >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != tok.size()) throw DomainError("'" + tok + "' in " + path + " is not a number");
            if (!(v >= 0.0 && v <= 1.0)) throw DomainError("p-value " + tok + " outside [0,1]");
            p.push_back(v);
        }
    }
    if (p.empty()) throw DomainError(path + " contains no p-values");
    return p;
}

std::string scientific(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void write_series(const OutputOpts& o, std::ostream& out, const CurveSeries& s, const Provenance& p) {
    emit(o, out, [&](std::ostream& os) {
        if (o.resolve() == Format::json) write_series_json(os, s, p);
        else write_series_csv(os, s, p);
    });
}

// Writes a single record as "k1,k2,...\nv1,v2,..." or a JSON object.
void write_record(const OutputOpts& o, std::ostream& out, const nlohmann::ordered_json& record,
                  const Provenance& p) {
    emit(o, out, [&](std::ostream& os) {
        if (o.resolve() == Format::json) {
            nlohmann::ordered_json doc;
            doc["provenance"] = p;
            doc["result"] = record;
            os << doc.dump(2) << '\n';
            return;
        }
        write_provenance_csv(os, p);
        std::string keys;
        std::string values;
        for (const auto& [k, v] : record.items()) {
            if (!keys.empty()) {
                keys += ',';
                values += ',';
            }
            keys += k;
            if (v.is_number_float()) values += format_number(v.get<double>());
            else if (v.is_string()) values += v.get<std::string>();
            else if (v.is_null()) values += "nan";
            else values += v.dump();
        }
        os << keys << '\n' << values << '\n';
    });
}

}  // namespace

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("EQRAND_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return EQRAND_DEFAULT_DATA_DIR;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    try {
        if (text.find(':') != std::string::npos) {
            const auto a = text.find(':');
            const auto b = text.find(':', a + 1);
            if (b == std::string::npos) throw ConfigError("range grid needs start:stop:step");
            const double start = std::stod(text.substr(0, a));
            const double stop = std::stod(text.substr(a + 1, b - a - 1));
            const double step = std::stod(text.substr(b + 1));
            if (!(step > 0.0) || stop < start) throw ConfigError("empty grid '" + text + "'");
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const ConfigError*>(&e) != nullptr) throw;
        throw ConfigError("cannot parse grid '" + text + "'");
    }
    if (grid.empty()) throw ConfigError("empty grid '" + text + "'");
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Randomized p-values for binomial equivalence tests and k0 estimation", "eqrand"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // pvalue
    struct {
        std::int64_t n = 0, s = 0;
        double theta1 = 0, theta2 = 0, c = 0.5, u = 0, u_tilde = 0;
        std::uint64_t seed = kDefaultSeed;
        OutputOpts o;
    } pv;
    auto* pvalue = app.add_subcommand("pvalue", "UMP and RAND2 p-values of a single test");
    pvalue->add_option("--n", pv.n, "Number of trials")->required();
    pvalue->add_option("--s", pv.s, "Observed successes")->required();
    pvalue->add_option("--theta1", pv.theta1, "Lower equivalence bound")->required();
    pvalue->add_option("--theta2", pv.theta2, "Upper equivalence bound")->required();
    pvalue->add_option("--c", pv.c, "Second-stage cut-off c")->capture_default_str();
    auto* u_opt = pvalue->add_option("--u", pv.u, "First-stage uniform (default: drawn from --seed)");
    auto* ut_opt = pvalue->add_option("--u-tilde", pv.u_tilde, "Second-stage uniform (default: drawn from --seed)");
    add_seed(pvalue, pv.seed);
    add_output(pvalue, pv.o);

    // cdf
    struct {
        std::int64_t n = 0;
        double theta = 0, theta1 = 0, theta2 = 0, c = 0.5;
        std::string t_grid = "0.01:0.99:0.01";
        unsigned threads = 0;
        OutputOpts o;
    } cd;
    auto* cdf_cmd = app.add_subcommand("cdf", "CDFs of both p-values over a t grid");
    cdf_cmd->add_option("--n", cd.n, "Number of trials")->required();
    cdf_cmd->add_option("--theta", cd.theta, "True parameter")->required();
    cdf_cmd->add_option("--theta1", cd.theta1, "Lower equivalence bound")->required();
    cdf_cmd->add_option("--theta2", cd.theta2, "Upper equivalence bound")->required();
    cdf_cmd->add_option("--c", cd.c, "Second-stage cut-off c")->capture_default_str();
    cdf_cmd->add_option("--t-grid", cd.t_grid, "start:stop:step or comma list")->capture_default_str();
    add_threads(cdf_cmd, cd.threads);
    add_output(cdf_cmd, cd.o);

    // power-vs-n
    struct {
        double theta = 0, theta1 = 0, theta2 = 0, c = 0.5, t = 0.05;
        std::int64_t n_min = 1, n_max = 100;
        unsigned threads = 0;
        OutputOpts o;
    } pn;
    auto* pvn = app.add_subcommand("power-vs-n", "Power at a fixed alternative across sample sizes");
    pvn->add_option("--theta", pn.theta, "Alternative parameter")->required();
    pvn->add_option("--theta1", pn.theta1, "Lower equivalence bound")->required();
    pvn->add_option("--theta2", pn.theta2, "Upper equivalence bound")->required();
    pvn->add_option("--c", pn.c, "Second-stage cut-off c")->capture_default_str();
    pvn->add_option("--t", pn.t, "Significance level")->capture_default_str();
    pvn->add_option("--n-min", pn.n_min, "Smallest sample size")->capture_default_str();
    pvn->add_option("--n-max", pn.n_max, "Largest sample size")->capture_default_str();
    add_threads(pvn, pn.threads);
    add_output(pvn, pn.o);

    // max-power
    struct {
        std::int64_t n = 0;
        double theta1 = 0, theta2 = 0, c = 0.5, t = 0.05, step = 0.005;
        std::string curve_out;
        unsigned threads = 0;
        OutputOpts o;
    } mp;
    auto* maxp = app.add_subcommand("max-power", "Parameter value maximizing power");
    maxp->add_option("--n", mp.n, "Number of trials")->required();
    maxp->add_option("--theta1", mp.theta1, "Lower equivalence bound")->required();
    maxp->add_option("--theta2", mp.theta2, "Upper equivalence bound")->required();
    maxp->add_option("--c", mp.c, "Second-stage cut-off c")->capture_default_str();
    maxp->add_option("--t", mp.t, "Significance level")->capture_default_str();
    maxp->add_option("--step", mp.step, "Grid step over (theta1, theta2)")->capture_default_str();
    maxp->add_option("--curve-out", mp.curve_out, "Also write the scanned power curve here");
    add_threads(maxp, mp.threads);
    add_output(maxp, mp.o);

    // power-vs-delta
    struct {
        std::int64_t n = 0;
        double theta = 0, c = 0.5, t = 0.05;
        std::string delta_grid = "0.05:0.95:0.01";
        std::string centering = "symmetric";
        unsigned threads = 0;
        OutputOpts o;
    } pd;
    auto* pvd = app.add_subcommand("power-vs-delta", "Power against the equivalence limit");
    pvd->add_option("--n", pd.n, "Number of trials")->required();
    pvd->add_option("--theta", pd.theta, "Alternative parameter")->required();
    pvd->add_option("--c", pd.c, "Second-stage cut-off c")->capture_default_str();
    pvd->add_option("--t", pd.t, "Significance level")->capture_default_str();
    pvd->add_option("--delta-grid", pd.delta_grid, "start:stop:step or comma list")->capture_default_str();
    pvd->add_option("--centering", pd.centering, "symmetric or sweep")->capture_default_str();
    add_threads(pvd, pd.threads);
    add_output(pvd, pd.o);

    // estimate-pi0
    struct {
        std::string pvalues;
        double lambda = 0.5, theta1 = 0, theta2 = 0, c = 0.5;
        bool cap = false;
        std::string method = "rand2";
        std::uint64_t seed = kDefaultSeed, replicate = 0;
        RegionOpts r;
        OutputOpts o;
    } ep;
    auto* est = app.add_subcommand("estimate-pi0",
                                   "k0 estimate from a p-value file or one simulated replicate of the regions family");
    est->add_option("--pvalues", ep.pvalues, "File of p-values (whitespace or comma separated)");
    est->add_option("--lambda", ep.lambda, "Estimator tuning lambda")->capture_default_str();
    est->add_flag("--cap", ep.cap, "Cap k0_hat at k");
    est->add_option("--theta1", ep.theta1, "Lower equivalence bound (simulated family)");
    est->add_option("--theta2", ep.theta2, "Upper equivalence bound (simulated family)");
    est->add_option("--c", ep.c, "Second-stage cut-off c")->capture_default_str();
    est->add_option("--method", ep.method, "ump or rand2")
        ->check(CLI::IsMember({"ump", "rand2"}))
        ->capture_default_str();
    est->add_option("--replicate", ep.replicate, "Replicate index")->capture_default_str();
    add_seed(est, ep.seed);
    add_regions(est, ep.r);
    add_output(est, ep.o);

    // lambda-sweep
    struct {
        double theta1 = 0, theta2 = 0;
        std::string grid = "0.1:0.8:0.1";
        SimOpts sim;
        RegionOpts r;
        OutputOpts o;
    } ls;
    auto* lsw = app.add_subcommand("lambda-sweep", "Mean k0 estimates across lambda values");
    lsw->add_option("--theta1", ls.theta1, "Lower equivalence bound")->required();
    lsw->add_option("--theta2", ls.theta2, "Upper equivalence bound")->required();
    lsw->add_option("--lambda-grid", ls.grid, "start:stop:step or comma list")->capture_default_str();
    add_sim(lsw, ls.sim, false, false);
    add_regions(lsw, ls.r);
    add_output(lsw, ls.o);

    // simulate-table
    struct {
        std::string bounds;
        std::string rows;
        SimOpts sim;
        RegionOpts r;
        OutputOpts o;
    } st;
    auto* tab = app.add_subcommand("simulate-table", "Mean k0 estimates for a list of (theta1, theta2) rows");
    tab->add_option("--bounds", st.bounds, "Rows as theta1:theta2,theta1:theta2,...");
    tab->add_option("--rows", st.rows, "CSV file with columns theta1,theta2");
    add_sim(tab, st.sim, true, false);
    add_regions(tab, st.r);
    add_output(tab, st.o);

    // fwer
    struct {
        double theta1 = 0, theta2 = 0;
        std::string family = "regions";
        SimOpts sim;
        RegionOpts r;
        OutputOpts o;
    } fw;
    auto* fwer = app.add_subcommand("fwer", "Monte Carlo familywise error of the adaptive Bonferroni plug-in");
    fwer->add_option("--theta1", fw.theta1, "Lower equivalence bound")->required();
    fwer->add_option("--theta2", fw.theta2, "Upper equivalence bound")->required();
    fwer->add_option("--family", fw.family,
                     "regions: true rates from the data; all-null: every region at alternating bounds")
        ->check(CLI::IsMember({"regions", "all-null"}))
        ->capture_default_str();
    add_sim(fwer, fw.sim, true, true);
    add_regions(fwer, fw.r);
    add_output(fwer, fw.o);

    // oracle-check
    struct {
        std::int64_t n_max = 12;
        std::string thetas = "0.1:0.9:0.1";
        std::string bounds = "0.25:0.75,0.3:0.75,0.15:0.45";
        std::string t_grid = "0.01:0.99:0.01";
        std::string cs = "0.25,0.5,1";
        double tol = 1e-10;
        OutputOpts o;
    } oc;
    auto* orc = app.add_subcommand("oracle-check", "Compare analytic CDFs with exact enumeration");
    orc->add_option("--n-max", oc.n_max, "Check n = 1..n-max")->capture_default_str();
    orc->add_option("--thetas", oc.thetas, "Parameter grid")->capture_default_str();
    orc->add_option("--bounds", oc.bounds, "theta1:theta2 list")->capture_default_str();
    orc->add_option("--t-grid", oc.t_grid, "t grid")->capture_default_str();
    orc->add_option("--c-values", oc.cs, "c grid")->capture_default_str();
    orc->add_option("--tol", oc.tol, "Maximum allowed deviation")->capture_default_str();
    add_output(orc, oc.o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (pvalue->parsed()) {
            const EquivProblem problem(pv.n, pv.theta1, pv.theta2);
            const UniformStream stream = rng_stream(pv.seed, 0, 0);
            const double u = u_opt->count() > 0 ? pv.u : stream.at(1);
            const double u_tilde = ut_opt->count() > 0 ? pv.u_tilde : stream.at(2);
            const PValueDraw d = make_draw(problem, pv.s, u, u_tilde, pv.c);
            Provenance p = provenance("pvalue");
            p["n"] = pv.n;
            p["s"] = pv.s;
            p["theta1"] = pv.theta1;
            p["theta2"] = pv.theta2;
            p["c"] = pv.c;
            if (u_opt->count() == 0 || ut_opt->count() == 0) p["seed"] = pv.seed;
            nlohmann::ordered_json r;
            r["u"] = d.u;
            r["u_tilde"] = d.u_tilde;
            r["p_lower"] = d.p_lower;
            r["p_upper"] = d.p_upper;
            r["p_ump"] = d.p_ump;
            r["p_rand2"] = d.p_rand2;
            write_record(pv.o, out, r, p);
        } else if (cdf_cmd->parsed()) {
            const EquivProblem problem(cd.n, cd.theta1, cd.theta2);
            const CurveSeries s = cdf_curve(problem, cd.theta, cd.c, parse_grid(cd.t_grid), cd.threads);
            Provenance p = provenance("cdf");
            p["n"] = cd.n;
            p["theta"] = cd.theta;
            p["theta1"] = cd.theta1;
            p["theta2"] = cd.theta2;
            p["c"] = cd.c;
            p["t_grid"] = cd.t_grid;
            write_series(cd.o, out, s, p);
        } else if (pvn->parsed()) {
            const CurveSeries s = power_vs_n({pn.theta1, pn.theta2}, pn.theta, pn.c, pn.t, pn.n_min,
                                             pn.n_max, pn.threads);
            const auto steps = detect_nonmonotone(s);
            err << "non-monotone steps: ump " << count_steps(steps, Method::ump) << ", rand2 "
                << count_steps(steps, Method::rand2) << '\n';
            Provenance p = provenance("power-vs-n");
            p["theta"] = pn.theta;
            p["theta1"] = pn.theta1;
            p["theta2"] = pn.theta2;
            p["c"] = pn.c;
            p["t"] = pn.t;
            p["n_min"] = pn.n_min;
            p["n_max"] = pn.n_max;
            write_series(pn.o, out, s, p);
        } else if (maxp->parsed()) {
            const EquivProblem problem(mp.n, mp.theta1, mp.theta2);
            const MaxPowerPair m = argmax_power_theta(problem, mp.c, mp.t, mp.step, mp.threads);
            Provenance p = provenance("max-power");
            p["n"] = mp.n;
            p["theta1"] = mp.theta1;
            p["theta2"] = mp.theta2;
            p["c"] = mp.c;
            p["t"] = mp.t;
            p["step"] = mp.step;
            nlohmann::ordered_json r;
            r["ump_argmax_theta"] = m.ump.argmax_theta;
            r["ump_max_power"] = m.ump.max_power;
            r["rand2_argmax_theta"] = m.rand2.argmax_theta;
            r["rand2_max_power"] = m.rand2.max_power;
            r["grid_step"] = m.ump.grid_step;
            write_record(mp.o, out, r, p);
            if (!mp.curve_out.empty()) {
                OutputOpts co{mp.curve_out, "auto"};
                write_series(co, out, m.curve, p);
            }
        } else if (pvd->parsed()) {
            const CurveSeries s = power_vs_delta(pd.theta, pd.c, pd.t, pd.n, parse_grid(pd.delta_grid),
                                                 centering_rule(pd.centering), pd.threads);
            Provenance p = provenance("power-vs-delta");
            p["n"] = pd.n;
            p["theta"] = pd.theta;
            p["c"] = pd.c;
            p["t"] = pd.t;
            p["delta_grid"] = pd.delta_grid;
            p["centering"] = pd.centering;
            write_series(pd.o, out, s, p);
        } else if (est->parsed()) {
            Provenance p = provenance("estimate-pi0");
            std::vector<double> values;
            nlohmann::ordered_json r;
            if (!ep.pvalues.empty()) {
                values = read_pvalues(ep.pvalues);
                p["pvalues"] = std::filesystem::path(ep.pvalues).filename().string();
            } else {
                if (!(ep.theta1 > 0.0 && ep.theta2 > ep.theta1))
                    throw ConfigError("estimate-pi0 needs --pvalues or --theta1/--theta2 for a simulated family");
                const auto records = load(ep.r, p, err);
                const HypothesisFamily family = build_family(records, ep.theta1, ep.theta2);
                SimulationSpec spec;
                spec.seed = ep.seed;
                spec.c = ep.c;
                const MethodPValues mv = split_methods(simulate_family(family, spec, ep.replicate));
                values = ep.method == "ump" ? mv.ump : mv.rand2;
                p["theta1"] = ep.theta1;
                p["theta2"] = ep.theta2;
                p["c"] = ep.c;
                p["method"] = ep.method;
                p["seed"] = ep.seed;
                p["replicate"] = ep.replicate;
                r["k0"] = family.k0;
            }
            p["lambda"] = ep.lambda;
            p["cap"] = ep.cap;
            const nlohmann::ordered_json estimate = to_json(schweder_k0(values, ep.lambda, ep.cap));
            for (const auto& [k, v] : estimate.items()) r[k] = v;
            write_record(ep.o, out, r, p);
        } else if (lsw->parsed()) {
            Provenance p = provenance("lambda-sweep");
            const auto records = load(ls.r, p, err);
            const HypothesisFamily family = build_family(records, ls.theta1, ls.theta2);
            const SimulationSpec spec = ls.sim.spec();
            p["theta1"] = ls.theta1;
            p["theta2"] = ls.theta2;
            p["k0"] = family.k0;
            p["lambda_grid"] = ls.grid;
            ls.sim.echo(p, false);
            p.erase("lambda");
            const CurveSeries s =
                lambda_sweep(family_generator(family, spec), parse_grid(ls.grid), spec.reps, spec.threads);
            write_series(ls.o, out, s, p);
        } else if (tab->parsed()) {
            Provenance p = provenance("simulate-table");
            const auto records = load(st.r, p, err);
            std::vector<EquivBounds> bounds = default_table_bounds();
            if (!st.rows.empty()) {
                bounds = read_bounds_file(st.rows);
                p["rows"] = std::filesystem::path(st.rows).filename().string();
            } else if (!st.bounds.empty()) {
                bounds = parse_bounds(st.bounds);
                p["bounds"] = st.bounds;
            }
            const SimulationSpec spec = st.sim.spec();
            st.sim.echo(p, false);
            std::vector<TableRow> rows;
            for (const auto& b : bounds) rows.push_back(algorithm1_run(records, b.theta1, b.theta2, spec));
            emit(st.o, out, [&](std::ostream& os) {
                if (st.o.resolve() == Format::json) write_table_json(os, rows, p);
                else write_table_csv(os, rows, p);
            });
        } else if (fwer->parsed()) {
            Provenance p = provenance("fwer");
            const auto records = load(fw.r, p, err);
            HypothesisFamily family;
            if (fw.family == "all-null") {
                std::vector<HypothesisConfig> configs;
                for (std::size_t i = 0; i < records.size(); ++i) {
                    const double at = i % 2 == 0 ? fw.theta1 : fw.theta2;
                    configs.push_back({records[i].confirmed, at, fw.theta1, fw.theta2});
                }
                family = make_family(std::move(configs));
            } else {
                family = build_family(records, fw.theta1, fw.theta2);
            }
            const SimulationSpec spec = fw.sim.spec();
            p["theta1"] = fw.theta1;
            p["theta2"] = fw.theta2;
            p["family"] = fw.family;
            p["k"] = family.k();
            p["k0"] = family.k0;
            fw.sim.echo(p, true);
            const FwerResult f = fwer_estimate(family, spec);
            nlohmann::ordered_json r;
            r["fwer_ump"] = f.ump.fwer;
            r["stderr_ump"] = f.ump.stderr;
            r["fwer_rand2"] = f.rand2.fwer;
            r["stderr_rand2"] = f.rand2.stderr;
            write_record(fw.o, out, r, p);
        } else if (orc->parsed()) {
            std::vector<std::int64_t> ns;
            for (std::int64_t n = 1; n <= oc.n_max; ++n) ns.push_back(n);
            const auto thetas = parse_grid(oc.thetas);
            const auto bounds = parse_bounds(oc.bounds);
            const auto ts = parse_grid(oc.t_grid);
            const auto cs = parse_grid(oc.cs);
            const OracleReport rep = oracle_sweep(ns, thetas, bounds, ts, cs);
            const bool pass = rep.max_dev_ump <= oc.tol && rep.max_dev_rand2 <= oc.tol;
            Provenance p = provenance("oracle-check");
            p["n_max"] = oc.n_max;
            p["thetas"] = oc.thetas;
            p["bounds"] = oc.bounds;
            p["t_grid"] = oc.t_grid;
            p["c_values"] = oc.cs;
            p["tol"] = oc.tol;
            nlohmann::ordered_json r;
            r["max_dev_ump"] = scientific(rep.max_dev_ump);
            r["max_dev_rand2"] = scientific(rep.max_dev_rand2);
            r["evaluations"] = rep.evaluations;
            r["pass"] = pass;
            write_record(oc.o, out, r, p);
            return pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace eqrand
