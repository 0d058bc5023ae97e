// gdtune: exact dual-cost analysis and data-driven tuning of gradient descent
// hyperparameters on polynomial and piecewise-polynomial objectives.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gdtune/tuner.hpp"

namespace fs = std::filesystem;
using namespace gdtune;
using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::string instance_path;
    std::string out_dir = ".";
    int H = 5;
    std::string theta = "1/10";
    std::vector<std::string> domain; // LO HI
    std::uint64_t seed = 0;
    int grid = 10000;
    int refine = 20;
    std::string gamma_grid;  // comma-separated rationals
    std::string m_schedule;  // comma-separated ints
    std::string init_schedule;
    int trials = 10;
    int test_size = 0; // 0 -> 10 * max(m_schedule)
    int m = 8;
    int sweeps = 1;
    int m_max = 3;
    int threads = 1;
    int count = 5;
    int budget_degree = 4096;
    long long budget_bits = 1LL << 20;
    std::string eta = "1/2";
    int index = 0;
    std::string tol = "1/1000000";
    bool timings = false;
    bool momentum_literal = false;
    std::string regime;
    // bound parameters (strings so "provided" is detectable)
    std::map<std::string, double> bound_params;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file '" + path.string() + "'");
    out << content;
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
    return j;
}

// config supplies defaults; explicitly-passed flags win
void apply_config(const json& cfg, const CLI::App& app, Options& opt) {
    auto unset = [&](const std::string& flag) {
        const CLI::Option* o = app.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    if (cfg.contains("H") && unset("--H")) opt.H = cfg.at("H").get<int>();
    if (cfg.contains("theta") && unset("--theta")) opt.theta = cfg.at("theta").get<std::string>();
    if (cfg.contains("domain") && unset("--domain"))
        opt.domain = cfg.at("domain").get<std::vector<std::string>>();
    if (cfg.contains("seed") && unset("--seed")) opt.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("grid") && unset("--grid")) opt.grid = cfg.at("grid").get<int>();
    if (cfg.contains("refine") && unset("--refine")) opt.refine = cfg.at("refine").get<int>();
    if (cfg.contains("trials") && unset("--trials")) opt.trials = cfg.at("trials").get<int>();
    if (cfg.contains("test_size") && unset("--test-size"))
        opt.test_size = cfg.at("test_size").get<int>();
    if (cfg.contains("m") && unset("--m")) opt.m = cfg.at("m").get<int>();
    if (cfg.contains("sweeps") && unset("--sweeps")) opt.sweeps = cfg.at("sweeps").get<int>();
    if (cfg.contains("m_max") && unset("--m-max")) opt.m_max = cfg.at("m_max").get<int>();
    if (cfg.contains("threads") && unset("--threads")) opt.threads = cfg.at("threads").get<int>();
    if (cfg.contains("count") && unset("--count")) opt.count = cfg.at("count").get<int>();
    if (cfg.contains("budget_degree") && unset("--budget-degree"))
        opt.budget_degree = cfg.at("budget_degree").get<int>();
    if (cfg.contains("budget_bits") && unset("--budget-bits"))
        opt.budget_bits = cfg.at("budget_bits").get<long long>();
    if (cfg.contains("eta") && unset("--eta")) opt.eta = cfg.at("eta").get<std::string>();
    if (cfg.contains("index") && unset("--index")) opt.index = cfg.at("index").get<int>();
    if (cfg.contains("out") && unset("--out")) opt.out_dir = cfg.at("out").get<std::string>();
    if (cfg.contains("instance") && unset("--instance"))
        opt.instance_path = cfg.at("instance").get<std::string>();
    if (cfg.contains("timings") && unset("--timings")) opt.timings = cfg.at("timings").get<bool>();
    if (cfg.contains("momentum_literal") && unset("--momentum-literal"))
        opt.momentum_literal = cfg.at("momentum_literal").get<bool>();
    if (cfg.contains("tol") && unset("--tol")) opt.tol = cfg.at("tol").get<std::string>();
    if (cfg.contains("gamma_grid") && unset("--gamma-grid")) {
        std::string joined;
        for (const auto& g : cfg.at("gamma_grid")) joined += (joined.empty() ? "" : ",") + g.get<std::string>();
        opt.gamma_grid = joined;
    }
    if (cfg.contains("m_schedule") && unset("--m-schedule")) {
        std::string joined;
        for (const auto& g : cfg.at("m_schedule"))
            joined += (joined.empty() ? "" : ",") + std::to_string(g.get<int>());
        opt.m_schedule = joined;
    }
    if (cfg.contains("init_schedule") && unset("--init-schedule")) {
        std::string joined;
        for (const auto& g : cfg.at("init_schedule"))
            joined += (joined.empty() ? "" : ",") + g.get<std::string>();
        opt.init_schedule = joined;
    }
}

GDConfig make_gdconfig(const Options& opt) {
    GDConfig cfg;
    cfg.H = opt.H;
    cfg.theta = rat_parse(opt.theta);
    if (opt.domain.empty())
        cfg.domain = {Rational(0), Rational(2)};
    else if (opt.domain.size() == 2)
        cfg.domain = {rat_parse(opt.domain[0]), rat_parse(opt.domain[1])};
    else
        throw ConfigError("--domain needs exactly LO HI");
    cfg.budget.max_degree = opt.budget_degree;
    cfg.budget.max_bits = static_cast<std::size_t>(opt.budget_bits);
    cfg.validate();
    return cfg;
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(rat_parse(tok));
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoi(tok));
    return out;
}

Instance load_instance(const Options& opt) {
    if (opt.instance_path.empty()) throw ConfigError("an --instance file is required");
    return parse_instance(read_file(opt.instance_path));
}

InstanceDistribution load_distribution(const json& cfg, const Options& opt) {
    if (!cfg.contains("distribution"))
        throw ConfigError("config file must contain a 'distribution' object");
    InstanceDistribution dist;
    dist.family = family_from_json(cfg.at("distribution"));
    dist.seed = cfg.at("distribution").value("seed", std::uint64_t(0));
    return dist;
}

std::vector<Instance> load_sample(const json& cfg, const Options& opt) {
    if (!opt.instance_path.empty()) {
        // a single-instance sample
        return {load_instance(opt)};
    }
    InstanceDistribution dist = load_distribution(cfg, opt);
    return sample_instances(dist, opt.m, opt.seed);
}

json erm_to_json(const ErmResult& erm) {
    json j;
    j["eta_hat"] = rat_str(erm.eta_hat);
    j["train_mean_cost"] = rat_str(erm.train_mean_cost);
    j["cell"] = {algebraic_to_json(erm.cell_lo), algebraic_to_json(erm.cell_hi)};
    j["sample_size"] = erm.sample_size;
    j["breakpoints"] = erm.breakpoint_count;
    return j;
}

void print_dual_summary(const TraceResult& res, std::ostream& os) {
    os << "dual: " << res.dual.cell_count() << " cells, " << res.dual.breakpoints.size()
       << " breakpoints (settlement partition: " << res.stats.settlement_cell_count
       << " cells)\n";
    os << "  values:";
    for (const auto& v : res.dual.values) os << ' ' << rat_str(v);
    os << "\n  breakpoints (approx):";
    for (const auto& b : res.dual.breakpoints) os << ' ' << b.approx();
    os << "\n  degree bound ok: " << (res.stats.degree_bound_ok ? "yes" : "NO")
       << ", piece envelope ok: " << (res.stats.piece_bound_ok ? "yes" : "NO") << "\n";
}

json trace_to_json(const TraceResult& res) {
    json j;
    j["dual"] = res.dual.to_json();
    j["stats"] = {{"rounds", res.stats.rounds},
                  {"settlement_cells", res.stats.settlement_cell_count},
                  {"cells", res.stats.cell_count},
                  {"max_curve_degree", res.stats.max_curve_degree},
                  {"degree_bound_ok", res.stats.degree_bound_ok},
                  {"piece_bound_ok", res.stats.piece_bound_ok},
                  {"piece_bound", res.stats.piece_bound.get_str()}};
    return j;
}

int run_trace_like(const Options& opt, const json& cfg_json, const ParamBinding& binding,
                   const char* outname) {
    GDConfig cfg = make_gdconfig(opt);
    Instance inst = load_instance(opt);
    BuiltObjective built = build_objective(inst.objective);
    std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
    TraceResult res = trace_param(built.exact_or_throw(), x0, binding, cfg);
    print_dual_summary(res, std::cout);
    json out = trace_to_json(res);
    out["instance"] = inst.label;
    write_file(fs::path(opt.out_dir) / outname, out.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(opt.out_dir) / outname).string() << "\n";
    return 0;
}

ParamBinding binding_for_instance(const Instance& inst, const std::string& kind,
                                  const Options& opt) {
    if (kind == "stepsize") return StepsizeBinding{};
    if (kind == "init-scale") {
        if (!inst.x0) throw ConfigError("init-scale needs the instance to carry a direction x0");
        return InitScaleBinding{*inst.x0, rat_parse(opt.eta)};
    }
    if (kind == "init-coord") {
        if (!inst.x0) throw ConfigError("init-coord needs the instance to carry a base x0");
        return InitCoordBinding{opt.index, *inst.x0, rat_parse(opt.eta)};
    }
    throw ConfigError("unknown binding kind");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dual-cost analysis and data-driven tuning for gradient descent"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config file; flags override fields");
        sub->add_option("--instance", opt.instance_path, "instance JSON file");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--H", opt.H, "max iterations");
        sub->add_option("--theta", opt.theta, "gradient threshold (num/den)");
        sub->add_option("--domain", opt.domain, "parameter domain LO HI")->expected(2);
        sub->add_option("--seed", opt.seed, "experiment seed");
        sub->add_option("--threads", opt.threads, "worker threads");
        sub->add_option("--budget-degree", opt.budget_degree, "symbolic degree cap");
        sub->add_option("--budget-bits", opt.budget_bits, "symbolic coefficient bit cap");
    };

    CLI::App* c_trace = app.add_subcommand("trace", "exact step-size dual of one instance");
    add_common(c_trace);
    CLI::App* c_tune = app.add_subcommand("tune", "exact ERM over the step size");
    add_common(c_tune);
    c_tune->add_option("--m", opt.m, "sample size");
    CLI::App* c_schedule = app.add_subcommand("schedule", "coordinate descent over the schedule");
    add_common(c_schedule);
    c_schedule->add_option("--m", opt.m, "sample size");
    c_schedule->add_option("--sweeps", opt.sweeps, "coordinate sweeps");
    c_schedule->add_option("--init-schedule", opt.init_schedule, "comma-separated rationals");
    CLI::App* c_momentum = app.add_subcommand("momentum", "grid over gamma, exact ERM in eta");
    add_common(c_momentum);
    c_momentum->add_option("--m", opt.m, "sample size");
    c_momentum->add_option("--gamma-grid", opt.gamma_grid, "comma-separated rationals");
    c_momentum->add_flag("--momentum-literal", opt.momentum_literal,
                         "use the literal update x_{i+1} = x_i + y_i");
    CLI::App* c_iscale = app.add_subcommand("init-scale", "exact dual over the init scale");
    add_common(c_iscale);
    c_iscale->add_option("--eta", opt.eta, "fixed step size");
    CLI::App* c_icoord = app.add_subcommand("init-coord", "exact dual over one init coordinate");
    add_common(c_icoord);
    c_icoord->add_option("--eta", opt.eta, "fixed step size");
    c_icoord->add_option("--index", opt.index, "coordinate index (0-based)");
    CLI::App* c_validate = app.add_subcommand("validate", "validation dual and its minimizer");
    add_common(c_validate);
    CLI::App* c_experiment = app.add_subcommand("experiment", "uniform-convergence sweep");
    add_common(c_experiment);
    c_experiment->add_option("--m-schedule", opt.m_schedule, "comma-separated sample sizes");
    c_experiment->add_option("--trials", opt.trials, "trials per m");
    c_experiment->add_option("--test-size", opt.test_size, "held-out sample size");
    c_experiment->add_flag("--timings", opt.timings, "emit real wall times in the CSV");
    CLI::App* c_pdim = app.add_subcommand("pdim", "empirical pseudo-dimension lower bound");
    add_common(c_pdim);
    c_pdim->add_option("--m", opt.m, "sample size");
    c_pdim->add_option("--m-max", opt.m_max, "shattering search cap (<= 3)");
    CLI::App* c_bounds = app.add_subcommand("bounds", "bound/shape-value calculators");
    c_bounds->add_option("--regime", opt.regime, "formula selector")->required();
    for (const char* name : {"H", "eps", "delta", "Delta", "p", "d", "q", "M", "Delta-v",
                             "p-v", "n", "s", "degree", "Lambda", "pdim", "pieces"}) {
        opt.bound_params[name] = 0;
        c_bounds->add_option("--" + std::string(name), opt.bound_params[name]);
    }
    CLI::App* c_oracle = app.add_subcommand("oracle-check", "exact vs numeric agreement");
    add_common(c_oracle);
    c_oracle->add_option("--count", opt.count, "number of sampled instances");
    c_oracle->add_option("--grid", opt.grid, "grid points");
    c_oracle->add_option("--tol", opt.tol, "breakpoint exclusion tolerance (num/den)");
    CLI::App* c_plot = app.add_subcommand("plotdata", "step-function vertices as two columns");
    add_common(c_plot);

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg_json = load_config(opt.config_path);
        apply_config(cfg_json, *app.get_subcommands().front(), opt);

        if (c_trace->parsed()) return run_trace_like(opt, cfg_json, StepsizeBinding{}, "dual.json");
        if (c_iscale->parsed()) {
            Instance inst = load_instance(opt);
            return run_trace_like(opt, cfg_json, binding_for_instance(inst, "init-scale", opt),
                                  "dual_init_scale.json");
        }
        if (c_icoord->parsed()) {
            Instance inst = load_instance(opt);
            return run_trace_like(opt, cfg_json, binding_for_instance(inst, "init-coord", opt),
                                  "dual_init_coord.json");
        }
        if (c_tune->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            std::vector<Instance> sample = load_sample(cfg_json, opt);
            std::vector<PwConstFn> duals = sample_duals(sample, StepsizeBinding{}, cfg, opt.threads);
            ErmResult erm = erm_stepsize(duals);
            json out = erm_to_json(erm);
            std::cout << out.dump(2) << "\n";
            write_file(fs::path(opt.out_dir) / "tune.json", out.dump(2) + "\n");
            return 0;
        }
        if (c_schedule->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            std::vector<Instance> sample = load_sample(cfg_json, opt);
            std::vector<Rational> init =
                opt.init_schedule.empty()
                    ? std::vector<Rational>(static_cast<std::size_t>(cfg.H),
                                            (cfg.domain.lo + cfg.domain.hi) / 2)
                    : parse_rational_list(opt.init_schedule);
            ScheduleResult res =
                schedule_coordinate_descent(sample, cfg, opt.sweeps, std::move(init), opt.threads);
            json out;
            out["schedule"] = json::array();
            for (const auto& e : res.schedule) out["schedule"].push_back(rat_str(e));
            out["final_mean"] = rat_str(res.final_mean);
            json steps = json::array();
            for (const auto& s : res.steps)
                steps.push_back({{"sweep", s.sweep},
                                 {"round", s.round},
                                 {"old", rat_str(s.old_value)},
                                 {"new", rat_str(s.new_value)},
                                 {"mean_before", rat_str(s.mean_before)},
                                 {"mean_after", rat_str(s.mean_after)}});
            out["steps"] = std::move(steps);
            std::cout << out.dump(2) << "\n";
            write_file(fs::path(opt.out_dir) / "schedule.json", out.dump(2) + "\n");
            return 0;
        }
        if (c_momentum->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            std::vector<Instance> sample = load_sample(cfg_json, opt);
            std::vector<Rational> grid = opt.gamma_grid.empty()
                                             ? std::vector<Rational>{Rational(0), Rational(1, 2)}
                                             : parse_rational_list(opt.gamma_grid);
            MomentumTuneResult res =
                momentum_grid_tune(sample, cfg, grid, opt.threads, opt.momentum_literal);
            json out;
            out["best_gamma"] = rat_str(res.best_gamma);
            out["best"] = erm_to_json(res.best);
            json per = json::array();
            for (const auto& [g, erm] : res.per_gamma)
                per.push_back({{"gamma", rat_str(g)}, {"erm", erm_to_json(erm)}});
            out["per_gamma"] = std::move(per);
            std::cout << out.dump(2) << "\n";
            write_file(fs::path(opt.out_dir) / "momentum.json", out.dump(2) + "\n");
            return 0;
        }
        if (c_validate->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            Instance inst = load_instance(opt);
            if (!inst.validation) throw ConfigError("instance has no validation objective");
            BuiltObjective f = build_objective(inst.objective);
            BuiltObjective fv = build_objective(*inst.validation);
            std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
            ValidationResult res =
                trace_validation(f.exact_or_throw(), fv.exact_or_throw(), x0, cfg);
            PwMinResult vmin = pwpoly_min(res.dual);
            json out;
            out["dual"] = res.dual.to_json();
            out["min"] = {{"location", algebraic_to_json(vmin.location)},
                          {"value_exact", vmin.value_exact},
                          {"value_lo", rat_str(vmin.value_bracket.lo)},
                          {"value_hi", rat_str(vmin.value_bracket.hi)}};
            if (vmin.value_exact) out["min"]["value"] = rat_str(vmin.value);
            out["instance"] = inst.label;
            std::cout << "validation dual: " << res.dual.cell_count() << " cells; minimizer approx "
                      << vmin.location.approx() << "\n";
            write_file(fs::path(opt.out_dir) / "validation.json", out.dump(2) + "\n");
            return 0;
        }
        if (c_experiment->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            InstanceDistribution dist = load_distribution(cfg_json, opt);
            std::vector<int> schedule = opt.m_schedule.empty()
                                            ? std::vector<int>{8, 32, 128, 512}
                                            : parse_int_list(opt.m_schedule);
            int test_size = opt.test_size;
            if (test_size <= 0)
                test_size = 10 * *std::max_element(schedule.begin(), schedule.end());
            ExperimentReport report = uniform_convergence_experiment(
                dist, schedule, opt.trials, cfg, test_size, opt.seed, opt.threads);
            if (cfg_json.contains("eps")) report.metadata["eps"] = cfg_json.at("eps");
            if (cfg_json.contains("delta")) report.metadata["delta"] = cfg_json.at("delta");
            write_file(fs::path(opt.out_dir) / "experiment.csv", report.to_csv(opt.timings));
            write_file(fs::path(opt.out_dir) / "experiment.meta.json",
                       report.metadata.dump(2) + "\n");
            std::cout << "wrote " << (fs::path(opt.out_dir) / "experiment.csv").string() << " ("
                      << report.rows.size() << " rows)\n";
            return 0;
        }
        if (c_pdim->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            std::vector<Instance> sample = load_sample(cfg_json, opt);
            std::vector<PwConstFn> duals = sample_duals(sample, StepsizeBinding{}, cfg, opt.threads);
            int lb = empirical_pdim_lower_bound(duals, opt.m_max);
            std::cout << "empirical pdim lower bound: " << lb << "\n";
            return 0;
        }
        if (c_bounds->parsed()) {
            BoundQuery q;
            q.regime = bound_regime_from_string(opt.regime);
            q.H = opt.bound_params["H"];
            q.eps = opt.bound_params["eps"];
            q.delta_conf = opt.bound_params["delta"];
            q.Delta = opt.bound_params["Delta"];
            q.p = opt.bound_params["p"];
            q.d = opt.bound_params["d"];
            q.q = opt.bound_params["q"];
            q.M = opt.bound_params["M"];
            q.Delta_v = opt.bound_params["Delta-v"];
            q.p_v = opt.bound_params["p-v"];
            q.n = opt.bound_params["n"];
            q.s = opt.bound_params["s"];
            q.degree = opt.bound_params["degree"];
            q.Lambda = opt.bound_params["Lambda"];
            q.pdim = opt.bound_params["pdim"];
            q.pieces = opt.bound_params["pieces"];
            BoundValue v = bounds_calculator(q);
            std::cout << bound_regime_to_string(q.regime) << " = " << v.value
                      << "  (log10 = " << v.log10_value << ")\n"
                      << "  formula: " << v.formula << "\n  " << v.note << "\n";
            return 0;
        }
        if (c_oracle->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            std::vector<Instance> sample;
            if (!opt.instance_path.empty())
                sample.push_back(load_instance(opt));
            else {
                InstanceDistribution dist = load_distribution(cfg_json, opt);
                sample = sample_instances(dist, opt.count, opt.seed);
            }
            OracleCheckResult res = oracle_check(sample, cfg, opt.grid, rat_parse(opt.tol),
                                                 opt.threads);
            std::cout << res.mismatches << " mismatches (" << res.instances << " instances, "
                      << res.points_checked << " points checked, " << res.points_skipped
                      << " near-breakpoint points skipped)\n";
            return 0;
        }
        if (c_plot->parsed()) {
            GDConfig cfg = make_gdconfig(opt);
            Instance inst = load_instance(opt);
            BuiltObjective built = build_objective(inst.objective);
            std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
            TraceResult res = trace_stepsize(built.exact_or_throw(), x0, cfg);
            std::ostringstream os;
            os.precision(17);
            double prev = rat_to_double(cfg.domain.lo);
            for (std::size_t k = 0; k < res.dual.values.size(); ++k) {
                double right = k < res.dual.breakpoints.size()
                                   ? res.dual.breakpoints[k].approx()
                                   : rat_to_double(cfg.domain.hi);
                double v = rat_to_double(res.dual.values[k]);
                os << prev << ' ' << v << '\n' << right << ' ' << v << '\n';
                prev = right;
            }
            std::cout << os.str();
            write_file(fs::path(opt.out_dir) / "plot.txt", os.str());
            return 0;
        }
        throw ConfigError("no subcommand matched");
    } catch (const ParseError& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const SymbolicBudgetExceeded& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const BudgetExceededError& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const DegenerateTrajectoryError& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const Error& e) {
        json err = {{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err = {{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
