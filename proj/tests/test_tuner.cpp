#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <set>

#include "gdtune/tuner.hpp"
#include "oracles.hpp"

using namespace gdtune;

namespace {

const RatInterval kDom{Rational(0), Rational(2)};

GDConfig config(int H = 5) {
    GDConfig cfg;
    cfg.H = H;
    cfg.theta = Rational(1, 10);
    cfg.domain = kDom;
    return cfg;
}

PwConstFn quadratic_dual(const Rational& a, const GDConfig& cfg) {
    MultiPoly f(1);
    f.add_term({2}, a / 2);
    PwPolyObjective obj{f};
    std::vector<Rational> x0 = {Rational(1)};
    return trace_stepsize(obj, x0, cfg).dual;
}

Instance quadratic_instance(const Rational& a) {
    Instance inst;
    MultiPoly f(1);
    f.add_term({2}, a / 2);
    inst.objective = PolySpec{f};
    inst.x0 = std::vector<Rational>{Rational(1)};
    inst.label = "q" + rat_str(a);
    return inst;
}

AlgebraicNumber alg(long n, long d = 1) { return AlgebraicNumber::from_rational(Rational(n, d)); }

} // namespace

TEST_CASE("erm_stepsize worked examples") {
    GDConfig cfg = config();
    PwConstFn dual = quadratic_dual(Rational(1), cfg);
    std::vector<PwConstFn> two = {dual, dual};
    ErmResult erm = erm_stepsize(two);
    CHECK(erm.eta_hat == Rational(1));
    CHECK(erm.train_mean_cost == Rational(2));
    CHECK(erm.sample_size == 2);

    std::vector<PwConstFn> single = {PwConstFn::constant(kDom, Rational(5))};
    ErmResult c = erm_stepsize(single);
    CHECK(c.eta_hat == Rational(1)); // domain midpoint
    CHECK(c.train_mean_cost == Rational(5));

    PwConstFn f = PwConstFn::make(kDom, {alg(1)}, {Rational(2), Rational(3)});
    PwConstFn g = PwConstFn::make(kDom, {alg(1)}, {Rational(3), Rational(2)});
    std::vector<PwConstFn> pair = {f, g};
    ErmResult s = erm_stepsize(pair);
    CHECK(s.train_mean_cost == Rational(5, 2));
    CHECK(s.eta_hat == Rational(1)); // collapsed constant: whole-domain cell
    CHECK(s.breakpoint_count == 0);
}

TEST_CASE("erm train mean is reproduced by independent per-instance costs") {
    GDConfig cfg = config();
    std::vector<Rational> curvatures = {Rational(1), Rational(3, 2), Rational(1, 2)};
    std::vector<PwConstFn> duals;
    for (const auto& a : curvatures) duals.push_back(quadratic_dual(a, cfg));
    ErmResult erm = erm_stepsize(duals);
    Rational mean(0);
    for (const auto& a : curvatures)
        mean += Rational(oracles::quadratic_cost(a, Rational(1), erm.eta_hat, cfg.theta, cfg.H));
    mean /= Rational(static_cast<long>(curvatures.size()));
    CHECK(erm.train_mean_cost == mean);
}

TEST_CASE("empirical pdim worked examples") {
    GDConfig cfg = config();
    // all-constant duals shatter nothing
    std::vector<PwConstFn> consts = {PwConstFn::constant(kDom, Rational(5)),
                                     PwConstFn::constant(kDom, Rational(3))};
    CHECK(empirical_pdim_lower_bound(consts, 3) == 0);

    // a single two-valued dual gives 1
    std::vector<PwConstFn> one = {PwConstFn::make(kDom, {alg(1)}, {Rational(2), Rational(5)})};
    CHECK(empirical_pdim_lower_bound(one, 3) == 1);

    // the two-quadratic family realizes all four patterns once H is large
    // enough for the high-cost cells around eta = 1 and eta = 1/3 to overlap
    GDConfig cfg8 = config(8);
    std::vector<PwConstFn> pairq = {quadratic_dual(Rational(1), cfg8),
                                    quadratic_dual(Rational(3), cfg8)};
    CHECK(empirical_pdim_lower_bound(pairq, 2) == 2);
    CHECK(empirical_pdim_lower_bound(pairq, 3) == 2);
    // at H = 5 the (0,0) pattern is geometrically unrealizable for this pair
    std::vector<PwConstFn> pairq5 = {quadratic_dual(Rational(1), cfg),
                                     quadratic_dual(Rational(3), cfg)};
    CHECK(empirical_pdim_lower_bound(pairq5, 2) == 1);

    CHECK_THROWS_AS(empirical_pdim_lower_bound(pairq, 4), CapExceededError);
}

TEST_CASE("pdim lower bound never exceeds log2 of distinct cell patterns") {
    GDConfig cfg = config();
    std::vector<PwConstFn> duals = {quadratic_dual(Rational(1), cfg),
                                    quadratic_dual(Rational(3), cfg),
                                    quadratic_dual(Rational(1, 2), cfg)};
    int lb = empirical_pdim_lower_bound(duals, 3);
    // distinct value-vector columns over the refined partition
    std::vector<std::vector<AlgebraicNumber>> parts;
    for (const auto& d : duals) parts.push_back(d.breakpoints);
    auto merged = partition_refine(parts);
    std::vector<AlgebraicNumber> cuts;
    cuts.push_back(alg(0));
    for (auto& b : merged) cuts.push_back(b);
    cuts.push_back(alg(2));
    std::set<std::vector<std::string>> columns;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        Rational t = interior_rational(cuts[c], cuts[c + 1]);
        std::vector<std::string> col;
        for (const auto& d : duals) col.push_back(rat_str(d.value_at(t)));
        columns.insert(std::move(col));
    }
    CHECK(std::pow(2.0, lb) <= static_cast<double>(columns.size()) + 1e-9);
}

TEST_CASE("bounds calculator worked examples") {
    BoundQuery warren;
    warren.regime = BoundRegime::warren;
    warren.degree = 2;
    warren.s = 3;
    warren.n = 1;
    BoundValue w = bounds_calculator(warren);
    CHECK(std::abs(w.value - 24 * std::exp(1.0)) < 1e-9);
    CHECK(std::abs(w.value - 65.23) < 0.01);
    CHECK(w.note.find("shape value") != std::string::npos);

    BoundQuery thm31;
    thm31.regime = BoundRegime::sample_poly;
    thm31.H = 10;
    thm31.eps = 0.1;
    thm31.delta_conf = 0.01;
    thm31.Delta = 3;
    BoundValue s = bounds_calculator(thm31);
    double expect = 1e4 * (10 * std::log(3.0) + std::log(100.0));
    CHECK(std::abs(s.value - expect) / expect < 1e-12);
    CHECK(std::abs(s.value - 1.559e5) / 1.559e5 < 1e-3);

    BoundQuery pieces;
    pieces.regime = BoundRegime::pieces_poly;
    pieces.Delta = 1;
    pieces.H = 7;
    CHECK(bounds_calculator(pieces).value == 1.0); // linear f: one piece
}

TEST_CASE("bounds are monotone in the monotone parameters") {
    CounterRng rng({808});
    auto base = [&] {
        BoundQuery q;
        q.H = 2 + static_cast<double>(rng.below(20));
        q.eps = 0.05 + 0.001 * static_cast<double>(rng.below(100));
        q.delta_conf = 0.01 + 0.001 * static_cast<double>(rng.below(100));
        q.Delta = 2 + static_cast<double>(rng.below(10));
        q.p = 1 + static_cast<double>(rng.below(6));
        q.d = 1 + static_cast<double>(rng.below(6));
        return q;
    };
    for (int t = 0; t < 50; ++t) {
        BoundQuery lo = base();
        BoundQuery hi = lo;
        hi.H = lo.H + static_cast<double>(rng.below(5));
        hi.Delta = lo.Delta + static_cast<double>(rng.below(5));
        hi.p = lo.p + static_cast<double>(rng.below(3));
        hi.d = lo.d + static_cast<double>(rng.below(3));
        hi.eps = lo.eps / (1 + static_cast<double>(rng.below(3)));        // 1/eps grows
        hi.delta_conf = lo.delta_conf / (1 + static_cast<double>(rng.below(3)));
        for (BoundRegime regime : {BoundRegime::sample_poly, BoundRegime::sample_pwpoly,
                                   BoundRegime::sample_schedule, BoundRegime::sample_init_vector,
                                   BoundRegime::pieces_pwpoly}) {
            lo.regime = hi.regime = regime;
            CHECK(bounds_calculator(lo).log10_value <= bounds_calculator(hi).log10_value + 1e-12);
        }
    }
}

TEST_CASE("degenerate distribution gives zero sup gap") {
    InstanceDistribution dist{ScalarQuadraticFamily{{Rational(1), Rational(1)}}, 3};
    GDConfig cfg = config();
    std::vector<int> ms = {1, 4};
    ExperimentReport rep = uniform_convergence_experiment(dist, ms, 2, cfg, 8, 5, 1);
    REQUIRE(rep.rows.size() == 4);
    for (const auto& row : rep.rows) {
        CHECK(row.sup_gap == Rational(0));
        CHECK(row.train_mean == row.test_mean);
    }
}

TEST_CASE("single-draw experiment equals a direct sup-diff computation") {
    InstanceDistribution dist{ScalarQuadraticFamily{{Rational(1, 2), Rational(2)}}, 11};
    GDConfig cfg = config();
    std::vector<int> ms = {1};
    ExperimentReport rep = uniform_convergence_experiment(dist, ms, 1, cfg, 6, 21, 1);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].sup_gap >= rat_abs(rep.rows[0].train_mean - rep.rows[0].test_mean));
    CHECK(rep.rows[0].wall_ms >= 0);
    // CSV determinism across thread counts
    ExperimentReport rep2 = uniform_convergence_experiment(dist, ms, 1, cfg, 6, 21, 3);
    CHECK(rep.to_csv() == rep2.to_csv());
    CHECK(rep.to_csv().rfind("trial,m,eta_hat,train_mean,test_mean,sup_gap,wall_ms\n", 0) == 0);
}

TEST_CASE("median sup gap decreases with m on a spread distribution") {
    InstanceDistribution dist{ScalarQuadraticFamily{{Rational(1, 2), Rational(2)}}, 17};
    GDConfig cfg = config();
    std::vector<int> ms = {4, 64};
    ExperimentReport rep = uniform_convergence_experiment(dist, ms, 5, cfg, 320, 23, 1);
    std::vector<double> small, large;
    for (const auto& row : rep.rows)
        (row.m == 4 ? small : large).push_back(rat_to_double(row.sup_gap));
    std::sort(small.begin(), small.end());
    std::sort(large.begin(), large.end());
    CHECK(large[large.size() / 2] < small[small.size() / 2]);
}

TEST_CASE("schedule descent: H = 1 reduces to stepsize ERM") {
    std::vector<Instance> sample = {quadratic_instance(Rational(1)),
                                    quadratic_instance(Rational(3, 2))};
    GDConfig cfg = config(1);
    ScheduleResult res = schedule_coordinate_descent(sample, cfg, 1, {Rational(1, 4)}, 1);
    std::vector<PwConstFn> duals = sample_duals(sample, StepsizeBinding{}, cfg, 1);
    ErmResult erm = erm_stepsize(duals);
    CHECK(res.schedule[0] == erm.eta_hat);
    CHECK(res.final_mean == erm.train_mean_cost);
}

TEST_CASE("schedule descent is monotone and finds the two-step optimum") {
    std::vector<Instance> sample = {quadratic_instance(Rational(1))};
    GDConfig cfg = config(2);
    ScheduleResult res =
        schedule_coordinate_descent(sample, cfg, 1, {Rational(1, 4), Rational(1, 4)}, 1);
    for (const auto& step : res.steps) CHECK(step.mean_after <= step.mean_before);
    CHECK(res.final_mean <= res.steps.front().mean_before);
}

TEST_CASE("schedule descent fixed point stays put") {
    std::vector<Instance> sample = {quadratic_instance(Rational(1))};
    GDConfig cfg = config(2);
    // (1, 1) is optimal: cost 2, and each coordinate's argmin midpoint is 1
    ScheduleResult res =
        schedule_coordinate_descent(sample, cfg, 1, {Rational(1), Rational(1)}, 1);
    CHECK(res.schedule[0] == Rational(1));
    CHECK(res.schedule[1] == Rational(1));
    CHECK(res.final_mean == Rational(2));
}

TEST_CASE("momentum grid tune: gamma = 0 equals vanilla, grids only improve") {
    std::vector<Instance> sample = {quadratic_instance(Rational(1)),
                                    quadratic_instance(Rational(1, 2))};
    GDConfig cfg = config();
    std::vector<Rational> zero = {Rational(0)};
    MomentumTuneResult only0 = momentum_grid_tune(sample, cfg, zero, 1);
    std::vector<PwConstFn> duals = sample_duals(sample, StepsizeBinding{}, cfg, 1);
    ErmResult vanilla = erm_stepsize(duals);
    CHECK(only0.best.train_mean_cost == vanilla.train_mean_cost);
    CHECK(only0.best.eta_hat == vanilla.eta_hat);

    std::vector<Rational> grid = {Rational(0), Rational(1, 2)};
    MomentumTuneResult both = momentum_grid_tune(sample, cfg, grid, 1);
    CHECK(both.best.train_mean_cost <= only0.best.train_mean_cost);
    REQUIRE(both.per_gamma.size() == 2);
}

TEST_CASE("momentum duals agree with the numeric oracle pointwise") {
    Instance inst = quadratic_instance(Rational(1));
    GDConfig cfg = config();
    BuiltObjective built = build_objective(inst.objective);
    ParamBinding binding = MomentumEtaBinding{Rational(1, 2), false};
    TraceResult res = trace_param(*built.pw, *inst.x0, binding, cfg);
    CounterRng rng({33});
    Rational tol(1, 1000000);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        Rational eta = rng.lattice(RatInterval{Rational(0), Rational(2)}, 14);
        bool near = false;
        for (const auto& bp : res.dual.breakpoints)
            if (eta >= bp.lo() - tol && eta <= bp.hi() + tol) near = true;
        if (near) continue;
        ++checked;
        int num = numeric_cost_at(built.numeric(), *inst.x0, binding, cfg,
                                  rat_to_double(eta), nullptr);
        CHECK(res.dual.value_at(eta) == Rational(num));
    }
    CHECK(checked > 900);
}

TEST_CASE("oracle_check: exact and numeric duals agree on a small batch") {
    InstanceDistribution dist{RandomPolyFamily{1, 2}, 31};
    auto sample = sample_instances(dist, 5, 77);
    GDConfig cfg = config(4);
    OracleCheckResult res = oracle_check(sample, cfg, 500, Rational(1, 1000000), 1);
    CHECK(res.mismatches == 0);
    CHECK(res.points_checked > 0);
}
