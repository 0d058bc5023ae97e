#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gdtune/piecewise.hpp"
#include "gdtune/rng.hpp"

using namespace gdtune;

namespace {

const RatInterval kDom{Rational(0), Rational(2)};

AlgebraicNumber alg(long num, long den = 1) {
    return AlgebraicNumber::from_rational(Rational(num, den));
}

PwConstFn steps(std::vector<long> bp_tenths, std::vector<long> values) {
    std::vector<AlgebraicNumber> bps;
    for (long b : bp_tenths) bps.push_back(alg(b, 10));
    std::vector<Rational> vals;
    for (long v : values) vals.emplace_back(v);
    return PwConstFn::make(kDom, std::move(bps), std::move(vals));
}

} // namespace

TEST_CASE("partition_refine merges with exact dedup") {
    auto sqrt2 = isolate_roots(UniPoly({Rational(-2), Rational(0), Rational(1)}),
                               {Rational(0), Rational(2)})[0];
    std::vector<std::vector<AlgebraicNumber>> parts;
    parts.push_back({alg(1, 2)});
    parts.push_back({alg(1, 2), alg(3, 4)});
    auto merged = partition_refine(parts);
    REQUIRE(merged.size() == 2);
    CHECK(compare(merged[0], Rational(1, 2)) == 0);
    CHECK(compare(merged[1], Rational(3, 4)) == 0);

    parts.clear();
    parts.push_back({sqrt2});
    parts.push_back({alg(3, 2)});
    merged = partition_refine(parts);
    REQUIRE(merged.size() == 2);
    CHECK(algebraic_equal(merged[0], sqrt2)); // sqrt(2) < 3/2
    CHECK(compare(merged[1], Rational(3, 2)) == 0);

    parts.assign(2, {});
    CHECK(partition_refine(parts).empty());
}

TEST_CASE("pwconst_mean worked examples") {
    PwConstFn f = steps({10}, {2, 3});
    std::vector<PwConstFn> two = {f, f};
    PwConstFn mean = pwconst_mean(two);
    CHECK(mean.cell_count() == 2);
    CHECK(mean.values == f.values);
    CHECK(algebraic_equal(mean.breakpoints[0], f.breakpoints[0]));

    // (2|3) at 1 and (3|2) at 1 average to the constant 5/2
    PwConstFn g = steps({10}, {3, 2});
    std::vector<PwConstFn> pair = {f, g};
    PwConstFn avg = pwconst_mean(pair);
    CHECK(avg.cell_count() == 1);
    CHECK(avg.values[0] == Rational(5, 2));

    // one-sided refinement: 2 everywhere + (2|4) at 1 -> (2|3) at 1
    PwConstFn c2 = PwConstFn::constant(kDom, Rational(2));
    PwConstFn h = steps({10}, {2, 4});
    std::vector<PwConstFn> pair2 = {c2, h};
    PwConstFn m2 = pwconst_mean(pair2);
    REQUIRE(m2.cell_count() == 2);
    CHECK(m2.values[0] == Rational(2));
    CHECK(m2.values[1] == Rational(3));
    CHECK(compare(m2.breakpoints[0], Rational(1)) == 0);
}

TEST_CASE("sum cell count is bounded by the refined partition size") {
    CounterRng rng({911});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PwConstFn> fs;
        std::size_t total_bps = 0;
        for (int k = 0; k < 4; ++k) {
            // random step function with sorted rational breakpoints
            std::vector<Rational> cuts;
            for (int b = 0; b < 3; ++b) cuts.push_back(rng.lattice({Rational(1, 100), Rational(199, 100)}, 8));
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            std::vector<AlgebraicNumber> bps;
            for (auto& c : cuts) bps.push_back(AlgebraicNumber::from_rational(c));
            std::vector<Rational> vals;
            for (std::size_t v = 0; v <= bps.size(); ++v)
                vals.emplace_back(static_cast<long>(1 + rng.below(5)));
            fs.push_back(PwConstFn::make(kDom, std::move(bps), std::move(vals)));
            total_bps += fs.back().breakpoints.size();
        }
        PwConstFn sum = pwconst_sum(fs);
        CHECK(sum.cell_count() <= 1 + total_bps);
        PwConstFn mean = pwconst_mean(fs);
        CHECK(mean.cell_count() <= 1 + total_bps);
    }
}

TEST_CASE("pwconst_mean requires identical domains") {
    PwConstFn a = PwConstFn::constant(kDom, Rational(1));
    PwConstFn b = PwConstFn::constant({Rational(0), Rational(1)}, Rational(1));
    std::vector<PwConstFn> fs = {a, b};
    CHECK_THROWS_AS(pwconst_mean(fs), DomainMismatchError);
}

TEST_CASE("pwconst_argmin worked examples") {
    PwConstFn c = PwConstFn::constant(kDom, Rational(5));
    auto r = pwconst_argmin(c);
    CHECK(r.value == Rational(5));
    CHECK(r.eta_hat == Rational(1));
    CHECK(compare(r.cell_lo, Rational(0)) == 0);
    CHECK(compare(r.cell_hi, Rational(2)) == 0);

    // leftmost tie over stored (non-canonical) cells: (3 | 2 | 2), bps {1, 3/2}
    PwConstFn f = PwConstFn::make(kDom, {alg(1), alg(3, 2)},
                                  {Rational(3), Rational(2), Rational(2)});
    auto t = pwconst_argmin(f);
    CHECK(t.value == Rational(2));
    CHECK(compare(t.cell_lo, Rational(1)) == 0);
    CHECK(compare(t.cell_hi, Rational(3, 2)) == 0);
    CHECK(t.eta_hat == Rational(5, 4));
}

TEST_CASE("argmin of the closed-form quadratic dual") {
    // dual of f = x^2/2, x0 = 1, theta = 1/10, H = 5 over [0,2], built from the
    // closed-form breakpoints |1-eta| = 10^(-1/(i-1))
    auto r2 = isolate_roots(UniPoly({Rational(99, 100), Rational(-2), Rational(1)}),
                            kDom); // (1-eta)^2 = 1/100
    // (1-eta)^4 = 1/100
    auto r4 = isolate_roots(UniPoly({Rational(99, 100), Rational(-4), Rational(6),
                                     Rational(-4), Rational(1)}),
                            kDom);
    REQUIRE(r2.size() == 2);
    REQUIRE(r4.size() == 2);
    std::vector<AlgebraicNumber> bps = {r4[0], r2[0], r2[1], r4[1]};
    PwConstFn dual = PwConstFn::make(
        kDom, std::move(bps),
        {Rational(4), Rational(3), Rational(2), Rational(3), Rational(4)});
    auto a = pwconst_argmin(dual);
    CHECK(a.value == Rational(2));
    CHECK(a.eta_hat == Rational(1));
    CHECK(compare(a.cell_lo, Rational(9, 10)) == 0);
    CHECK(compare(a.cell_hi, Rational(11, 10)) == 0);
}

TEST_CASE("pw_sup_diff worked examples and sampling property") {
    PwConstFn f = steps({10}, {2, 4});
    CHECK(pw_sup_diff(f, f) == Rational(0));
    PwConstFn c2 = PwConstFn::constant(kDom, Rational(2));
    PwConstFn c5 = PwConstFn::constant(kDom, Rational(5));
    CHECK(pw_sup_diff(c2, c5) == Rational(3));
    PwConstFn g = steps({10}, {3, 3});
    CHECK(pw_sup_diff(f, g) == Rational(1));

    CounterRng rng({31});
    Rational sup = pw_sup_diff(f, g);
    bool attained = false;
    for (int k = 0; k < 100000; ++k) {
        Rational t = rng.lattice({Rational(0), Rational(2)}, 10);
        Rational d = rat_abs(f.value_at(t) - g.value_at(t));
        CHECK(d <= sup);
        if (d == sup) attained = true;
    }
    CHECK(attained);
}

TEST_CASE("value_at uses the left-cell convention at breakpoints") {
    PwConstFn f = steps({10}, {2, 4});
    CHECK(f.value_at(Rational(1)) == Rational(2));      // left cell
    CHECK(f.value_at(Rational(11, 10)) == Rational(4)); // inside right cell
    CHECK(f.value_at(Rational(0)) == Rational(2));      // domain endpoint
    CHECK(f.value_at(Rational(2)) == Rational(4));
    CHECK_THROWS_AS(f.value_at(Rational(3)), DomainMismatchError);
}

TEST_CASE("canonicalization removes equal-neighbor breakpoints") {
    PwConstFn f = PwConstFn::make(kDom, {alg(1), alg(3, 2)},
                                  {Rational(3), Rational(2), Rational(2)});
    PwConstFn c = f.canonicalized();
    CHECK(c.cell_count() == 2);
    CHECK(compare(c.breakpoints[0], Rational(1)) == 0);
}

TEST_CASE("pwpoly_min worked examples") {
    // single piece (eta - 1/2)^2 on [0,1]
    PwPolyFn f1 = PwPolyFn::make({Rational(0), Rational(1)}, {},
                                 {UniPoly({Rational(1, 4), Rational(-1), Rational(1)})});
    auto m1 = pwpoly_min(f1);
    CHECK(m1.value_exact);
    CHECK(m1.value == Rational(0));
    CHECK(m1.location.is_rational());
    CHECK(m1.location.value() == Rational(1, 2));

    // pieces (eta | 2 - eta) split at 1 on [0,2]: minimum 0 at the left endpoint
    PwPolyFn f2 = PwPolyFn::make(kDom, {alg(1)},
                                 {UniPoly::variable(), UniPoly({Rational(2), Rational(-1)})});
    auto m2 = pwpoly_min(f2);
    CHECK(m2.value_exact);
    CHECK(m2.value == Rational(0));
    CHECK(m2.location.is_rational());
    CHECK(m2.location.value() == Rational(0));

    // eta^3 - 3 eta on [0,2]: derivative root at 1, value -2
    PwPolyFn f3 = PwPolyFn::make(kDom, {},
                                 {UniPoly({Rational(0), Rational(-3), Rational(0), Rational(1)})});
    auto m3 = pwpoly_min(f3);
    CHECK(m3.value_exact);
    CHECK(m3.value == Rational(-2));
    CHECK(m3.location.is_rational());
    CHECK(m3.location.value() == Rational(1));
}

TEST_CASE("pwpoly_min at an irrational minimizer returns a certified bracket") {
    // eta^3 - 2 eta on [0,2]: minimizer sqrt(2/3), min value -2 sqrt(2/3) * 2/3
    PwPolyFn f = PwPolyFn::make(kDom, {},
                                {UniPoly({Rational(0), Rational(-2), Rational(0), Rational(1)})});
    auto m = pwpoly_min(f);
    CHECK(!m.location.is_rational());
    CHECK(m.value_bracket.width() <= rat_pow2_neg(30));
    // 3 eta^2 = 2 at the minimizer
    UniPoly dp({Rational(-2), Rational(0), Rational(3)});
    CHECK(sign_at(dp, m.location) == 0);
}

TEST_CASE("pwpoly_min dominates sampled values") {
    CounterRng rng({404});
    // random two-piece function
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> c1, c2;
        for (int k = 0; k < 4; ++k) {
            c1.push_back(rng.lattice({Rational(-2), Rational(2)}, 8));
            c2.push_back(rng.lattice({Rational(-2), Rational(2)}, 8));
        }
        PwPolyFn f = PwPolyFn::make(kDom, {alg(1)}, {UniPoly(c1), UniPoly(c2)});
        auto m = pwpoly_min(f);
        Rational lo = m.value_exact ? m.value : m.value_bracket.lo;
        double best_grid = 1e300;
        for (int k = 0; k <= 1000; ++k) {
            Rational t = Rational(2 * k, 1000);
            t.canonicalize();
            Rational v = f.value_at(t);
            CHECK(lo <= v);
            best_grid = std::min(best_grid, rat_to_double(v));
        }
        // grid minimum within grid resolution of the exact value
        double hi = rat_to_double(m.value_exact ? m.value : m.value_bracket.hi);
        CHECK(hi <= best_grid + 1e-9);
    }
}

TEST_CASE("piecewise serialization round trips") {
    auto sqrt2 = isolate_roots(UniPoly({Rational(-2), Rational(0), Rational(1)}), kDom)[0];
    PwConstFn f = PwConstFn::make(kDom, {alg(1, 2), sqrt2},
                                  {Rational(5), Rational(2), Rational(3)});
    PwConstFn f2 = PwConstFn::from_json(f.to_json());
    REQUIRE(f2.cell_count() == f.cell_count());
    CHECK(f2.values == f.values);
    for (std::size_t k = 0; k < f.breakpoints.size(); ++k)
        CHECK(algebraic_equal(f.breakpoints[k], f2.breakpoints[k]));

    PwPolyFn g = PwPolyFn::make(kDom, {sqrt2},
                                {UniPoly({Rational(1), Rational(2)}), UniPoly(Rational(7))});
    PwPolyFn g2 = PwPolyFn::from_json(g.to_json());
    REQUIRE(g2.cell_count() == g.cell_count());
    CHECK(g2.pieces[0] == g.pieces[0]);
    CHECK(g2.pieces[1] == g.pieces[1]);
    CHECK(algebraic_equal(g.breakpoints[0], g2.breakpoints[0]));
}
