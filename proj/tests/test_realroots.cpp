#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gdtune/realroots.hpp"
#include "gdtune/rng.hpp"

using namespace gdtune;

namespace {

UniPoly random_unipoly(CounterRng& rng, int maxdeg) {
    int deg = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(maxdeg)));
    std::vector<Rational> c;
    for (int k = 0; k <= deg; ++k) c.push_back(rng.lattice({Rational(-2), Rational(2)}, 6));
    UniPoly p(std::move(c));
    return p;
}

const RatInterval kDom{Rational(-4), Rational(4)};

} // namespace

TEST_CASE("isolate_roots worked examples") {
    // eta^2 - 2 over [0,2]: one root, bracket straddles sqrt(2)
    UniPoly p({Rational(-2), Rational(0), Rational(1)});
    auto roots = isolate_roots(p, {Rational(0), Rational(2)});
    REQUIRE(roots.size() == 1);
    CHECK(!roots[0].is_rational());
    CHECK(roots[0].lo() * roots[0].lo() <= 2);
    CHECK(roots[0].hi() * roots[0].hi() >= 2);
    CHECK(roots[0].bracket_width() <= rat_pow2_neg(30));

    // (eta-1)^2: double root collapses to the exact rational 1
    UniPoly sq({Rational(1), Rational(-2), Rational(1)});
    auto r2 = isolate_roots(sq, {Rational(0), Rational(2)});
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].is_rational());
    CHECK(r2[0].value() == Rational(1));

    // (eta-1)(eta-2)(eta-3)
    UniPoly cubic({Rational(-6), Rational(11), Rational(-6), Rational(1)});
    auto r3 = isolate_roots(cubic, {Rational(0), Rational(4)});
    REQUIRE(r3.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(r3[static_cast<std::size_t>(k)].is_rational());
        CHECK(r3[static_cast<std::size_t>(k)].value() == Rational(k + 1));
    }
}

TEST_CASE("isolate_roots rejects the zero polynomial") {
    CHECK_THROWS_AS(isolate_roots(UniPoly(), {Rational(0), Rational(1)}), ZeroPolynomialError);
}

TEST_CASE("roots at domain endpoints are found") {
    // eta(eta-2) over [0,2]
    UniPoly p({Rational(0), Rational(-2), Rational(1)});
    auto roots = isolate_roots(p, {Rational(0), Rational(2)});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].value() == Rational(0));
    CHECK(roots[1].value() == Rational(2));
}

TEST_CASE("sublevel worked examples") {
    // eta^2 - 1 over [0,2]: negative on [0, 1)
    UniPoly p({Rational(-1), Rational(0), Rational(1)});
    auto s = sublevel_intervals(p, {Rational(0), Rational(2)});
    CHECK(!s.degenerate_zero);
    REQUIRE(s.intervals.size() == 1);
    CHECK(compare(s.intervals[0].first, Rational(0)) == 0);
    CHECK(compare(s.intervals[0].second, Rational(1)) == 0);

    // eta^2 + 1: positive definite
    UniPoly q({Rational(1), Rational(0), Rational(1)});
    CHECK(sublevel_intervals(q, {Rational(0), Rational(2)}).intervals.empty());

    // (eta-1)(eta-2)(eta-3) over [0,4]: negative on (0,1) and (2,3)
    UniPoly cubic({Rational(-6), Rational(11), Rational(-6), Rational(1)});
    auto s3 = sublevel_intervals(cubic, {Rational(0), Rational(4)});
    REQUIRE(s3.intervals.size() == 2);
    CHECK(compare(s3.intervals[0].first, Rational(0)) == 0);
    CHECK(compare(s3.intervals[0].second, Rational(1)) == 0);
    CHECK(compare(s3.intervals[1].first, Rational(2)) == 0);
    CHECK(compare(s3.intervals[1].second, Rational(3)) == 0);

    // identically zero: whole domain, flagged
    auto sz = sublevel_intervals(UniPoly(), {Rational(0), Rational(2)});
    CHECK(sz.degenerate_zero);
    REQUIRE(sz.intervals.size() == 1);
    CHECK(compare(sz.intervals[0].first, Rational(0)) == 0);
    CHECK(compare(sz.intervals[0].second, Rational(2)) == 0);
}

TEST_CASE("isolation count matches the Sturm oracle on random polynomials") {
    CounterRng rng({2024});
    for (int trial = 0; trial < 200; ++trial) {
        UniPoly p = random_unipoly(rng, 12);
        if (p.is_zero()) continue;
        auto roots = isolate_roots(p, kDom);
        CHECK(static_cast<int>(roots.size()) == count_real_roots(p, kDom));
        // brackets carry a sign change of the (square-free) defining polynomial
        for (const auto& r : roots) {
            std::vector<Rational> dc;
            for (const auto& z : r.defining()) dc.emplace_back(z);
            UniPoly def(dc);
            CHECK(def.eval(r.lo()) * def.eval(r.hi()) <= 0);
            // refinement never loses the root
            AlgebraicNumber finer = r.refined(r.bracket_width() / 1024);
            CHECK(compare(finer, r) == 0);
            CHECK(finer.lo() >= r.lo());
            CHECK(finer.hi() <= r.hi());
        }
        // roots strictly ordered
        for (std::size_t k = 1; k < roots.size(); ++k)
            CHECK(compare(roots[k - 1], roots[k]) < 0);
    }
}

TEST_CASE("sublevel membership is exact on random polynomials") {
    CounterRng rng({555});
    for (int trial = 0; trial < 100; ++trial) {
        UniPoly p = random_unipoly(rng, 8);
        if (p.is_zero()) continue;
        auto s = sublevel_intervals(p, kDom);
        CHECK(s.intervals.size() <= static_cast<std::size_t>(p.degree()) / 2 + 1);
        for (int pt = 0; pt < 1000; ++pt) {
            Rational t = rng.lattice({kDom.lo, kDom.hi}, 12);
            if (p.eval(t) == 0) continue; // roots bound the intervals
            bool negative = p.eval(t) < 0;
            // interval endpoints with p(t) != 0 are domain endpoints, where the
            // closed-domain sublevel set includes the point
            bool inside = false;
            for (const auto& [a, b] : s.intervals)
                if (compare(a, t) <= 0 && compare(b, t) >= 0) {
                    inside = true;
                    break;
                }
            CHECK(inside == negative);
        }
    }
}

TEST_CASE("algebraic comparison and equality certificates") {
    UniPoly p({Rational(-2), Rational(0), Rational(1)}); // eta^2-2
    auto sqrt2 = isolate_roots(p, {Rational(0), Rational(2)})[0];
    CHECK(compare(sqrt2, Rational(3, 2)) < 0);
    CHECK(compare(sqrt2, Rational(7, 5)) > 0);

    // the same root isolated from a multiple: eta^4 - 4 = (eta^2-2)(eta^2+2)
    UniPoly q({Rational(-4), Rational(0), Rational(0), Rational(0), Rational(1)});
    auto sqrt2b = isolate_roots(q, {Rational(0), Rational(2)})[0];
    CHECK(algebraic_equal(sqrt2, sqrt2b));
    CHECK(compare(sqrt2, sqrt2b) == 0);

    // distinct but very close roots separate
    // (eta - 1)(eta - 1 - 2^-40)
    Rational eps = rat_pow2_neg(40);
    UniPoly close({(Rational(1) + eps), -(Rational(2) + eps), Rational(1)});
    auto rr = isolate_roots(close, {Rational(0), Rational(2)});
    REQUIRE(rr.size() == 2);
    CHECK(compare(rr[0], rr[1]) < 0);
}

TEST_CASE("sign_at is exact") {
    UniPoly p({Rational(-2), Rational(0), Rational(1)});
    auto sqrt2 = isolate_roots(p, {Rational(0), Rational(2)})[0];
    CHECK(sign_at(p, sqrt2) == 0); // its own defining polynomial
    UniPoly cube({Rational(0), Rational(0), Rational(0), Rational(1)});
    CHECK(sign_at(cube, sqrt2) > 0);
    UniPoly shifted({Rational(-3), Rational(0), Rational(1)}); // eta^2-3 < 0 at sqrt2
    CHECK(sign_at(shifted, sqrt2) < 0);
    // (eta^2-2)^2 vanishes at sqrt2 as well
    UniPoly sq = p * p;
    CHECK(sign_at(sq, sqrt2) == 0);
    // rational point
    CHECK(sign_at(p, AlgebraicNumber::from_rational(Rational(1))) < 0);
}

TEST_CASE("interior_rational certifies strict interiority") {
    UniPoly p({Rational(-2), Rational(0), Rational(1)});
    auto sqrt2 = isolate_roots(p, {Rational(0), Rational(2)})[0];
    auto one = AlgebraicNumber::from_rational(Rational(1));
    Rational mid = interior_rational(one, sqrt2);
    CHECK(compare(one, mid) < 0);
    CHECK(compare(sqrt2, mid) > 0);
    // rational pair: exact midpoint
    auto a = AlgebraicNumber::from_rational(Rational(9, 10));
    auto b = AlgebraicNumber::from_rational(Rational(11, 10));
    CHECK(interior_rational(a, b) == Rational(1));
}
