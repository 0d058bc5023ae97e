#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gdtune/instances.hpp"
#include "gdtune/rng.hpp"

using namespace gdtune;

namespace {

// exact forward pass with rational ReLU, written independently of the
// symbolic expansion it checks
Rational direct_net_mse(const NetSpec& spec, std::span<const Rational> free_vals) {
    std::vector<Rational> w = spec.frozen;
    for (std::size_t k = 0; k < spec.free_indices.size(); ++k)
        w[static_cast<std::size_t>(spec.free_indices[k])] = free_vals[k];
    const std::size_t L = spec.widths.size() - 1;
    Rational loss(0);
    for (const auto& sample : spec.data) {
        std::vector<Rational> cur = sample.in;
        std::size_t off = 0;
        for (std::size_t l = 1; l <= L; ++l) {
            const int rows = spec.widths[l], cols = spec.widths[l - 1];
            std::vector<Rational> nxt(static_cast<std::size_t>(rows));
            for (int r = 0; r < rows; ++r) {
                Rational pre = w[off + static_cast<std::size_t>(rows) * cols + r];
                for (int c = 0; c < cols; ++c)
                    pre += w[off + static_cast<std::size_t>(r) * cols + c] * cur[c];
                if (l < L && pre < 0) pre = 0; // ReLU on hidden layers
                nxt[static_cast<std::size_t>(r)] = pre;
            }
            off += static_cast<std::size_t>(rows) * (cols + 1);
            cur = std::move(nxt);
        }
        for (std::size_t k = 0; k < cur.size(); ++k) {
            Rational diff = cur[k] - sample.out[k];
            loss += diff * diff;
        }
    }
    return loss / Rational(static_cast<unsigned long>(spec.data.size()));
}

} // namespace

TEST_CASE("gen_random_poly worked examples") {
    MultiPoly c = gen_random_poly(1, 0, {Rational(5), Rational(5)}, 7);
    CHECK(c == MultiPoly::constant(1, Rational(5)));

    MultiPoly a = gen_random_poly(1, 2, {Rational(-1), Rational(1)}, 42);
    MultiPoly b = gen_random_poly(1, 2, {Rational(-1), Rational(1)}, 42);
    CHECK(a == b);

    MultiPoly f = gen_random_poly(2, 3, {Rational(-1), Rational(1)}, 9);
    CHECK(f.total_degree() <= 3);
    CHECK(f.terms().size() <= 10); // C(3+2, 2)
}

TEST_CASE("1-1 ReLU net expansion matches the worked example") {
    // widths [1,1,1]: flat weights = [W1, b1, W2, b2]
    NetSpec spec;
    spec.widths = {1, 1, 1};
    spec.activation = Activation::relu;
    spec.data = {{{Rational(1)}, {Rational(1)}}};
    spec.free_indices = {0};
    spec.frozen = {Rational(0), Rational(0), Rational(1), Rational(0)};
    BuiltObjective built = build_objective(spec);
    REQUIRE(built.exact());
    const PwPolyObjective& f = *built.pw;
    CHECK(f.boundary_count() == 1);
    CHECK(f.boundaries()[0] == MultiPoly::variable(1, 0)); // pre-activation = w

    MultiPoly on(1); // (w - 1)^2
    on.add_term({2}, Rational(1));
    on.add_term({1}, Rational(-2));
    on.add_term({0}, Rational(1));
    CHECK(f.piece("+") == on);
    CHECK(f.piece("-") == MultiPoly::constant(1, Rational(1)));

    // frozen readout weight 2: loss (2 relu(w) - 1)^2
    spec.frozen[2] = Rational(2);
    BuiltObjective built2 = build_objective(spec);
    MultiPoly on2(1); // (2w - 1)^2 = 4w^2 - 4w + 1
    on2.add_term({2}, Rational(4));
    on2.add_term({1}, Rational(-4));
    on2.add_term({0}, Rational(1));
    CHECK(built2.pw->piece("+") == on2);
    CHECK(built2.pw->piece("-") == MultiPoly::constant(1, Rational(1)));
}

TEST_CASE("1-2-1 ReLU net with two samples has 2x2 boundaries") {
    NetSpec spec = gen_net_mse({1, 2, 1}, Activation::relu,
                               {{{Rational(1)}, {Rational(1)}},
                                {{Rational(2)}, {Rational(0)}}},
                               {0, 1}, {}, 5);
    BuiltObjective built = build_objective(spec);
    REQUIRE(built.exact());
    CHECK(built.pw->boundary_count() == 4); // 2 units x 2 samples
    CHECK(built.pw->dim() == 2);
}

TEST_CASE("piece cap raises BudgetExceeded") {
    // 3 hidden units x 2 samples = 6 boundaries > cap 4
    NetSpec spec = gen_net_mse({1, 3, 1}, Activation::relu,
                               {{{Rational(1)}, {Rational(1)}},
                                {{Rational(2)}, {Rational(0)}}},
                               {0, 1, 2}, {}, 5);
    CHECK_THROWS_AS(build_objective(spec, 4), BudgetExceededError);
}

TEST_CASE("ReLU expansion agrees exactly with the direct forward pass") {
    CounterRng rng({1717});
    NetSpec spec = gen_net_mse({2, 2, 1}, Activation::relu,
                               {{{Rational(1), Rational(1, 2)}, {Rational(1)}},
                                {{Rational(-1, 2), Rational(1)}, {Rational(0)}}},
                               {0, 1, 2, 3}, {}, 23);
    BuiltObjective built = build_objective(spec);
    REQUIRE(built.exact());
    for (int t = 0; t < 1000; ++t) {
        std::vector<Rational> pt;
        for (int j = 0; j < 4; ++j) pt.push_back(rng.lattice({Rational(-2), Rational(2)}, 10));
        CHECK(built.pw->eval(pt) == direct_net_mse(spec, pt));
    }
}

TEST_CASE("boundary count excludes frozen pre-activations") {
    // free weight only in the readout: hidden pre-activations are frozen
    NetSpec spec;
    spec.widths = {1, 1, 1};
    spec.activation = Activation::relu;
    spec.data = {{{Rational(1)}, {Rational(1)}}};
    spec.free_indices = {2}; // readout weight
    spec.frozen = {Rational(1, 2), Rational(0), Rational(0), Rational(0)};
    BuiltObjective built = build_objective(spec);
    CHECK(built.pw->boundary_count() == 0);
    // loss = (v * relu(1/2) - 1)^2 = (v/2 - 1)^2
    MultiPoly expect(1);
    expect.add_term({2}, Rational(1, 4));
    expect.add_term({1}, Rational(-1));
    expect.add_term({0}, Rational(1));
    CHECK(built.pw->piece("") == expect);
}

TEST_CASE("polynomial regularizer hook") {
    NetSpec spec;
    spec.widths = {1, 1, 1};
    spec.activation = Activation::relu;
    spec.data = {{{Rational(1)}, {Rational(1)}}};
    spec.free_indices = {0};
    spec.frozen = {Rational(0), Rational(0), Rational(1), Rational(0)};
    MultiPoly reg(1);
    reg.add_term({2}, Rational(1, 100));
    spec.regularizer = reg;
    BuiltObjective built = build_objective(spec);
    MultiPoly on(1);
    on.add_term({2}, Rational(1) + Rational(1, 100));
    on.add_term({1}, Rational(-2));
    on.add_term({0}, Rational(1));
    CHECK(built.pw->piece("+") == on);
}

TEST_CASE("deep ReLU nets are rejected for the exact path") {
    NetSpec spec = gen_net_mse({1, 2, 2, 1}, Activation::relu,
                               {{{Rational(1)}, {Rational(1)}}}, {0}, {}, 5);
    CHECK_THROWS_AS(build_objective(spec), ConfigError);
    // but smooth activations of any depth build a numeric descriptor
    spec.activation = Activation::tanh_act;
    BuiltObjective built = build_objective(spec);
    CHECK(!built.exact());
    CHECK(built.net.has_value());
}

TEST_CASE("sampling is deterministic and counter-indexed") {
    InstanceDistribution dist{ScalarQuadraticFamily{{Rational(1, 2), Rational(2)}}, 99};
    auto a = sample_instances(dist, 3, 7);
    auto b = sample_instances(dist, 3, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(serialize_instance(a[k]) == serialize_instance(b[k]));
    // exchangeability: instance k depends only on (seed, k)
    for (std::size_t k = 0; k < a.size(); ++k) {
        Instance direct = sample_instance(dist, 7, k);
        CHECK(serialize_instance(direct) == serialize_instance(a[k]));
    }
}

TEST_CASE("degenerate curvature range produces the fixed quadratic") {
    InstanceDistribution dist{ScalarQuadraticFamily{{Rational(1), Rational(1)}}, 1};
    auto sample = sample_instances(dist, 5, 3);
    MultiPoly expect(1);
    expect.add_term({2}, Rational(1, 2));
    for (const auto& inst : sample) {
        const auto& spec = std::get<PolySpec>(inst.objective);
        CHECK(spec.poly == expect);
        CHECK((*inst.x0)[0] == Rational(1));
    }
}

TEST_CASE("disjoint seeds give different samples") {
    InstanceDistribution dist{RandomPolyFamily{2, 3}, 4};
    int differing = 0;
    for (int pair = 0; pair < 20; ++pair) {
        auto a = sample_instances(dist, 4, 1000 + pair);
        auto b = sample_instances(dist, 4, 2000 + pair);
        bool diff = false;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (serialize_instance(a[k]) != serialize_instance(b[k])) diff = true;
        if (diff) ++differing;
    }
    CHECK(differing == 20);
}

TEST_CASE("instance serialization round trips") {
    NetSpec spec = gen_net_mse({1, 1, 1}, Activation::relu,
                               {{{Rational(1)}, {Rational(1)}}}, {0},
                               {Rational(0), Rational(0), Rational(2), Rational(0)}, 0);
    Instance inst;
    inst.objective = spec;
    inst.x0 = std::vector<Rational>{Rational(3, 2)};
    inst.label = "roundtrip";
    MultiPoly fv(1);
    fv.add_term({2}, Rational(2, 3));
    inst.validation = PolySpec{fv};

    Instance back = parse_instance(serialize_instance(inst));
    CHECK(serialize_instance(back) == serialize_instance(inst));
    CHECK(back.label == "roundtrip");
    CHECK((*back.x0)[0] == Rational(3, 2));
    // the rebuilt expansions agree pointwise
    BuiltObjective b1 = build_objective(inst.objective);
    BuiltObjective b2 = build_objective(back.objective);
    CHECK(b1.pw->piece("+") == b2.pw->piece("+"));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_instance("{"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"poly","d":1,"poly":[{"coef":"1/0","exps":[1]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"poly","d":1,"poly":[{"coef":"0.5","exps":[1]}]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_instance(
            R"({"kind":"net","d":1,"net":{"widths":[1,1],"activation":"gelu","data":[{"in":["1/1"],"out":["1/1"]}],"free":[0],"frozen":["0/1","0/1"]}})"),
        ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"mystery","d":1})"), ParseError);
    // x0 length mismatch
    CHECK_THROWS_AS(
        parse_instance(
            R"({"kind":"poly","d":2,"poly":[{"coef":"1/1","exps":[1,0]}],"x0":["1/1"]})"),
        ParseError);
}
