#include "gdtune/instances.hpp"

#include <algorithm>

namespace gdtune {

int objective_spec_dim(const ObjectiveSpec& spec) {
    if (const auto* p = std::get_if<PolySpec>(&spec)) return p->poly.dim();
    if (const auto* p = std::get_if<PwPolySpec>(&spec)) return p->dim;
    return static_cast<int>(std::get<NetSpec>(spec).free_indices.size());
}

// ---------------------------------------------------------------------------
// ReLU net expansion
// ---------------------------------------------------------------------------

namespace {

struct NetLayout {
    // offset of W_l (row-major) and b_l in the flat weight vector
    std::vector<std::size_t> w_off, b_off;
    std::size_t total = 0;
};

NetLayout net_layout(const std::vector<int>& widths) {
    NetLayout lay;
    std::size_t off = 0;
    for (std::size_t l = 1; l < widths.size(); ++l) {
        lay.w_off.push_back(off);
        off += static_cast<std::size_t>(widths[l]) * widths[l - 1];
        lay.b_off.push_back(off);
        off += static_cast<std::size_t>(widths[l]);
    }
    lay.total = off;
    return lay;
}

// weight as a polynomial in the free weights: a variable if free, else the
// frozen constant
MultiPoly weight_poly(const NetSpec& spec, std::size_t flat_index, int d,
                      const std::map<std::size_t, int>& free_of) {
    auto it = free_of.find(flat_index);
    if (it != free_of.end()) return MultiPoly::variable(d, it->second);
    return MultiPoly::constant(d, spec.frozen[flat_index]);
}

void validate_net_spec(const NetSpec& spec) {
    if (spec.widths.size() < 2) throw ParseError("net: widths needs input and output");
    for (int w : spec.widths)
        if (w < 1) throw ParseError("net: widths must be positive");
    const int expected = net_weight_count(spec.widths);
    if (static_cast<int>(spec.frozen.size()) != expected)
        throw ParseError("net: frozen weight vector must have length " +
                         std::to_string(expected));
    if (spec.data.empty()) throw ParseError("net: dataset must be nonempty");
    for (const auto& s : spec.data) {
        if (static_cast<int>(s.in.size()) != spec.widths.front() ||
            static_cast<int>(s.out.size()) != spec.widths.back())
            throw ParseError("net: sample dimensions do not match widths");
    }
    std::vector<int> sorted = spec.free_indices;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] < 0 || sorted[k] >= expected)
            throw ParseError("net: free weight index out of range");
        if (k > 0 && sorted[k] == sorted[k - 1])
            throw ParseError("net: duplicate free weight index");
    }
    if (spec.free_indices.empty()) throw ParseError("net: at least one free weight required");
    if (spec.regularizer &&
        spec.regularizer->dim() != static_cast<int>(spec.free_indices.size()))
        throw ParseError("net: regularizer dimension != number of free weights");
}

BuiltObjective build_relu_net(const NetSpec& spec, int piece_cap_p) {
    const int d = static_cast<int>(spec.free_indices.size());
    const std::size_t L = spec.widths.size() - 1;
    if (L > 2)
        throw ConfigError(
            "exact ReLU expansion supports at most one hidden layer; use the numeric oracle "
            "for deeper nets");
    NetLayout lay = net_layout(spec.widths);
    std::map<std::size_t, int> free_of;
    for (int k = 0; k < d; ++k) free_of.emplace(spec.free_indices[k], k);

    const int n_hidden = (L == 2) ? spec.widths[1] : 0;
    const auto n_samples = spec.data.size();

    // pre-activations per (sample, hidden unit); sample-major boundary order
    constexpr int kAlwaysOff = -1, kAlwaysOn = -2;
    std::vector<std::vector<MultiPoly>> preact(n_samples);
    std::vector<MultiPoly> boundaries;
    std::vector<std::vector<int>> boundary_index(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        boundary_index[s].assign(static_cast<std::size_t>(n_hidden), kAlwaysOff);
        for (int u = 0; u < n_hidden; ++u) {
            MultiPoly a = weight_poly(spec, lay.b_off[0] + u, d, free_of);
            for (int c = 0; c < spec.widths[0]; ++c) {
                MultiPoly w = weight_poly(spec, lay.w_off[0] + static_cast<std::size_t>(u) *
                                                                   spec.widths[0] + c,
                                          d, free_of);
                a += spec.data[s].in[c] * w;
            }
            preact[s].push_back(a);
            if (a.is_constant()) {
                // frozen pre-activation: the unit's state is fixed (0 counts off)
                Rational v = a.is_zero() ? Rational(0) : a.terms().begin()->second;
                boundary_index[s][u] = v > 0 ? kAlwaysOn : kAlwaysOff;
            } else {
                boundary_index[s][u] = static_cast<int>(boundaries.size());
                boundaries.push_back(a);
            }
        }
    }
    const int p = static_cast<int>(boundaries.size());
    if (p > piece_cap_p)
        throw BudgetExceededError("net: " + std::to_string(p) +
                                  " boundaries exceed the piece cap of " +
                                  std::to_string(piece_cap_p));

    // loss for a sign vector; captures the expansion structure by value
    auto loss_for = [spec, lay, free_of, preact, boundary_index, d,
                     n_hidden](const std::string& signs) -> std::optional<MultiPoly> {
        MultiPoly loss(d);
        const std::size_t L2 = spec.widths.size() - 1;
        for (std::size_t s = 0; s < spec.data.size(); ++s) {
            std::vector<MultiPoly> h;
            if (L2 == 2) {
                for (int u = 0; u < n_hidden; ++u) {
                    int bi = boundary_index[s][u];
                    bool on = bi == kAlwaysOn ||
                              (bi >= 0 && signs[static_cast<std::size_t>(bi)] == '+');
                    h.push_back(on ? preact[s][u] : MultiPoly(d));
                }
            } else {
                // no hidden layer: readout acts on the raw input
                for (int c = 0; c < spec.widths[0]; ++c)
                    h.push_back(MultiPoly::constant(d, spec.data[s].in[c]));
            }
            const std::size_t lw = L2 - 1; // readout layer index into layout
            const int rows = spec.widths[L2], cols = static_cast<int>(h.size());
            for (int r = 0; r < rows; ++r) {
                MultiPoly o = weight_poly(spec, lay.b_off[lw] + r, d, free_of);
                for (int c = 0; c < cols; ++c) {
                    MultiPoly w = weight_poly(
                        spec, lay.w_off[lw] + static_cast<std::size_t>(r) * cols + c, d,
                        free_of);
                    o += w * h[static_cast<std::size_t>(c)];
                }
                o -= MultiPoly::constant(d, spec.data[s].out[r]);
                loss += o * o;
            }
        }
        loss = Rational(1, static_cast<unsigned long>(spec.data.size())) * loss;
        if (spec.regularizer) loss += *spec.regularizer;
        return loss;
    };

    // degree bound: the all-on piece dominates (turning units off only drops terms)
    int declared = std::max(1, loss_for(std::string(static_cast<std::size_t>(p), '+'))
                                   ->total_degree());

    BuiltObjective out;
    out.pw.emplace(d, std::move(boundaries), std::move(loss_for), declared);
    return out;
}

} // namespace

BuiltObjective build_objective(const ObjectiveSpec& spec, int piece_cap_p) {
    BuiltObjective out;
    if (const auto* p = std::get_if<PolySpec>(&spec)) {
        out.pw.emplace(p->poly);
        return out;
    }
    if (const auto* p = std::get_if<PwPolySpec>(&spec)) {
        out.pw.emplace(p->dim, p->boundaries,
                       std::map<std::string, MultiPoly>(p->pieces));
        return out;
    }
    const auto& net = std::get<NetSpec>(spec);
    validate_net_spec(net);
    if (net.activation == Activation::relu) return build_relu_net(net, piece_cap_p);
    out.net.emplace(SmoothNetDescriptor{net.widths, net.activation, net.data,
                                        net.free_indices, net.frozen});
    return out;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

void enumerate_exponents(int d, int delta, ExpVec& cur, int pos, int remaining,
                         const std::function<void(const ExpVec&)>& visit) {
    if (pos == d) {
        visit(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        enumerate_exponents(d, delta, cur, pos + 1, remaining - e, visit);
    }
    cur[pos] = 0;
}

} // namespace

MultiPoly gen_random_poly(int d, int delta, const RatInterval& coeff_range,
                          std::uint64_t seed) {
    if (d < 1 || delta < 0) throw ConfigError("gen_random_poly: need d >= 1, delta >= 0");
    if (!(coeff_range.lo <= coeff_range.hi))
        throw ConfigError("gen_random_poly: empty coefficient range");
    CounterRng rng({0x706f6c79ULL, seed});
    MultiPoly f(d);
    // deterministic monomial order: collect exponent vectors, sort graded-lex
    std::vector<ExpVec> exps;
    ExpVec cur(d, 0);
    enumerate_exponents(d, delta, cur, 0, delta, [&](const ExpVec& e) { exps.push_back(e); });
    std::sort(exps.begin(), exps.end(), GradedLexLess{});
    for (const auto& e : exps) f.add_term(e, rng.lattice(coeff_range));
    return f;
}

NetSpec gen_net_mse(std::vector<int> widths, Activation activation,
                    std::vector<NetSample> data, std::vector<int> free_indices,
                    std::vector<Rational> frozen, std::uint64_t seed,
                    RatInterval weight_range) {
    NetSpec spec;
    spec.widths = std::move(widths);
    spec.activation = activation;
    spec.data = std::move(data);
    spec.free_indices = std::move(free_indices);
    const int n = net_weight_count(spec.widths);
    if (frozen.empty()) {
        CounterRng rng({0x6e657477ULL, seed});
        frozen.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) frozen.push_back(rng.lattice(weight_range));
    }
    spec.frozen = std::move(frozen);
    validate_net_spec(spec);
    return spec;
}

// ---------------------------------------------------------------------------
// distributions
// ---------------------------------------------------------------------------

Instance sample_instance(const InstanceDistribution& dist, std::uint64_t seed,
                         std::uint64_t index) {
    Instance inst;
    if (const auto* fam = std::get_if<RandomPolyFamily>(&dist.family)) {
        CounterRng rng({0x7270ULL, dist.seed, seed, index});
        std::uint64_t fseed = rng.next();
        inst.objective = PolySpec{gen_random_poly(fam->d, fam->delta, fam->coeff_range, fseed)};
        std::vector<Rational> x0;
        for (int j = 0; j < fam->d; ++j) x0.push_back(rng.lattice(fam->x0_range));
        inst.x0 = std::move(x0);
        if (fam->with_validation)
            inst.validation =
                PolySpec{gen_random_poly(fam->d, fam->delta_v, fam->coeff_range, rng.next())};
        inst.label = "rp-" + std::to_string(seed) + "-" + std::to_string(index);
        return inst;
    }
    if (const auto* fam = std::get_if<ScalarQuadraticFamily>(&dist.family)) {
        CounterRng rng({0x7371ULL, dist.seed, seed, index});
        Rational a = rng.lattice(fam->curvature);
        MultiPoly f(1);
        f.add_term({2}, a / 2);
        inst.objective = PolySpec{std::move(f)};
        inst.x0 = std::vector<Rational>{Rational(1)};
        inst.label = "sq-" + std::to_string(seed) + "-" + std::to_string(index);
        return inst;
    }
    const auto& fam = std::get<NetMseFamily>(dist.family);
    CounterRng rng({0x6e6dULL, dist.seed, seed, index});
    std::uint64_t netseed = rng.next();
    inst.objective = gen_net_mse(fam.widths, fam.activation, fam.data, fam.free_indices, {},
                                 netseed, fam.weight_range);
    const int d = static_cast<int>(fam.free_indices.size());
    std::vector<Rational> x0;
    for (int j = 0; j < d; ++j) x0.push_back(rng.lattice(fam.weight_range));
    inst.x0 = std::move(x0);
    if (fam.with_validation)
        inst.validation = PolySpec{gen_random_poly(d, fam.delta_v,
                                                   {Rational(-1), Rational(1)}, rng.next())};
    inst.label = "net-" + std::to_string(seed) + "-" + std::to_string(index);
    return inst;
}

std::vector<Instance> sample_instances(const InstanceDistribution& dist, int m,
                                       std::uint64_t seed) {
    if (m < 1) throw ConfigError("sample_instances: m must be >= 1");
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        out.push_back(sample_instance(dist, seed, static_cast<std::uint64_t>(k)));
    return out;
}

// ---------------------------------------------------------------------------
// instance files
// ---------------------------------------------------------------------------

nlohmann::json multipoly_to_json(const MultiPoly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) {
        nlohmann::json term;
        term["coef"] = rat_str(c);
        term["exps"] = e;
        arr.push_back(std::move(term));
    }
    return arr;
}

MultiPoly multipoly_from_json(const nlohmann::json& j, int dim) {
    if (!j.is_array()) throw ParseError("polynomial: expected a term array");
    MultiPoly f(dim);
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coef") || !term.contains("exps"))
            throw ParseError("polynomial term: expected {coef, exps}");
        if (!term.at("coef").is_string())
            throw ParseError("polynomial term: coef must be a num/den string");
        Rational c = rat_parse(term.at("coef").get<std::string>());
        ExpVec e = term.at("exps").get<ExpVec>();
        if (static_cast<int>(e.size()) != dim)
            throw ParseError("polynomial term: exps length != d");
        for (int x : e)
            if (x < 0) throw ParseError("polynomial term: negative exponent");
        f.add_term(e, c);
    }
    return f;
}

namespace {

std::vector<Rational> rational_vector_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected array of num/den strings");
    std::vector<Rational> out;
    for (const auto& e : j) {
        if (!e.is_string())
            throw ParseError(std::string(what) + ": entries must be num/den strings");
        out.push_back(rat_parse(e.get<std::string>()));
    }
    return out;
}

nlohmann::json rational_vector_to_json(const std::vector<Rational>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : v) arr.push_back(rat_str(r));
    return arr;
}

nlohmann::json objective_spec_to_json(const ObjectiveSpec& spec) {
    nlohmann::json j;
    if (const auto* p = std::get_if<PolySpec>(&spec)) {
        j["kind"] = "poly";
        j["d"] = p->poly.dim();
        j["poly"] = multipoly_to_json(p->poly);
        return j;
    }
    if (const auto* p = std::get_if<PwPolySpec>(&spec)) {
        j["kind"] = "pwpoly";
        j["d"] = p->dim;
        nlohmann::json bs = nlohmann::json::array();
        for (const auto& b : p->boundaries) bs.push_back(multipoly_to_json(b));
        j["boundaries"] = std::move(bs);
        nlohmann::json ps = nlohmann::json::array();
        for (const auto& [signs, poly] : p->pieces) {
            nlohmann::json piece;
            piece["signs"] = signs;
            piece["poly"] = multipoly_to_json(poly);
            ps.push_back(std::move(piece));
        }
        j["pieces"] = std::move(ps);
        return j;
    }
    const auto& net = std::get<NetSpec>(spec);
    j["kind"] = "net";
    j["d"] = static_cast<int>(net.free_indices.size());
    nlohmann::json nj;
    nj["widths"] = net.widths;
    nj["activation"] = activation_to_string(net.activation);
    nlohmann::json data = nlohmann::json::array();
    for (const auto& s : net.data) {
        nlohmann::json sj;
        sj["in"] = rational_vector_to_json(s.in);
        sj["out"] = rational_vector_to_json(s.out);
        data.push_back(std::move(sj));
    }
    nj["data"] = std::move(data);
    nj["free"] = net.free_indices;
    nj["frozen"] = rational_vector_to_json(net.frozen);
    if (net.regularizer) nj["regularizer"] = multipoly_to_json(*net.regularizer);
    j["net"] = std::move(nj);
    return j;
}

ObjectiveSpec objective_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("objective: expected an object with 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (!j.contains("d") || !j.at("d").is_number_integer())
        throw ParseError("objective: missing integer field 'd'");
    const int d = j.at("d").get<int>();
    if (d < 1) throw ParseError("objective: d must be >= 1");
    if (kind == "poly") {
        if (!j.contains("poly")) throw ParseError("poly objective: missing 'poly'");
        return PolySpec{multipoly_from_json(j.at("poly"), d)};
    }
    if (kind == "pwpoly") {
        PwPolySpec spec;
        spec.dim = d;
        for (const auto& b : j.value("boundaries", nlohmann::json::array()))
            spec.boundaries.push_back(multipoly_from_json(b, d));
        if (!j.contains("pieces")) throw ParseError("pwpoly objective: missing 'pieces'");
        for (const auto& piece : j.at("pieces")) {
            if (!piece.is_object() || !piece.contains("signs") || !piece.contains("poly"))
                throw ParseError("pwpoly piece: expected {signs, poly}");
            std::string signs = piece.at("signs").get<std::string>();
            if (signs.size() != spec.boundaries.size())
                throw ParseError("pwpoly piece: signs length != boundary count");
            for (char ch : signs)
                if (ch != '+' && ch != '-')
                    throw ParseError("pwpoly piece: signs must be '+'/'-'");
            if (!spec.pieces.emplace(signs, multipoly_from_json(piece.at("poly"), d)).second)
                throw ParseError("pwpoly piece: duplicate sign vector '" + signs + "'");
        }
        return spec;
    }
    if (kind == "net") {
        if (!j.contains("net")) throw ParseError("net objective: missing 'net'");
        const auto& nj = j.at("net");
        NetSpec spec;
        spec.widths = nj.at("widths").get<std::vector<int>>();
        spec.activation = activation_from_string(nj.at("activation").get<std::string>());
        for (const auto& sj : nj.at("data")) {
            NetSample s;
            s.in = rational_vector_from_json(sj.at("in"), "net sample input");
            s.out = rational_vector_from_json(sj.at("out"), "net sample output");
            spec.data.push_back(std::move(s));
        }
        spec.free_indices = nj.at("free").get<std::vector<int>>();
        spec.frozen = rational_vector_from_json(nj.at("frozen"), "net frozen weights");
        if (nj.contains("regularizer"))
            spec.regularizer = multipoly_from_json(
                nj.at("regularizer"), static_cast<int>(spec.free_indices.size()));
        validate_net_spec(spec);
        if (static_cast<int>(spec.free_indices.size()) != d)
            throw ParseError("net objective: d != number of free weights");
        return spec;
    }
    throw ParseError("objective: unknown kind '" + kind + "'");
}

} // namespace

namespace {

RatInterval range_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string(what) + ": expected [lo, hi] num/den strings");
    RatInterval r{rat_parse(j.at(0).get<std::string>()), rat_parse(j.at(1).get<std::string>())};
    if (!(r.lo <= r.hi)) throw ParseError(std::string(what) + ": lo > hi");
    return r;
}

nlohmann::json range_to_json(const RatInterval& r) {
    return nlohmann::json::array({rat_str(r.lo), rat_str(r.hi)});
}

} // namespace

nlohmann::json family_to_json(const FamilySpec& family) {
    nlohmann::json j;
    if (const auto* f = std::get_if<RandomPolyFamily>(&family)) {
        j["family"] = "random_poly";
        j["d"] = f->d;
        j["delta"] = f->delta;
        j["coeff_range"] = range_to_json(f->coeff_range);
        j["x0_range"] = range_to_json(f->x0_range);
        j["with_validation"] = f->with_validation;
        j["delta_v"] = f->delta_v;
        return j;
    }
    if (const auto* f = std::get_if<ScalarQuadraticFamily>(&family)) {
        j["family"] = "scalar_quadratic";
        j["curvature"] = range_to_json(f->curvature);
        return j;
    }
    const auto& f = std::get<NetMseFamily>(family);
    j["family"] = "net_mse";
    j["widths"] = f.widths;
    j["activation"] = activation_to_string(f.activation);
    nlohmann::json data = nlohmann::json::array();
    for (const auto& s : f.data) {
        nlohmann::json sj;
        sj["in"] = rational_vector_to_json(s.in);
        sj["out"] = rational_vector_to_json(s.out);
        data.push_back(std::move(sj));
    }
    j["data"] = std::move(data);
    j["free"] = f.free_indices;
    j["weight_range"] = range_to_json(f.weight_range);
    j["with_validation"] = f.with_validation;
    j["delta_v"] = f.delta_v;
    return j;
}

FamilySpec family_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("family").get<std::string>();
        if (kind == "random_poly") {
            RandomPolyFamily f;
            f.d = j.at("d").get<int>();
            f.delta = j.at("delta").get<int>();
            if (j.contains("coeff_range")) f.coeff_range = range_from_json(j.at("coeff_range"), "coeff_range");
            if (j.contains("x0_range")) f.x0_range = range_from_json(j.at("x0_range"), "x0_range");
            f.with_validation = j.value("with_validation", false);
            f.delta_v = j.value("delta_v", f.delta);
            return f;
        }
        if (kind == "scalar_quadratic") {
            ScalarQuadraticFamily f;
            if (j.contains("curvature")) f.curvature = range_from_json(j.at("curvature"), "curvature");
            return f;
        }
        if (kind == "net_mse") {
            NetMseFamily f;
            f.widths = j.at("widths").get<std::vector<int>>();
            f.activation = activation_from_string(j.at("activation").get<std::string>());
            for (const auto& sj : j.at("data")) {
                NetSample s;
                s.in = rational_vector_from_json(sj.at("in"), "family sample input");
                s.out = rational_vector_from_json(sj.at("out"), "family sample output");
                f.data.push_back(std::move(s));
            }
            f.free_indices = j.at("free").get<std::vector<int>>();
            if (j.contains("weight_range"))
                f.weight_range = range_from_json(j.at("weight_range"), "weight_range");
            f.with_validation = j.value("with_validation", false);
            f.delta_v = j.value("delta_v", 2);
            return f;
        }
        throw ParseError("distribution: unknown family '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("distribution: ") + e.what());
    }
}

nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j = objective_spec_to_json(inst.objective);
    if (inst.x0) j["x0"] = rational_vector_to_json(*inst.x0);
    if (inst.validation) j["validation"] = objective_spec_to_json(*inst.validation);
    j["label"] = inst.label;
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    try {
        Instance inst;
        inst.objective = objective_spec_from_json(j);
        if (j.contains("x0")) {
            inst.x0 = rational_vector_from_json(j.at("x0"), "x0");
            if (static_cast<int>(inst.x0->size()) != objective_spec_dim(inst.objective))
                throw ParseError("x0 length != objective dimension");
        }
        if (j.contains("validation")) {
            inst.validation = objective_spec_from_json(j.at("validation"));
            if (objective_spec_dim(*inst.validation) != objective_spec_dim(inst.objective))
                throw ParseError("validation dimension != objective dimension");
        }
        inst.label = j.value("label", std::string("unnamed"));
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("instance: malformed JSON");
    return instance_from_json(j);
}

} // namespace gdtune
