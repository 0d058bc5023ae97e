#include "gdtune/piecewise.hpp"

#include <algorithm>
#include <functional>

namespace gdtune {

namespace {

AlgebraicNumber rat_alg(const Rational& r) { return AlgebraicNumber::from_rational(r); }

UniPoly defining_unipoly(const AlgebraicNumber& a) {
    std::vector<Rational> c;
    c.reserve(a.defining().size());
    for (const auto& z : a.defining()) c.emplace_back(z);
    return UniPoly(std::move(c));
}

void validate_breakpoints(const RatInterval& dom, const std::vector<AlgebraicNumber>& bps) {
    if (!(dom.lo < dom.hi)) throw ConfigError("piecewise: empty domain");
    for (std::size_t k = 0; k < bps.size(); ++k) {
        if (compare(bps[k], dom.lo) <= 0 || compare(bps[k], dom.hi) >= 0)
            throw ConfigError("piecewise: breakpoint outside the open domain");
        if (k > 0 && compare(bps[k - 1], bps[k]) >= 0)
            throw ConfigError("piecewise: breakpoints not strictly increasing");
    }
}

// index of the cell owning t under the left-cell convention
template <typename Fn>
std::size_t cell_index_at(const Fn& f, const Rational& t) {
    if (!f.domain.contains(t)) throw DomainMismatchError("value_at: point outside domain");
    std::size_t lo = 0, hi = f.breakpoints.size();
    // count of breakpoints strictly below t
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (compare(f.breakpoints[mid], t) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

// walks the refined partition of two functions over a shared domain
void walk_refined(const PwConstFn& a, const PwConstFn& b,
                  const std::function<void(const Rational&, const Rational&)>& cell,
                  const std::function<void(const AlgebraicNumber&)>& breakpoint) {
    if (!(a.domain == b.domain))
        throw DomainMismatchError("piecewise op: domains differ");
    std::size_t i = 0, j = 0;
    cell(a.values[0], b.values[0]);
    while (i < a.breakpoints.size() || j < b.breakpoints.size()) {
        int which; // -1: a's next, +1: b's next, 0: shared
        if (i == a.breakpoints.size())
            which = +1;
        else if (j == b.breakpoints.size())
            which = -1;
        else
            which = compare(a.breakpoints[i], b.breakpoints[j]);
        if (which <= 0) {
            breakpoint(a.breakpoints[i]);
            ++i;
            if (which == 0) ++j;
        } else {
            breakpoint(b.breakpoints[j]);
            ++j;
        }
        cell(a.values[i], b.values[j]);
    }
}

PwConstFn combine(const PwConstFn& a, const PwConstFn& b,
                  const std::function<Rational(const Rational&, const Rational&)>& op) {
    PwConstFn out;
    out.domain = a.domain;
    walk_refined(
        a, b, [&](const Rational& x, const Rational& y) { out.values.push_back(op(x, y)); },
        [&](const AlgebraicNumber& bp) { out.breakpoints.push_back(bp); });
    return out.canonicalized();
}

} // namespace

AlgebraicNumber algebraic_from_bracket(const UniPoly& defining, const Rational& lo,
                                       const Rational& hi) {
    if (lo == hi) return AlgebraicNumber::from_rational(lo);
    if (lo > hi) throw ParseError("algebraic bracket with lo > hi");
    auto roots = isolate_roots(defining, {lo, hi});
    if (roots.size() != 1)
        throw ParseError("algebraic bracket does not isolate exactly one root");
    return roots[0];
}

PwConstFn PwConstFn::constant(RatInterval dom, Rational v) {
    PwConstFn f;
    f.domain = std::move(dom);
    f.values.push_back(std::move(v));
    return f;
}

PwConstFn PwConstFn::make(RatInterval dom, std::vector<AlgebraicNumber> bps,
                          std::vector<Rational> vals) {
    if (vals.size() != bps.size() + 1)
        throw ConfigError("PwConstFn: values must be breakpoints+1");
    validate_breakpoints(dom, bps);
    PwConstFn f;
    f.domain = std::move(dom);
    f.breakpoints = std::move(bps);
    f.values = std::move(vals);
    return f;
}

const Rational& PwConstFn::value_at(const Rational& t) const {
    return values[cell_index_at(*this, t)];
}

PwConstFn PwConstFn::canonicalized() const {
    PwConstFn out;
    out.domain = domain;
    out.values.push_back(values[0]);
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        if (values[k + 1] == out.values.back()) continue; // removable breakpoint
        out.breakpoints.push_back(breakpoints[k]);
        out.values.push_back(values[k + 1]);
    }
    return out;
}

PwPolyFn PwPolyFn::make(RatInterval dom, std::vector<AlgebraicNumber> bps,
                        std::vector<UniPoly> pieces) {
    if (pieces.size() != bps.size() + 1)
        throw ConfigError("PwPolyFn: pieces must be breakpoints+1");
    validate_breakpoints(dom, bps);
    PwPolyFn f;
    f.domain = std::move(dom);
    f.breakpoints = std::move(bps);
    f.pieces = std::move(pieces);
    return f;
}

Rational PwPolyFn::value_at(const Rational& t) const {
    return pieces[cell_index_at(*this, t)].eval(t);
}

double PwPolyFn::value_at_double(double t) const {
    // locate with rational comparisons against bracket midpoints; the double
    // entry point is for plotting and numeric cross-checks only
    std::size_t k = 0;
    while (k < breakpoints.size() && breakpoints[k].approx() < t) ++k;
    return pieces[k].eval_double(t);
}

std::vector<AlgebraicNumber> partition_refine(
    std::span<const std::vector<AlgebraicNumber>> partitions) {
    std::vector<AlgebraicNumber> all;
    for (const auto& part : partitions) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return compare(a, b) < 0;
    });
    std::vector<AlgebraicNumber> out;
    for (auto& a : all) {
        if (!out.empty() && compare(out.back(), a) == 0) continue;
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

PwConstFn fold_sum(std::span<const PwConstFn> fs) {
    if (fs.size() == 1) return fs[0].canonicalized();
    std::size_t half = fs.size() / 2;
    PwConstFn a = fold_sum(fs.subspan(0, half));
    PwConstFn b = fold_sum(fs.subspan(half));
    return combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

} // namespace

PwConstFn pwconst_sum(std::span<const PwConstFn> fs) {
    if (fs.empty()) throw ConfigError("pwconst_sum: empty input");
    for (std::size_t k = 1; k < fs.size(); ++k)
        if (!(fs[k].domain == fs[0].domain))
            throw DomainMismatchError("pwconst_sum: domains differ");
    return fold_sum(fs);
}

PwConstFn pwconst_mean(std::span<const PwConstFn> fs) {
    PwConstFn sum = pwconst_sum(fs);
    Rational inv(1, static_cast<unsigned long>(fs.size()));
    for (auto& v : sum.values) v *= inv;
    return sum; // scaling preserves canonical form
}

ArgminResult pwconst_argmin(const PwConstFn& f) {
    if (f.values.empty()) throw ConfigError("pwconst_argmin: empty function");
    std::size_t best = 0;
    for (std::size_t k = 1; k < f.values.size(); ++k)
        if (f.values[k] < f.values[best]) best = k;
    ArgminResult r;
    r.cell_index = best;
    r.cell_lo = best == 0 ? rat_alg(f.domain.lo) : f.breakpoints[best - 1];
    r.cell_hi = best == f.breakpoints.size() ? rat_alg(f.domain.hi) : f.breakpoints[best];
    r.value = f.values[best];
    r.eta_hat = interior_rational(r.cell_lo, r.cell_hi);
    return r;
}

Rational pw_sup_diff(const PwConstFn& f, const PwConstFn& g) {
    Rational best(0);
    bool first = true;
    walk_refined(
        f, g,
        [&](const Rational& x, const Rational& y) {
            Rational d = rat_abs(x - y);
            if (first || d > best) {
                best = std::move(d);
                first = false;
            }
        },
        [](const AlgebraicNumber&) {});
    return best;
}

// ---------------------------------------------------------------------------
// pwpoly_min
// ---------------------------------------------------------------------------

namespace {

// remainder of p modulo the defining polynomial of an algebraic point;
// p(loc) == (p mod defining)(loc), and a constant remainder certifies a
// rational value at the irrational point
UniPoly reduce_mod_defining(const UniPoly& p, const AlgebraicNumber& loc) {
    UniPoly d = defining_unipoly(loc);
    UniPoly r = p;
    while (!r.is_zero() && r.degree() >= d.degree()) {
        Rational scale = r.leading() / d.leading();
        int shift = r.degree() - d.degree();
        std::vector<Rational> sub(static_cast<std::size_t>(shift) + d.coeffs().size(),
                                  Rational(0));
        for (std::size_t k = 0; k < d.coeffs().size(); ++k)
            sub[k + shift] = scale * d.coeffs()[k];
        r -= UniPoly(std::move(sub));
    }
    return r;
}

struct MinCandidate {
    AlgebraicNumber loc;
    bool exact;
    Rational exact_value;
    UniPoly residual; // value = residual(loc) when !exact
};

MinCandidate make_candidate(const UniPoly& piece, const AlgebraicNumber& loc) {
    MinCandidate c{loc, false, Rational(0), UniPoly()};
    if (loc.is_rational()) {
        c.exact = true;
        c.exact_value = piece.eval(loc.value());
        return c;
    }
    UniPoly r = reduce_mod_defining(piece, loc);
    if (r.degree() == 0 || r.is_zero()) {
        c.exact = true;
        c.exact_value = r.is_zero() ? Rational(0) : r.coeffs()[0];
        return c;
    }
    c.residual = std::move(r);
    return c;
}

RatInterval poly_range(const UniPoly& p, const Rational& lo, const Rational& hi) {
    Rational rlo(0), rhi(0);
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        Rational a = rlo * lo, b = rlo * hi, c = rhi * lo, d = rhi * hi;
        Rational nlo = std::min(std::min(a, b), std::min(c, d));
        Rational nhi = std::max(std::max(a, b), std::max(c, d));
        rlo = nlo + p.coeffs()[k];
        rhi = nhi + p.coeffs()[k];
    }
    return {rlo, rhi};
}

RatInterval candidate_range(const MinCandidate& c, const Rational& width_goal) {
    if (c.exact) return {c.exact_value, c.exact_value};
    AlgebraicNumber loc = c.loc;
    while (true) {
        RatInterval r = poly_range(c.residual, loc.lo(), loc.hi());
        if (r.width() <= width_goal) return r;
        loc = loc.refined(loc.bracket_width() / 2);
        if (loc.is_rational())
            return {c.residual.eval(loc.value()), c.residual.eval(loc.value())};
    }
}

// sign of (x - y); irrational ties finer than 2^-256 treated as equal
int cmp_candidate_values(const MinCandidate& x, const MinCandidate& y) {
    if (x.exact && y.exact) return cmp(x.exact_value, y.exact_value) < 0   ? -1
                                   : x.exact_value == y.exact_value ? 0
                                                                    : +1;
    if (x.exact) {
        UniPoly diff = y.residual - UniPoly(x.exact_value);
        return -sign_at(diff, y.loc);
    }
    if (y.exact) {
        UniPoly diff = x.residual - UniPoly(y.exact_value);
        return sign_at(diff, x.loc);
    }
    if (compare(x.loc, y.loc) == 0) {
        UniPoly diff = x.residual - y.residual;
        return sign_at(diff, x.loc);
    }
    Rational w(1);
    const Rational cap = rat_pow2_neg(256);
    while (true) {
        RatInterval rx = candidate_range(x, w);
        RatInterval ry = candidate_range(y, w);
        if (rx.hi < ry.lo) return -1;
        if (ry.hi < rx.lo) return +1;
        if (w <= cap) return 0; // exact-tie depth reached; leftmost wins upstream
        w /= 65536;
    }
}

} // namespace

PwMinResult pwpoly_min(const PwPolyFn& f) {
    if (f.pieces.empty()) throw ConfigError("pwpoly_min: empty function");
    std::vector<AlgebraicNumber> cuts;
    cuts.push_back(rat_alg(f.domain.lo));
    for (const auto& bp : f.breakpoints) cuts.push_back(bp);
    cuts.push_back(rat_alg(f.domain.hi));

    std::optional<MinCandidate> best;
    for (std::size_t cell = 0; cell < f.pieces.size(); ++cell) {
        const UniPoly& piece = f.pieces[cell];
        const AlgebraicNumber& lo = cuts[cell];
        const AlgebraicNumber& hi = cuts[cell + 1];
        std::vector<MinCandidate> cands;
        cands.push_back(make_candidate(piece, lo));
        UniPoly dp = piece.derivative();
        if (!dp.is_zero() && dp.degree() >= 1) {
            RatInterval enclosure{lo.lo(), hi.hi()};
            if (enclosure.lo < enclosure.hi) {
                for (const auto& root : isolate_roots(dp, enclosure))
                    if (compare(root, lo) > 0 && compare(root, hi) < 0)
                        cands.push_back(make_candidate(piece, root));
            }
        }
        cands.push_back(make_candidate(piece, hi));
        for (auto& c : cands) {
            if (!best || cmp_candidate_values(c, *best) < 0) best = std::move(c);
        }
    }

    PwMinResult out;
    out.location = best->loc;
    if (best->exact) {
        out.value_exact = true;
        out.value = best->exact_value;
        out.value_bracket = {best->exact_value, best->exact_value};
    } else {
        out.value_exact = false;
        out.value_bracket = candidate_range(*best, rat_pow2_neg(30));
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

nlohmann::json unipoly_to_json(const UniPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back(rat_str(c));
    return arr;
}

UniPoly unipoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("polynomial: expected coefficient array");
    std::vector<Rational> c;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError("polynomial: coefficients must be num/den strings");
        c.push_back(rat_parse(e.get<std::string>()));
    }
    return UniPoly(std::move(c));
}

nlohmann::json algebraic_to_json(const AlgebraicNumber& a) {
    nlohmann::json j;
    nlohmann::json def = nlohmann::json::array();
    for (const auto& z : a.defining()) def.push_back(z.get_str() + "/1");
    j["defining"] = std::move(def);
    j["lo"] = rat_str(a.lo());
    j["hi"] = rat_str(a.hi());
    return j;
}

AlgebraicNumber algebraic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("defining") || !j.contains("lo") || !j.contains("hi"))
        throw ParseError("breakpoint: expected {defining, lo, hi}");
    UniPoly def = unipoly_from_json(j.at("defining"));
    Rational lo = rat_parse(j.at("lo").get<std::string>());
    Rational hi = rat_parse(j.at("hi").get<std::string>());
    return algebraic_from_bracket(def, lo, hi);
}

nlohmann::json PwConstFn::to_json() const {
    nlohmann::json j;
    j["kind"] = "pwconst";
    j["domain"] = {{"lo", rat_str(domain.lo)}, {"hi", rat_str(domain.hi)}};
    nlohmann::json bps = nlohmann::json::array();
    for (const auto& b : breakpoints) bps.push_back(algebraic_to_json(b));
    j["breakpoints"] = std::move(bps);
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : values) vals.push_back(rat_str(v));
    j["values"] = std::move(vals);
    return j;
}

PwConstFn PwConstFn::from_json(const nlohmann::json& j) {
    try {
        RatInterval dom{rat_parse(j.at("domain").at("lo").get<std::string>()),
                        rat_parse(j.at("domain").at("hi").get<std::string>())};
        std::vector<AlgebraicNumber> bps;
        for (const auto& b : j.at("breakpoints")) bps.push_back(algebraic_from_json(b));
        std::vector<Rational> vals;
        for (const auto& v : j.at("values")) vals.push_back(rat_parse(v.get<std::string>()));
        return make(std::move(dom), std::move(bps), std::move(vals));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pwconst: ") + e.what());
    }
}

nlohmann::json PwPolyFn::to_json() const {
    nlohmann::json j;
    j["kind"] = "pwpoly_fn";
    j["domain"] = {{"lo", rat_str(domain.lo)}, {"hi", rat_str(domain.hi)}};
    nlohmann::json bps = nlohmann::json::array();
    for (const auto& b : breakpoints) bps.push_back(algebraic_to_json(b));
    j["breakpoints"] = std::move(bps);
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : pieces) ps.push_back(unipoly_to_json(p));
    j["pieces"] = std::move(ps);
    return j;
}

PwPolyFn PwPolyFn::from_json(const nlohmann::json& j) {
    try {
        RatInterval dom{rat_parse(j.at("domain").at("lo").get<std::string>()),
                        rat_parse(j.at("domain").at("hi").get<std::string>())};
        std::vector<AlgebraicNumber> bps;
        for (const auto& b : j.at("breakpoints")) bps.push_back(algebraic_from_json(b));
        std::vector<UniPoly> ps;
        for (const auto& p : j.at("pieces")) ps.push_back(unipoly_from_json(p));
        return make(std::move(dom), std::move(bps), std::move(ps));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pwpoly_fn: ") + e.what());
    }
}

} // namespace gdtune
