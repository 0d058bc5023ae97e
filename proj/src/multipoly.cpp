#include "gdtune/multipoly.hpp"

#include <sstream>

namespace gdtune {

MultiPoly::MultiPoly(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("MultiPoly dim must be >= 1");
}

MultiPoly MultiPoly::constant(int dim, Rational c) {
    MultiPoly f(dim);
    if (c != 0) f.terms_.emplace(ExpVec(dim, 0), std::move(c));
    return f;
}

MultiPoly MultiPoly::variable(int dim, int j) {
    if (j < 0 || j >= dim) throw DimensionError("variable index out of range");
    MultiPoly f(dim);
    ExpVec e(dim, 0);
    e[j] = 1;
    f.terms_.emplace(std::move(e), Rational(1));
    return f;
}

MultiPoly MultiPoly::monomial(int dim, ExpVec exps, Rational coef) {
    if (static_cast<int>(exps.size()) != dim)
        throw DimensionError("monomial exponent vector length != dim");
    MultiPoly f(dim);
    if (coef != 0) f.terms_.emplace(std::move(exps), std::move(coef));
    return f;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0) == 0);
}

int MultiPoly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

void MultiPoly::add_term(const ExpVec& exps, const Rational& coef) {
    if (static_cast<int>(exps.size()) != dim_)
        throw DimensionError("exponent vector length != dim");
    if (coef == 0) return;
    auto [it, inserted] = terms_.emplace(exps, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionError("eval point length != dim");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int j = 0; j < dim_; ++j)
            if (e[j] > 0) term *= rat_pow(point[j], static_cast<unsigned>(e[j]));
        acc += term;
    }
    return acc;
}

double MultiPoly::eval_double(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionError("eval point length != dim");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = rat_to_double(c);
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < e[j]; ++k) term *= point[j];
        acc += term;
    }
    return acc;
}

MultiPoly MultiPoly::partial(int j) const {
    if (j < 0 || j >= dim_) throw DimensionError("partial index out of range");
    MultiPoly g(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        ExpVec d = e;
        d[j] -= 1;
        g.add_term(d, Rational(e[j]) * c);
    }
    return g;
}

std::vector<MultiPoly> MultiPoly::gradient() const {
    std::vector<MultiPoly> g;
    g.reserve(dim_);
    for (int j = 0; j < dim_; ++j) g.push_back(partial(j));
    return g;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (dim_ != o.dim_) throw DimensionError("MultiPoly dim mismatch in +");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (dim_ != o.dim_) throw DimensionError("MultiPoly dim mismatch in -");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.dim_ != b.dim_) throw DimensionError("MultiPoly dim mismatch in *");
    MultiPoly r(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            ExpVec e(a.dim_);
            for (int j = 0; j < a.dim_; ++j) e[j] = ea[j] + eb[j];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly operator*(const Rational& s, const MultiPoly& a) {
    MultiPoly r(a.dim_);
    if (s == 0) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
    return r;
}

UniPoly compose_uni(const MultiPoly& f, std::span<const UniPoly> curve,
                    const Budget& budget) {
    if (static_cast<int>(curve.size()) != f.dim())
        throw DimensionError("compose_uni: curve length != dim");
    const int deg_bound = [&] {
        int md = 0;
        for (const auto& c : curve) md = std::max(md, c.degree());
        return f.total_degree() * md;
    }();

    // power cache per variable, built on demand
    std::vector<std::vector<UniPoly>> powers(curve.size());
    for (std::size_t j = 0; j < curve.size(); ++j) powers[j].push_back(UniPoly(Rational(1)));
    auto power = [&](std::size_t j, int e) -> const UniPoly& {
        auto& cache = powers[j];
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(mul_budgeted(cache.back(), curve[j], budget, "compose_uni"));
        return cache[e];
    };

    UniPoly acc;
    for (const auto& [e, c] : f.terms()) {
        UniPoly term(c);
        for (std::size_t j = 0; j < curve.size(); ++j)
            if (e[j] > 0) term = mul_budgeted(term, power(j, e[j]), budget, "compose_uni");
        acc += term;
        budget.check(acc, "compose_uni");
    }
    // composition degree can never exceed total_degree(f) * max_j deg(curve_j)
    if (!acc.is_zero() && acc.degree() > deg_bound)
        throw std::logic_error("compose_uni: degree bound violated (engine bug)");
    return acc;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        os << rat_str(c);
        for (int j = 0; j < dim_; ++j) {
            if (e[j] == 0) continue;
            os << "*x" << j;
            if (e[j] > 1) os << "^" << e[j];
        }
        first = false;
    }
    return os.str();
}

} // namespace gdtune
