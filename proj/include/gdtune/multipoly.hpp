#pragma once

#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gdtune/rational.hpp"
#include "gdtune/unipoly.hpp"

namespace gdtune {

using ExpVec = std::vector<int>;

/// Graded lexicographic order: lower total degree first, then lex. The
/// canonical term order for deterministic serialization and hashing.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        if (sa != sb) return sa < sb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Exact multivariate polynomial over the rationals. Invariants: no stored
/// zero coefficients, all exponent vectors have length dim.
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, Rational, GradedLexLess>;

    explicit MultiPoly(int dim = 1);
    static MultiPoly constant(int dim, Rational c);
    static MultiPoly variable(int dim, int j);
    static MultiPoly monomial(int dim, ExpVec exps, Rational coef);

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Max total degree across terms; 0 for the zero polynomial by convention.
    int total_degree() const;

    void add_term(const ExpVec& exps, const Rational& coef);

    Rational eval(std::span<const Rational> point) const;
    double eval_double(std::span<const double> point) const;

    std::vector<MultiPoly> gradient() const;
    MultiPoly partial(int j) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a);
    bool operator==(const MultiPoly& o) const {
        return dim_ == o.dim_ && terms_ == o.terms_;
    }

    std::string str() const;

private:
    int dim_;
    TermMap terms_;
};

/// Substitute a vector of univariate curves for the variables:
/// (f, (c_1,...,c_d)) -> f(c_1(t),...,c_d(t)). Exact; budget-guarded.
UniPoly compose_uni(const MultiPoly& f, std::span<const UniPoly> curve,
                    const Budget& budget);

} // namespace gdtune
