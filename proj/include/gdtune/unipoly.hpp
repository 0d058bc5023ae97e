#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gdtune/rational.hpp"

namespace gdtune {

class UniPoly;

/// Symbolic size budget. Iterate curves grow like Delta^H, so callers bound
/// degree and total coefficient bits; exceeding either raises
/// SymbolicBudgetExceeded instead of degrading silently.
struct Budget {
    int max_degree = 4096;
    std::size_t max_bits = std::size_t(1) << 20;

    void check(const UniPoly& p, const char* context) const;
};

/// Dense univariate polynomial over the rationals, constant term first.
/// Canonical form: no trailing zero coefficients; the zero polynomial stores
/// an empty list and reports degree 0 by convention.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Rational constant);
    explicit UniPoly(std::vector<Rational> coeffs);

    static UniPoly variable();
    static UniPoly linear(Rational a0, Rational a1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational eval(const Rational& t) const;
    double eval_double(double t) const;

    UniPoly derivative() const;

    /// Total bit size across coefficients (numerators + denominators).
    std::size_t bits() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(const UniPoly& a);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rational& s, const UniPoly& a);
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    std::string str(const std::string& var = "t") const;

private:
    void strip();
    std::vector<Rational> c_;
};

/// Product with a budget check on the result; the workhorse of curve updates.
UniPoly mul_budgeted(const UniPoly& a, const UniPoly& b, const Budget& budget,
                     const char* context);

} // namespace gdtune
