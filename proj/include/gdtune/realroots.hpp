#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gdtune/interval.hpp"
#include "gdtune/rational.hpp"
#include "gdtune/unipoly.hpp"

namespace gdtune {

/// Default isolation width 2^-30.
const Rational& default_isolation_width();

/// A real algebraic number: the unique root of a square-free integer
/// polynomial inside a rational bracket. Exact rationals are the degenerate
/// case lo == hi with defining poly (den*t - num). Immutable; refinement
/// returns new values.
class AlgebraicNumber {
public:
    using IntPoly = std::vector<Integer>; // constant first, primitive, square-free

    /// Defaults to the exact rational 0.
    AlgebraicNumber();
    static AlgebraicNumber from_rational(Rational r);
    /// Isolation-certified constructor: exactly one root of `defining` in
    /// [lo, hi], endpoints themselves non-roots.
    AlgebraicNumber(std::shared_ptr<const IntPoly> defining, Rational lo, Rational hi);

    bool is_rational() const { return rational_; }
    const Rational& value() const; // requires is_rational()
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const IntPoly& defining() const { return *defining_; }
    const std::shared_ptr<const IntPoly>& defining_ptr() const { return defining_; }
    /// Sign of the defining polynomial at lo: -1/+1, or 0 for exact rationals.
    int sign_at_lo() const { return sign_lo_; }

    Rational bracket_width() const { return hi_ - lo_; }
    /// Bisect the bracket until its width is <= w. Pure: returns a new value.
    AlgebraicNumber refined(const Rational& w) const;
    double approx() const { return rat_to_double((lo_ + hi_) / 2); }

private:
    struct Raw {};
    explicit AlgebraicNumber(Raw) {}
    bool rational_ = false;
    Rational value_;
    Rational lo_, hi_;
    int sign_lo_ = 0;
    std::shared_ptr<const IntPoly> defining_;
};

/// Exact three-way comparison. Equality is certified through a gcd of the
/// defining polynomials having a root in the bracket overlap; order through
/// bracket separation.
int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
int compare(const AlgebraicNumber& a, const Rational& r);
inline bool algebraic_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare(a, b) == 0;
}

/// Exact sign of p at the algebraic point (p may be any rational polynomial).
int sign_at(const UniPoly& p, const AlgebraicNumber& a);

/// A rational point strictly between a and b (requires a < b).
Rational interior_rational(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// All distinct real roots of p in the closed domain, in increasing order,
/// refined to bracket width <= w_iso. Multiplicities are discarded through the
/// square-free part. Throws ZeroPolynomialError for p == 0.
std::vector<AlgebraicNumber> isolate_roots(const UniPoly& p, const RatInterval& domain,
                                           const Rational& w_iso = default_isolation_width());

struct SublevelIntervals {
    /// Open intervals (endpoints excluded) where p < 0, in increasing order.
    std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> intervals;
    /// Set when p == 0 identically; then `intervals` is the whole domain and
    /// the strict sublevel set is degenerate (p < 0 holds nowhere).
    bool degenerate_zero = false;
};

/// The set {t in domain : p(t) < 0} as maximal open intervals with algebraic
/// endpoints (domain endpoints or roots of p).
SublevelIntervals sublevel_intervals(const UniPoly& p, const RatInterval& domain,
                                     const Rational& w_iso = default_isolation_width());

/// Count of distinct real roots in the closed domain (Sturm count); the
/// independent cross-check used by tests.
int count_real_roots(const UniPoly& p, const RatInterval& domain);

} // namespace gdtune
